#include "perc3/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace perc3 {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (successes > trials) throw std::invalid_argument("successes exceed trials");
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double mid = (ph + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / denom;
  Interval iv{std::max(0.0, mid - half), std::min(1.0, mid + half)};
  // keep the point estimate inside despite rounding at the extremes
  iv.lo = std::min(iv.lo, ph);
  iv.hi = std::max(iv.hi, ph);
  return iv;
}

double wilson_upper(std::uint64_t successes, std::uint64_t trials, double z) {
  return wilson_interval(successes, trials, z).hi;
}

double quantile_nearest_rank(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level must be in (0, 1]");
  std::sort(values.begin(), values.end());
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

namespace {

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  if (x.size() < 2) return 0.0;
  return pearson(average_ranks(x), average_ranks(y));
}

double spearman_p_greater(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  if (x.size() > 10) throw std::invalid_argument("exact permutation test limited to 10 points");
  if (x.size() < 2) return 1.0;
  const std::vector<double> rx = average_ranks(x);
  std::vector<double> ry = average_ranks(y);
  const double observed = pearson(rx, ry);
  std::sort(ry.begin(), ry.end());
  std::uint64_t total = 0, extreme = 0;
  do {
    ++total;
    if (pearson(rx, ry) >= observed - 1e-12) ++extreme;
  } while (std::next_permutation(ry.begin(), ry.end()));
  // next_permutation skips duplicate orderings, which keeps each distinct
  // assignment equally weighted
  return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace perc3
