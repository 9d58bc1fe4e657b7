#include "perc3/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "perc3/rng.hpp"

namespace perc3 {

std::int64_t isqrt(std::int64_t n) noexcept {
  if (n <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

SiteSet::SiteSet(std::vector<Site> sites) : sites_(std::move(sites)) {
  std::sort(sites_.begin(), sites_.end(), IndexOrder{});
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
}

bool SiteSet::contains(Site s) const noexcept {
  return std::binary_search(sites_.begin(), sites_.end(), s, IndexOrder{});
}

bool Region::contains(Site s) const noexcept {
  return std::visit([s](const auto& shape) { return shape.contains(s); }, shape_);
}

void Region::bounds(Site& lo, Site& hi) const noexcept {
  if (const auto* b = box()) {
    lo = b->lo();
    hi = b->hi();
  } else if (const auto* ball_spec = ball()) {
    const int e = ball_spec->extent();
    lo = ball_spec->center - Site{e, e, e};
    hi = ball_spec->center + Site{e, e, e};
  } else {
    const auto& s = *set();
    if (s.empty()) {
      lo = {0, 0, 0};
      hi = {-1, -1, -1};
      return;
    }
    lo = hi = *s.begin();
    for (const Site& v : s) {
      for (int a = 0; a < 3; ++a) {
        lo[a] = std::min(lo[a], v[a]);
        hi[a] = std::max(hi[a], v[a]);
      }
    }
  }
}

std::vector<Site> Region::sites() const {
  if (const auto* s = set()) return {s->begin(), s->end()};
  Site lo, hi;
  bounds(lo, hi);
  std::vector<Site> out;
  for (int z = lo.z; z <= hi.z; ++z)
    for (int y = lo.y; y <= hi.y; ++y)
      for (int x = lo.x; x <= hi.x; ++x)
        if (contains({x, y, z})) out.push_back({x, y, z});
  return out;
}

Configuration::Configuration(int n, double p, std::uint64_t seed, std::vector<std::uint64_t> words)
    : n_(n), p_(p), seed_(seed), words_(std::move(words)) {
  if (n < 0) throw std::invalid_argument("configuration half-side must be non-negative");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("open probability must lie in [0, 1]");
  const auto s = static_cast<std::size_t>(2 * n + 1);
  size_ = s * s * s;
  if (words_.size() != (size_ + 63) / 64)
    throw std::invalid_argument("configuration bit array has " + std::to_string(words_.size()) +
                                " words, expected " + std::to_string((size_ + 63) / 64));
  // padding bits beyond the last site are kept clear so equality is well defined
  if (size_ % 64 != 0) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
}

Site Configuration::site(std::size_t index) const noexcept {
  const auto w = static_cast<std::size_t>(side());
  const auto x = static_cast<int>(index % w);
  const auto y = static_cast<int>((index / w) % w);
  const auto z = static_cast<int>(index / (w * w));
  return {x - n_, y - n_, z - n_};
}

std::size_t Configuration::open_count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

Configuration Configuration::with_state(Site s, bool open) const {
  Configuration copy = *this;
  const std::size_t i = index(s);
  if (open)
    copy.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  else
    copy.words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  return copy;
}

double site_uniform(std::uint64_t seed, std::uint64_t index) noexcept {
  return to_unit_interval(stream_value(seed, index));
}

Configuration sample_configuration(int n, double p, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("configuration half-side must be non-negative");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("open probability must lie in [0, 1]");
  const auto s = static_cast<std::size_t>(2 * n + 1);
  const std::size_t size = s * s * s;
  std::vector<std::uint64_t> words((size + 63) / 64, 0);
  // u < p  <=>  (v >> 11) < p * 2^53 for the 53-bit mantissa draw
  const std::uint64_t key = splitmix64_mix(seed);
  for (std::size_t i = 0; i < size; ++i) {
    const std::uint64_t v = splitmix64_mix(key + (i + 1) * kGoldenGamma);
    if (to_unit_interval(v) < p) words[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  return Configuration(n, p, seed, std::move(words));
}

namespace {

template <typename Pred>
SiteSet boundary_of(const Region& region, Pred&& keep) {
  std::vector<Site> out;
  Site lo, hi;
  region.bounds(lo, hi);
  // outer boundary sites live one step outside the bounds
  lo = lo - Site{1, 1, 1};
  hi = hi + Site{1, 1, 1};
  for (int z = lo.z; z <= hi.z; ++z)
    for (int y = lo.y; y <= hi.y; ++y)
      for (int x = lo.x; x <= hi.x; ++x)
        if (keep(Site{x, y, z})) out.push_back({x, y, z});
  return SiteSet(std::move(out));
}

}  // namespace

SiteSet inner_boundary(const Region& region) {
  return boundary_of(region, [&](Site s) {
    if (!region.contains(s)) return false;
    for (const Site& d : kNeighborSteps)
      if (!region.contains(s + d)) return true;
    return false;
  });
}

SiteSet outer_boundary(const Region& region) {
  return boundary_of(region, [&](Site s) {
    if (region.contains(s)) return false;
    for (const Site& d : kNeighborSteps)
      if (region.contains(s + d)) return true;
    return false;
  });
}

std::vector<std::int64_t> admissible_radii(Site x, const BoxSpec& bounding) {
  std::vector<std::int64_t> out;
  if (!bounding.contains(x)) return out;
  const Site rel = x - bounding.center;
  const std::int64_t slack = bounding.half_side - norm_linf(rel);
  for (std::int64_t r2 = 1; r2 <= slack * slack; ++r2)
    if (is_sum_of_three_squares(r2)) out.push_back(r2);
  return out;
}

}  // namespace perc3
