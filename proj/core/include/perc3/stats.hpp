#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace perc3 {

inline constexpr double kZ95TwoSided = 1.959964;
inline constexpr double kZ95OneSided = 1.644854;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for a binomial proportion; [0, 1] when trials = 0.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95TwoSided);

/// One-sided Wilson upper bound.
double wilson_upper(std::uint64_t successes, std::uint64_t trials, double z = kZ95OneSided);

/// Nearest-rank quantile: the ceil(q*N)-th smallest value (1-based), q in (0, 1].
double quantile_nearest_rank(std::vector<double> values, double q);

/// Ranks 1..N with ties given their average rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation (Pearson correlation of average ranks). Zero
/// when either side is constant.
double spearman_rho(std::span<const double> x, std::span<const double> y);

/// Exact one-sided permutation p-value P(rho >= observed) under exchangeability,
/// enumerating all orderings of y. Requires x.size() <= 10.
double spearman_p_greater(std::span<const double> x, std::span<const double> y);

}  // namespace perc3
