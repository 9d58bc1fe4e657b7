#pragma once

#include <cstdint>
#include <vector>

#include "perc3/report.hpp"
#include "perc3/walks.hpp"

namespace perc3 {

/// Trial t of an experiment with base seed s uses configuration seed
/// derive_seed(s, t); scans use derive_seed(derive_seed(s, n), c) for
/// configuration c of size n. Rows never depend on the worker count.

/// Fraction of trials in which the origin's open cluster reaches ∂in Λ(R),
/// one row per R: R, trials, hits, theta_hat, ci_lo, ci_hi (Wilson 95%).
ExperimentReport estimate_theta(double p, const std::vector<int>& radii, std::uint64_t trials,
                                std::uint64_t base_seed, unsigned threads = 0);

/// Tail of the exit time T = T_{Λ(m)}(0, ∂in Λ(m)) against the bound
/// (1 - (1-δ)θ̂)^k. Rows for k = 0..max observed: k, survivors, tail, ci_lo,
/// ci_hi, bound, within (tail <= bound), eligible (survivors >= 100).
ExperimentReport tail_exit(double p, int m, std::uint64_t trials, std::uint64_t base_seed, double theta_hat,
                           double delta = 0.1, unsigned threads = 0);

/// Per-quarter tails T_{Λ(m)}(0, F_i^j) beside the exit tail, and the
/// triangle analogue T_{B_r}(0, T_r) beside T_{B_r}(0, ∂in B_r) with r^2 = m^2.
/// See docs/schemas/tail_square.md for the columns.
ExperimentReport tail_square(double p, int m, std::uint64_t trials, std::uint64_t base_seed, double theta_hat,
                             double delta = 0.1, double t = 3.0, unsigned threads = 0);

struct ScanOptions {
  std::vector<int> sizes;
  int configs = 1;
  int pairs = 1;
  double c = 2.0;  // theorem_path leg budget k = ceil(c ln n)
  double thickness = 3.0;
  double contraction = 0.97;
};

/// Per n: exact travel times on random pairs, two-sweep eccentricities and
/// theorem_path costs on the same pairs. See docs/schemas/scaling.md.
ExperimentReport scaling_scan(double p, const ScanOptions& opts, std::uint64_t base_seed, unsigned threads = 0);

}  // namespace perc3
