#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "perc3/events.hpp"
#include "perc3/lattice.hpp"

namespace perc3 {

struct WalkBudget {
  int leg_budget = 0;       // k
  double thickness = 3.0;   // t
  double contraction = 0.97;  // λ
  double stop_radius = 600.0;
  int max_steps = 0;  // 0: 64 * ceil(ln(2n + 1))

  /// Desk-scale defaults for Λ(n): stop_radius = min(600, n/8).
  static WalkBudget desk(int n, int k);

  /// Throws std::invalid_argument unless k >= 0, t >= 0, 0.96 < λ < 1,
  /// stop_radius >= 0 and max_steps >= 0.
  void validate() const;
  int step_limit(int n) const;
  double r_min() const { return contraction_radius(thickness, contraction); }
};

enum class LegKind { Adjust, Doubling, Chain, Triangle, Fallback };
enum class WalkOutcome { Reached, BudgetExceeded, StepLimit, ContractionViolated, NoFeasibleQuadrant };

const char* to_string(LegKind kind);
const char* to_string(WalkOutcome outcome);

/// One hop y_m -> y_{m+1}. The cost is T_A(from, targets) for the leg's
/// region A and target set, and equals T_A(from, to).
struct WalkLeg {
  LegKind kind = LegKind::Doubling;
  Site from, to;
  int cost = 0;
  /// Doubling, chain and triangle legs are event checks and count against k;
  /// adjust and fallback legs do not.
  bool budgeted = false;
  std::optional<FaceQuery> face;
  std::optional<TriangleQuery> triangle;
  // triangle legs
  double radius = 0.0;
  bool ball_contained = false;  // from + B_r inside Λ(n)
  bool guaranteed = false;      // radius >= r_min
};

struct WalkTrace {
  std::vector<Site> waypoints;
  std::vector<WalkLeg> legs;
  int total_cost = 0;
  WalkOutcome outcome = WalkOutcome::Reached;
  std::optional<std::size_t> failing_leg;  // first budgeted leg with cost > k
  std::string detail;                      // state dump for internal failures

  int steps() const noexcept { return static_cast<int>(legs.size()); }
  std::vector<int> leg_costs() const;
  std::string to_json() const;
};

/// Outward-doubling walk from x into Λ(n/4):
///  1. x on ∂in Λ(n) is clamped into [-(n-1), n-1]^3 (adjust leg);
///  2. while outside Λ(3n/4): Γ = y + Λ(g) with g the distance to the nearest
///     face F_h, target the quarter of the face of Γ opposite h, first
///     quadrant whose sites are no closer than y to every face y is near;
///  3. chain of hops into boxes of half-side ceil(n/6) toward the origin,
///     along the axis of the largest coordinate, until inside Λ(n/4).
/// Each leg moves to the smallest-index nearest target.
WalkTrace cube_walk(EventOracle& oracle, Site x, const WalkBudget& budget);
WalkTrace cube_walk(const Configuration& config, Site x, const WalkBudget& budget);

/// Geometric walk from x to y inside Λ(n/4): at radius r = |y - y_m| >=
/// stop_radius, hop to the nearest site of the thickened target containing
/// the direction of y - y_m, searched inside (y_m + B_r) ∩ Λ(n); below
/// stop_radius, or after a non-shrinking hop below r_min, finish with a
/// direct leg to y.
WalkTrace sphere_walk(EventOracle& oracle, Site x, Site y, const WalkBudget& budget);
WalkTrace sphere_walk(const Configuration& config, Site x, Site y, const WalkBudget& budget);

/// x -> x* by cube_walk (skipped inside Λ(n/4)), x* -> y* by sphere_walk,
/// then y* -> y along the reversed cube_walk of y.
WalkTrace theorem_path(EventOracle& oracle, Site x, Site y, const WalkBudget& budget);
WalkTrace theorem_path(const Configuration& config, Site x, Site y, const WalkBudget& budget);

}  // namespace perc3
