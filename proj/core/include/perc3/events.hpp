#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "perc3/geometry.hpp"
#include "perc3/lattice.hpp"
#include "perc3/traveltime.hpp"

namespace perc3 {

enum class EventKind { E, F };

enum class CheckMode { Exhaustive, Sampled, OnDemand };

struct EventMode {
  CheckMode kind = CheckMode::Exhaustive;
  std::uint64_t count = 0;  // sampled centers
  std::uint64_t seed = 0;   // sampling seed

  static EventMode exhaustive() { return {}; }
  static EventMode sampled(std::uint64_t count, std::uint64_t seed) { return {CheckMode::Sampled, count, seed}; }
  static EventMode on_demand() { return {CheckMode::OnDemand, 0, 0}; }
};

/// Largest n for which the exhaustive mode is accepted: (2n+1)^3 <= 5e4.
inline constexpr int kExhaustiveMaxN = 17;

/// T_{Λ(n)}(center, F_face^quadrant(center + Λ(half_side))).
struct FaceQuery {
  Site center;
  int half_side = 1;
  int face = 1;
  int quadrant = 1;

  friend auto operator<=>(const FaceQuery& a, const FaceQuery& b) {
    return std::tie(a.center.z, a.center.y, a.center.x, a.half_side, a.face, a.quadrant) <=>
           std::tie(b.center.z, b.center.y, b.center.x, b.half_side, b.face, b.quadrant);
  }
  friend bool operator==(const FaceQuery&, const FaceQuery&) = default;
};

/// T_{(center + B_r) ∩ Λ(n)}(center, (center + T_r) ∩ Λ(n)) for one triangle.
struct TriangleQuery {
  Site center;
  std::int64_t r_squared = 1;
  int triangle = 0;  // TriangleIndex ordinal

  friend auto operator<=>(const TriangleQuery& a, const TriangleQuery& b) {
    return std::tie(a.center.z, a.center.y, a.center.x, a.r_squared, a.triangle) <=>
           std::tie(b.center.z, b.center.y, b.center.x, b.r_squared, b.triangle);
  }
  friend bool operator==(const TriangleQuery&, const TriangleQuery&) = default;
};

/// A failing check: the minimal travel time from the center to the sub-shape
/// exceeds k. `hit` is the smallest-index target attaining it (unset when the
/// target cannot be reached at all; travel_time is then kUnreachable).
struct EventWitness {
  Site center;
  std::optional<FaceQuery> face;
  std::optional<TriangleQuery> triangle;
  int travel_time = kUnreachable;
  std::optional<Site> hit;
};

struct EventReport {
  EventKind event = EventKind::E;
  int k = 0;
  EventMode mode;
  double thickness = 3.0;  // ℱ only
  bool holds = true;
  std::optional<EventWitness> violation;
  std::uint64_t checks_performed = 0;   // (sub-shape, target) travel-time checks
  std::uint64_t subshapes_checked = 0;  // (center, m) boxes or (center, r^2) balls
  std::uint64_t centers_checked = 0;
  std::uint64_t violating_centers = 0;
  int max_travel_time = 0;  // largest finite checked value
  /// Sampled mode: one-sided 95% Wilson upper bound on the fraction of
  /// centers with a violation.
  std::optional<double> violation_upper_bound;

  std::string to_json() const;
};

/// Exhaustive ℰ(Λ(n), k) over every center, every m >= 1 with the box inside
/// Λ(n), and all 24 quarters; one distance field per center. Sampled mode
/// draws centers uniformly (with replacement) from SplitMix64(seed). Throws
/// std::invalid_argument for k < 0, for on-demand mode (use EventOracle) and
/// for exhaustive mode above kExhaustiveMaxN.
EventReport check_event_E(const Configuration& config, int k, const EventMode& mode, unsigned threads = 1);

/// ℱ(Λ(n), k), translated reading: for every center x and admissible r^2 with
/// x + B_r inside Λ(n), every one of the 48 targets x + T_r is reached from x
/// within x + B_r at cost <= k. An empty target counts as a violation.
EventReport check_event_F(const Configuration& config, int k, const EventMode& mode, double t = 3.0,
                          unsigned threads = 1);

/// Cached single checks issued one at a time (the on-demand mode used by
/// the walks).
class EventOracle {
 public:
  EventOracle(const Configuration& config, int k, double t = 3.0);

  const Configuration& config() const noexcept { return engine_.config(); }
  int k() const noexcept { return k_; }
  double thickness() const noexcept { return t_; }
  TravelEngine& engine() noexcept { return engine_; }

  SetHit face(const FaceQuery& q);
  SetHit triangle(const TriangleQuery& q);

  /// Offsets of the thickened targets of radius sqrt(r_squared), cached.
  const std::vector<Site>& triangle_offsets(std::int64_t r_squared, int ordinal);

  /// On-demand report over every query issued so far; the witness is the
  /// smallest failing query.
  EventReport report(EventKind kind) const;

 private:
  TravelEngine engine_;
  int k_;
  double t_;
  std::map<FaceQuery, SetHit> faces_;
  std::map<TriangleQuery, SetHit> triangles_;
  std::map<std::int64_t, std::vector<std::vector<Site>>> offsets_;
};

/// Recomputes the witness's travel time from scratch with travel_to_set.
int recheck_witness(const Configuration& config, const EventWitness& w, double t = 3.0);

}  // namespace perc3
