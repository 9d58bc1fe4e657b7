#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "perc3/clusters.hpp"
#include "perc3/lattice.hpp"
#include "perc3/region_grid.hpp"

namespace perc3 {

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// T_A(source, ·): the minimal number of closed sites, both endpoints
/// included, over nearest-neighbour paths that stay inside the region.
class DistanceField {
 public:
  Site source() const noexcept { return source_; }
  const RegionGrid& grid() const noexcept { return *grid_; }

  /// kUnreachable outside the region or the source's component.
  int at(Site s) const noexcept;
  bool reachable(Site s) const noexcept { return at(s) != kUnreachable; }

  /// Witness path source -> target (inclusive) with exactly at(target) closed
  /// sites; empty when unreachable.
  std::vector<Site> path_to(Site target) const;

  /// Largest finite value and the smallest-index site attaining it.
  int max_distance() const noexcept;
  Site farthest() const noexcept;

  /// Minimum over the targets inside the region (smallest index on ties).
  std::optional<std::pair<int, Site>> min_over(std::span<const Site> targets) const noexcept;

 private:
  friend DistanceField make_distance_field(std::shared_ptr<const RegionGrid>, Site, bool);
  Site source_{};
  std::shared_ptr<const RegionGrid> grid_;
  std::vector<int> dist_;
  std::vector<std::int8_t> pred_;
};

/// Full distance field by 0-1 breadth-first search. Throws
/// std::invalid_argument if the source is not inside region ∩ Λ(n).
DistanceField travel_field(const Configuration& config, const Region& region, Site source);

/// Cost and attaining site of a set query.
struct SetHit {
  int cost = kUnreachable;
  Site hit{};

  bool reachable() const noexcept { return cost != kUnreachable; }
  friend bool operator==(const SetHit&, const SetHit&) = default;
};

struct TravelPath {
  int cost = kUnreachable;
  Site hit{};
  std::vector<Site> path;

  bool reachable() const noexcept { return cost != kUnreachable; }
};

/// T_A(source, targets) with the smallest-index attaining target and a
/// witness path. Targets outside the region are ignored; cost is
/// kUnreachable when none can be reached.
TravelPath travel_to_set(const Configuration& config, const Region& region, Site source,
                         std::span<const Site> targets);

/// Convenience: T_A(a, b).
int travel_time(const Configuration& config, const Region& region, Site a, Site b);

/// Repeated set queries against one configuration.
///
/// Queries over the whole box Λ(n) reuse one grid and first try to settle the
/// answer from the open-cluster labels: an open source reaches its own cluster
/// at cost 0, and a closed source reaches itself and the clusters touching it
/// at cost 1. Anything else runs an early-exit 0-1 search. Answers agree with
/// travel_to_set exactly.
class TravelEngine {
 public:
  explicit TravelEngine(const Configuration& config);

  const Configuration& config() const noexcept { return *config_; }

  SetHit nearest(const Region& region, Site source, std::span<const Site> targets);
  SetHit nearest_in_box(Site source, std::span<const Site> targets);
  DistanceField field_in_box(Site source);

  const ClusterLabels& labels();
  std::uint64_t searches() const noexcept { return searches_; }
  std::uint64_t label_shortcuts() const noexcept { return shortcuts_; }

 private:
  const RegionGrid& box_grid();
  SetHit search(const RegionGrid& grid, Site source, std::span<const Site> targets, bool reuse_buffers);

  const Configuration* config_;
  std::shared_ptr<const RegionGrid> box_grid_;
  std::optional<ClusterLabels> labels_;
  std::vector<int> dist_;
  std::vector<std::uint8_t> mark_;
  std::uint64_t searches_ = 0;
  std::uint64_t shortcuts_ = 0;
};

}  // namespace perc3
