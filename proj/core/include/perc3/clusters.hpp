#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "perc3/lattice.hpp"

namespace perc3 {

/// Open cluster C(x) of x inside the region; empty when x is closed.
SiteSet open_cluster(const Configuration& config, const Region& region, Site x);

/// Labels of the open clusters of Λ(n). label[i] is the cluster of site index
/// i, or -1 for a closed site; clusters are numbered in order of their
/// smallest site index.
struct ClusterLabels {
  std::vector<std::int32_t> label;
  std::vector<std::int64_t> sizes;

  std::int32_t of(std::size_t index) const noexcept { return label[index]; }
  std::size_t count() const noexcept { return sizes.size(); }
};

ClusterLabels label_open_clusters(const Configuration& config);

/// Nested layers C_0 ⊆ C_1 ⊆ ... of the onion construction around an open
/// origin:
///   C_0 = C(x),  C_{k+1} = C_k ∪ ∂out C_k ∪ {y : y open-connected to ∂out(∂out C_k)},
/// all computed inside a finite region. shells[k] is ∂out C_k.
struct ClusterLayers {
  Site origin;
  std::vector<SiteSet> layers;
  std::vector<SiteSet> shells;
  /// Some layer touches the inner boundary of the region; layers from
  /// first_truncated_layer on may differ from their Z^3 counterparts.
  bool truncated = false;
  std::optional<int> first_truncated_layer;

  /// Number of leading layers that are unaffected by the region boundary.
  int exact_layers() const noexcept {
    return first_truncated_layer ? *first_truncated_layer : static_cast<int>(layers.size());
  }
};

/// Layers C_0..C_kmax. Throws std::invalid_argument when x is outside the
/// region or closed (the recursion stalls at C(x) = ∅ for a closed origin).
ClusterLayers onion_layers(const Configuration& config, const Region& region, Site x, int kmax);

/// The origin's open cluster inside Λ(R) meets ∂in Λ(R). Requires R <= n.
bool reaches_boundary(const Configuration& config, int R);

/// Same answer as reaches_boundary(sample_configuration(R, p, seed), R), but
/// site states are drawn on demand and the search stops at the first boundary
/// hit. Used by the θ(p) estimator, where whole configurations are wasteful.
bool origin_reaches_boundary(double p, std::uint64_t seed, int R);

}  // namespace perc3
