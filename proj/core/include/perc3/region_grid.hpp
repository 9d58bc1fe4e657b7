#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "perc3/lattice.hpp"

namespace perc3 {

/// Dense local view of `region ∩ Λ(n)` for graph searches.
///
/// Cells cover the bounding box of the region clipped to the configuration,
/// padded by one layer of outside cells so neighbour steps never need bounds
/// checks. Cell order is x fastest, then y, then z, which agrees with
/// IndexOrder on lattice sites.
class RegionGrid {
 public:
  enum Code : std::uint8_t { kOutside = 0, kOpen = 1, kClosed = 2 };

  RegionGrid(const Configuration& config, const Region& region);
  /// The whole box Λ(n).
  explicit RegionGrid(const Configuration& config);

  std::size_t cell_count() const noexcept { return code_.size(); }
  std::size_t inside_count() const noexcept { return inside_count_; }
  std::uint8_t code(std::size_t cell) const noexcept { return code_[cell]; }
  bool inside(std::size_t cell) const noexcept { return code_[cell] != kOutside; }
  /// 1 for a closed site, 0 for an open one.
  int weight(std::size_t cell) const noexcept { return code_[cell] == kClosed ? 1 : 0; }

  std::optional<std::size_t> cell_of(Site s) const noexcept;
  Site site_of(std::size_t cell) const noexcept;
  const std::array<std::ptrdiff_t, 6>& steps() const noexcept { return steps_; }

  /// True when the grid is exactly Λ(n) of its configuration.
  bool whole_box() const noexcept { return whole_box_; }

 private:
  void allocate(Site lo, Site hi);
  std::size_t raw_cell(Site s) const noexcept;

  Site origin_{};  // lattice site of cell 0 (a padding cell)
  int nx_ = 0, ny_ = 0, nz_ = 0;
  std::array<std::ptrdiff_t, 6> steps_{};
  std::vector<std::uint8_t> code_;
  std::size_t inside_count_ = 0;
  bool whole_box_ = false;
};

}  // namespace perc3
