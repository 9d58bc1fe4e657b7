#include "perc3/region_grid.hpp"

#include <algorithm>

namespace perc3 {

void RegionGrid::allocate(Site lo, Site hi) {
  origin_ = lo - Site{1, 1, 1};
  nx_ = std::max(hi.x - lo.x + 1, 0) + 2;
  ny_ = std::max(hi.y - lo.y + 1, 0) + 2;
  nz_ = std::max(hi.z - lo.z + 1, 0) + 2;
  const auto sx = static_cast<std::ptrdiff_t>(nx_);
  const auto sxy = sx * static_cast<std::ptrdiff_t>(ny_);
  // same order as kNeighborSteps
  steps_ = {1, -1, sx, -sx, sxy, -sxy};
  code_.assign(static_cast<std::size_t>(nx_) * ny_ * nz_, kOutside);
}

RegionGrid::RegionGrid(const Configuration& config, const Region& region) {
  Site lo, hi;
  region.bounds(lo, hi);
  const int n = config.n();
  for (int a = 0; a < 3; ++a) {
    lo[a] = std::max(lo[a], -n);
    hi[a] = std::min(hi[a], n);
  }
  allocate(lo, hi);
  const BoxSpec* box = region.box();
  for (int z = lo.z; z <= hi.z; ++z)
    for (int y = lo.y; y <= hi.y; ++y) {
      std::size_t cell = raw_cell(Site{lo.x, y, z});
      std::size_t idx = config.index(Site{lo.x, y, z});
      for (int x = lo.x; x <= hi.x; ++x, ++cell, ++idx) {
        if (box == nullptr && !region.contains(Site{x, y, z})) continue;
        code_[cell] = config.is_open(idx) ? kOpen : kClosed;
        ++inside_count_;
      }
    }
  whole_box_ = inside_count_ == config.size();
}

RegionGrid::RegionGrid(const Configuration& config) : RegionGrid(config, Region(config.box())) {}

std::size_t RegionGrid::raw_cell(Site s) const noexcept {
  const Site r = s - origin_;
  return static_cast<std::size_t>(r.x) +
         static_cast<std::size_t>(nx_) * (static_cast<std::size_t>(r.y) + static_cast<std::size_t>(ny_) * r.z);
}

std::optional<std::size_t> RegionGrid::cell_of(Site s) const noexcept {
  const Site r = s - origin_;
  if (r.x < 0 || r.y < 0 || r.z < 0 || r.x >= nx_ || r.y >= ny_ || r.z >= nz_) return std::nullopt;
  const std::size_t cell = raw_cell(s);
  if (code_[cell] == kOutside) return std::nullopt;
  return cell;
}

Site RegionGrid::site_of(std::size_t cell) const noexcept {
  const auto w = static_cast<std::size_t>(nx_);
  const auto h = static_cast<std::size_t>(ny_);
  return origin_ + Site{static_cast<int>(cell % w), static_cast<int>((cell / w) % h), static_cast<int>(cell / (w * h))};
}

}  // namespace perc3
