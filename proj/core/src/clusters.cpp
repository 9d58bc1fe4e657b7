#include "perc3/clusters.hpp"

#include <stdexcept>
#include <unordered_set>

#include "perc3/region_grid.hpp"
#include "perc3/rng.hpp"

namespace perc3 {

namespace {

// Flood the open cluster containing `seed_cell`, marking cells in `mark`.
// Appends newly marked cells to `out`.
void flood_open(const RegionGrid& grid, std::size_t seed_cell, std::vector<std::uint8_t>& mark,
                std::vector<std::size_t>& out) {
  std::vector<std::size_t> stack{seed_cell};
  mark[seed_cell] = 1;
  out.push_back(seed_cell);
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (auto step : grid.steps()) {
      const std::size_t v = u + static_cast<std::size_t>(step);
      if (grid.code(v) != RegionGrid::kOpen || mark[v]) continue;
      mark[v] = 1;
      out.push_back(v);
      stack.push_back(v);
    }
  }
}

SiteSet to_site_set(const RegionGrid& grid, const std::vector<std::size_t>& cells) {
  std::vector<Site> sites;
  sites.reserve(cells.size());
  for (auto c : cells) sites.push_back(grid.site_of(c));
  return SiteSet(std::move(sites));
}

bool on_region_boundary(const RegionGrid& grid, std::size_t cell) {
  for (auto step : grid.steps())
    if (!grid.inside(cell + static_cast<std::size_t>(step))) return true;
  return false;
}

}  // namespace

SiteSet open_cluster(const Configuration& config, const Region& region, Site x) {
  if (!region.contains(x)) throw std::invalid_argument("open_cluster: site outside region");
  RegionGrid grid(config, region);
  const auto cell = grid.cell_of(x);
  if (!cell || grid.code(*cell) != RegionGrid::kOpen) return {};
  std::vector<std::uint8_t> mark(grid.cell_count(), 0);
  std::vector<std::size_t> cells;
  flood_open(grid, *cell, mark, cells);
  return to_site_set(grid, cells);
}

ClusterLabels label_open_clusters(const Configuration& config) {
  ClusterLabels out;
  const std::size_t size = config.size();
  out.label.assign(size, -1);
  const int w = config.side();
  const auto sx = std::size_t{1};
  const auto sy = static_cast<std::size_t>(w);
  const auto sz = sy * sy;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < size; ++start) {
    if (out.label[start] != -1 || !config.is_open(start)) continue;
    const auto id = static_cast<std::int32_t>(out.sizes.size());
    std::int64_t members = 0;
    out.label[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      ++members;
      const std::size_t x = u % sy, y = (u / sy) % sy, z = u / sz;
      auto visit = [&](std::size_t v) {
        if (out.label[v] == -1 && config.is_open(v)) {
          out.label[v] = id;
          stack.push_back(v);
        }
      };
      if (x > 0) visit(u - sx);
      if (x + 1 < sy) visit(u + sx);
      if (y > 0) visit(u - sy);
      if (y + 1 < sy) visit(u + sy);
      if (z > 0) visit(u - sz);
      if (z + 1 < sy) visit(u + sz);
    }
    out.sizes.push_back(members);
  }
  return out;
}

ClusterLayers onion_layers(const Configuration& config, const Region& region, Site x, int kmax) {
  if (kmax < 0) throw std::invalid_argument("onion_layers: kmax must be non-negative");
  if (!region.contains(x) || !config.contains(x)) throw std::invalid_argument("onion_layers: origin outside region");
  if (config.is_closed(x)) throw std::invalid_argument("onion_layers: origin must be open");

  RegionGrid grid(config, region);
  const std::size_t origin = *grid.cell_of(x);

  ClusterLayers out;
  out.origin = x;

  std::vector<std::uint8_t> in_layer(grid.cell_count(), 0);
  std::vector<std::size_t> members;
  flood_open(grid, origin, in_layer, members);

  auto note_layer = [&](int k, const std::vector<std::size_t>& added) {
    if (out.truncated) return;
    for (auto c : added)
      if (on_region_boundary(grid, c)) {
        out.truncated = true;
        out.first_truncated_layer = k;
        return;
      }
  };
  note_layer(0, members);
  out.layers.push_back(to_site_set(grid, members));

  std::vector<std::uint8_t> in_shell(grid.cell_count(), 0);
  for (int k = 0; k < kmax; ++k) {
    // shell = ∂out C_k
    std::vector<std::size_t> shell;
    for (auto u : members)
      for (auto step : grid.steps()) {
        const std::size_t v = u + static_cast<std::size_t>(step);
        if (!grid.inside(v) || in_layer[v] || in_shell[v]) continue;
        in_shell[v] = 1;
        shell.push_back(v);
      }
    out.shells.push_back(to_site_set(grid, shell));

    // open clusters meeting ∂out(shell); sites of C_k already belong
    std::vector<std::size_t> added = shell;
    for (auto v : shell) in_layer[v] = 1;
    for (auto u : shell)
      for (auto step : grid.steps()) {
        const std::size_t w = u + static_cast<std::size_t>(step);
        if (grid.code(w) != RegionGrid::kOpen || in_layer[w] || in_shell[w]) continue;
        flood_open(grid, w, in_layer, added);
      }
    for (auto v : shell) in_shell[v] = 0;

    note_layer(k + 1, added);
    members.insert(members.end(), added.begin(), added.end());
    out.layers.push_back(to_site_set(grid, members));
  }
  return out;
}

bool reaches_boundary(const Configuration& config, int R) {
  if (R < 0 || R > config.n()) throw std::invalid_argument("reaches_boundary: R must lie in [0, n]");
  const Site origin{0, 0, 0};
  if (config.is_closed(origin)) return false;
  const SiteSet cluster = open_cluster(config, Region(lambda_box(R)), origin);
  for (const Site& s : cluster)
    if (norm_linf(s) == R) return true;
  return false;
}

bool origin_reaches_boundary(double p, std::uint64_t seed, int R) {
  if (R < 0) throw std::invalid_argument("origin_reaches_boundary: R must be non-negative");
  const auto w = static_cast<std::size_t>(2 * R + 1);
  auto index = [&](Site s) {
    return static_cast<std::size_t>(s.x + R) +
           w * (static_cast<std::size_t>(s.y + R) + w * static_cast<std::size_t>(s.z + R));
  };
  const std::uint64_t key = splitmix64_mix(seed);
  auto open = [&](Site s) {
    return to_unit_interval(splitmix64_mix(key + (index(s) + 1) * kGoldenGamma)) < p;
  };
  const Site origin{0, 0, 0};
  if (!open(origin)) return false;
  if (R == 0) return true;
  // depth-first: heads outward quickly in the supercritical phase
  std::unordered_set<std::size_t> seen{index(origin)};
  std::vector<Site> stack{origin};
  while (!stack.empty()) {
    const Site u = stack.back();
    stack.pop_back();
    for (const Site& d : kNeighborSteps) {
      const Site v = u + d;
      if (norm_linf(v) > R) continue;
      if (!seen.insert(index(v)).second) continue;
      if (!open(v)) continue;
      if (norm_linf(v) == R) return true;
      stack.push_back(v);
    }
  }
  return false;
}

}  // namespace perc3
