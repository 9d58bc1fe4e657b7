#include "perc3/traveltime.hpp"

#include <algorithm>
#include <stdexcept>

namespace perc3 {

namespace {

struct LevelSearch {
  int cost = kUnreachable;
  std::size_t cell = 0;
};

// 0-1 breadth-first search over node weights, processed level by level: the
// current level list grows with cost-0 discoveries (open neighbours) and
// cost-1 discoveries (closed neighbours) go to the next level. Entries whose
// distance dropped after they were queued are skipped as stale.
//
// With a target mask, stops once the level holding the first target is
// finished and reports the smallest-cell target of that level.
LevelSearch zero_one_bfs(const RegionGrid& g, std::size_t src, std::vector<int>& dist,
                         std::vector<std::int8_t>* pred, const std::vector<std::uint8_t>* targets,
                         std::vector<std::size_t>* touched) {
  LevelSearch found;
  std::vector<std::size_t> cur, nxt;
  int level = g.weight(src);
  dist[src] = level;
  if (pred) (*pred)[src] = -1;
  if (touched) touched->push_back(src);
  cur.push_back(src);
  const auto& steps = g.steps();
  while (!cur.empty()) {
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const std::size_t u = cur[i];
      if (dist[u] != level) continue;
      if (targets && (*targets)[u] && (found.cost == kUnreachable || u < found.cell)) {
        found.cost = level;
        found.cell = u;
      }
      for (int d = 0; d < 6; ++d) {
        const std::size_t v = u + static_cast<std::size_t>(steps[d]);
        const std::uint8_t code = g.code(v);
        if (code == RegionGrid::kOutside) continue;
        const int nd = level + (code == RegionGrid::kClosed ? 1 : 0);
        if (nd >= dist[v]) continue;
        if (touched && dist[v] == kUnreachable) touched->push_back(v);
        dist[v] = nd;
        if (pred) (*pred)[v] = static_cast<std::int8_t>(d);
        (nd == level ? cur : nxt).push_back(v);
      }
    }
    if (found.cost != kUnreachable) break;
    cur.swap(nxt);
    nxt.clear();
    ++level;
  }
  return found;
}

}  // namespace

DistanceField make_distance_field(std::shared_ptr<const RegionGrid> grid, Site source, bool with_pred) {
  DistanceField f;
  f.source_ = source;
  const auto cell = grid->cell_of(source);
  if (!cell) throw std::invalid_argument("travel_field: source outside region");
  f.dist_.assign(grid->cell_count(), kUnreachable);
  if (with_pred) f.pred_.assign(grid->cell_count(), -1);
  zero_one_bfs(*grid, *cell, f.dist_, with_pred ? &f.pred_ : nullptr, nullptr, nullptr);
  f.grid_ = std::move(grid);
  return f;
}

int DistanceField::at(Site s) const noexcept {
  const auto cell = grid_->cell_of(s);
  return cell ? dist_[*cell] : kUnreachable;
}

std::vector<Site> DistanceField::path_to(Site target) const {
  auto cell = grid_->cell_of(target);
  if (!cell || dist_[*cell] == kUnreachable) return {};
  if (pred_.empty()) throw std::logic_error("distance field was built without predecessors");
  std::vector<Site> path;
  std::size_t c = *cell;
  const auto& steps = grid_->steps();
  while (true) {
    path.push_back(grid_->site_of(c));
    const int d = pred_[c];
    if (d < 0) break;
    c -= static_cast<std::size_t>(steps[d]);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

int DistanceField::max_distance() const noexcept {
  int best = -1;
  for (int d : dist_)
    if (d != kUnreachable && d > best) best = d;
  return best;
}

Site DistanceField::farthest() const noexcept {
  const int best = max_distance();
  for (std::size_t c = 0; c < dist_.size(); ++c)
    if (dist_[c] == best) return grid_->site_of(c);
  return source_;
}

std::optional<std::pair<int, Site>> DistanceField::min_over(std::span<const Site> targets) const noexcept {
  std::optional<std::pair<int, Site>> best;
  for (const Site& t : targets) {
    const int d = at(t);
    if (d == kUnreachable) continue;
    if (!best || d < best->first || (d == best->first && IndexOrder{}(t, best->second))) best = {d, t};
  }
  return best;
}

DistanceField travel_field(const Configuration& config, const Region& region, Site source) {
  if (!region.contains(source) || !config.contains(source))
    throw std::invalid_argument("travel_field: source outside region");
  return make_distance_field(std::make_shared<const RegionGrid>(config, region), source, true);
}

TravelPath travel_to_set(const Configuration& config, const Region& region, Site source,
                         std::span<const Site> targets) {
  if (!region.contains(source) || !config.contains(source))
    throw std::invalid_argument("travel_to_set: source outside region");
  RegionGrid grid(config, region);
  std::vector<std::uint8_t> mask(grid.cell_count(), 0);
  bool any = false;
  for (const Site& t : targets)
    if (auto c = grid.cell_of(t)) mask[*c] = any = true;
  TravelPath out;
  if (!any) return out;
  std::vector<int> dist(grid.cell_count(), kUnreachable);
  std::vector<std::int8_t> pred(grid.cell_count(), -1);
  const LevelSearch r = zero_one_bfs(grid, *grid.cell_of(source), dist, &pred, &mask, nullptr);
  if (r.cost == kUnreachable) return out;
  out.cost = r.cost;
  out.hit = grid.site_of(r.cell);
  const auto& steps = grid.steps();
  for (std::size_t c = r.cell;; c -= static_cast<std::size_t>(steps[pred[c]])) {
    out.path.push_back(grid.site_of(c));
    if (pred[c] < 0) break;
  }
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

int travel_time(const Configuration& config, const Region& region, Site a, Site b) {
  const Site target[1] = {b};
  return travel_to_set(config, region, a, target).cost;
}

TravelEngine::TravelEngine(const Configuration& config) : config_(&config) {}

const RegionGrid& TravelEngine::box_grid() {
  if (!box_grid_) box_grid_ = std::make_shared<const RegionGrid>(*config_);
  return *box_grid_;
}

const ClusterLabels& TravelEngine::labels() {
  if (!labels_) labels_ = label_open_clusters(*config_);
  return *labels_;
}

SetHit TravelEngine::search(const RegionGrid& grid, Site source, std::span<const Site> targets, bool reuse) {
  const auto src = grid.cell_of(source);
  if (!src) throw std::invalid_argument("travel query: source outside region");
  ++searches_;
  std::vector<int> local_dist;
  std::vector<std::uint8_t> local_mark;
  std::vector<int>& dist = reuse ? dist_ : local_dist;
  std::vector<std::uint8_t>& mark = reuse ? mark_ : local_mark;
  if (dist.size() != grid.cell_count()) dist.assign(grid.cell_count(), kUnreachable);
  if (mark.size() != grid.cell_count()) mark.assign(grid.cell_count(), 0);

  std::vector<std::size_t> marked;
  for (const Site& t : targets)
    if (auto c = grid.cell_of(t); c && !mark[*c]) {
      mark[*c] = 1;
      marked.push_back(*c);
    }
  SetHit out;
  if (!marked.empty()) {
    std::vector<std::size_t> touched;
    const LevelSearch r = zero_one_bfs(grid, *src, dist, nullptr, &mark, &touched);
    if (r.cost != kUnreachable) out = {r.cost, grid.site_of(r.cell)};
    for (auto c : touched) dist[c] = kUnreachable;
  }
  for (auto c : marked) mark[c] = 0;
  return out;
}

SetHit TravelEngine::nearest_in_box(Site source, std::span<const Site> targets) {
  if (!config_->contains(source)) throw std::invalid_argument("travel query: source outside region");
  const ClusterLabels& lab = labels();
  const std::size_t si = config_->index(source);
  // cost-0 set of an open source, cost-1 set of a closed one
  std::int32_t reach[6];
  int nreach = 0;
  int level = 0;
  bool self = false;
  if (config_->is_open(si)) {
    reach[nreach++] = lab.of(si);
  } else {
    level = 1;
    self = true;
    for (const Site& d : kNeighborSteps) {
      const Site v = source + d;
      if (!config_->contains(v)) continue;
      const std::int32_t l = lab.of(config_->index(v));
      if (l >= 0 && std::find(reach, reach + nreach, l) == reach + nreach) reach[nreach++] = l;
    }
  }
  std::optional<std::size_t> best;
  for (const Site& t : targets) {
    if (!config_->contains(t)) continue;
    const std::size_t ti = config_->index(t);
    const bool hit = (self && ti == si) || (lab.of(ti) >= 0 && std::find(reach, reach + nreach, lab.of(ti)) != reach + nreach);
    if (hit && (!best || ti < *best)) best = ti;
  }
  if (best) {
    ++shortcuts_;
    return {level, config_->site(*best)};
  }
  return search(box_grid(), source, targets, true);
}

SetHit TravelEngine::nearest(const Region& region, Site source, std::span<const Site> targets) {
  if (const BoxSpec* b = region.box(); b && b->center == Site{} && b->half_side >= config_->n())
    return nearest_in_box(source, targets);
  if (!region.contains(source)) throw std::invalid_argument("travel query: source outside region");
  RegionGrid grid(*config_, region);
  return search(grid, source, targets, false);
}

DistanceField TravelEngine::field_in_box(Site source) {
  box_grid();
  return make_distance_field(box_grid_, source, false);
}

}  // namespace perc3
