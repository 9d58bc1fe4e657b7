#include "perc3/events.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"
#include "perc3/parallel.hpp"
#include "perc3/rng.hpp"
#include "perc3/stats.hpp"

namespace perc3 {

namespace {

using nlohmann::ordered_json;

struct CenterResult {
  std::uint64_t checks = 0;
  std::uint64_t subshapes = 0;
  int max_time = 0;
  std::optional<EventWitness> first;
};

void note(CenterResult& res, int value, int k, const EventWitness& candidate) {
  ++res.checks;
  if (value != kUnreachable) res.max_time = std::max(res.max_time, value);
  if (value > k && !res.first) res.first = candidate;
}

CenterResult check_center_E(const Configuration& config, Site x, int k) {
  CenterResult res;
  const DistanceField field = travel_field(config, config.box(), x);
  const int mmax = config.n() - norm_linf(x);
  for (int m = 1; m <= mmax; ++m) {
    ++res.subshapes;
    const BoxSpec box{x, m};
    for (int face = 1; face <= 6; ++face)
      for (int j = 1; j <= 4; ++j) {
        const QuarterSquare q = quarter_extent(box, face, j);
        int best = kUnreachable;
        Site hit{};
        for (int z = q.lo.z; z <= q.hi.z; ++z)
          for (int y = q.lo.y; y <= q.hi.y; ++y)
            for (int xx = q.lo.x; xx <= q.hi.x; ++xx) {
              const int d = field.at({xx, y, z});
              if (d < best) {
                best = d;
                hit = {xx, y, z};
              }
            }
        EventWitness w;
        w.center = x;
        w.face = FaceQuery{x, m, face, j};
        w.travel_time = best;
        if (best != kUnreachable) w.hit = hit;
        note(res, best, k, w);
      }
  }
  return res;
}

using OffsetTable = std::map<std::int64_t, std::vector<std::vector<Site>>>;

CenterResult check_center_F(const Configuration& config, Site x, int k, const OffsetTable& table) {
  CenterResult res;
  for (std::int64_t r2 : admissible_radii(x, config.box())) {
    ++res.subshapes;
    const BallSpec ball{x, r2};
    const DistanceField field = travel_field(config, ball, x);
    const auto& lists = table.at(r2);
    for (int ord = 0; ord < kTriangleCount; ++ord) {
      int best = kUnreachable;
      Site hit{};
      for (Site off : lists[static_cast<std::size_t>(ord)]) {
        const int d = field.at(x + off);
        if (d < best) {
          best = d;
          hit = x + off;
        }
      }
      EventWitness w;
      w.center = x;
      w.triangle = TriangleQuery{x, r2, ord};
      w.travel_time = best;
      if (best != kUnreachable) w.hit = hit;
      note(res, best, k, w);
    }
  }
  return res;
}

std::vector<Site> centers_for(const Configuration& config, const EventMode& mode) {
  std::vector<Site> centers;
  if (mode.kind == CheckMode::Exhaustive) {
    if (config.n() > kExhaustiveMaxN)
      throw std::invalid_argument("exhaustive mode needs (2n+1)^3 <= 5e4; use sampled mode");
    centers.reserve(config.size());
    for (std::size_t i = 0; i < config.size(); ++i) centers.push_back(config.site(i));
  } else if (mode.kind == CheckMode::Sampled) {
    if (mode.count == 0) throw std::invalid_argument("sampled mode needs at least one center");
    SplitMix64 rng(mode.seed);
    centers.reserve(mode.count);
    for (std::uint64_t s = 0; s < mode.count; ++s) centers.push_back(config.site(rng.below(config.size())));
  } else {
    throw std::invalid_argument("on-demand checks go through EventOracle");
  }
  return centers;
}

EventReport merge(EventKind kind, int k, const EventMode& mode, double t, const Configuration& config,
                  const std::vector<CenterResult>& results) {
  EventReport rep;
  rep.event = kind;
  rep.k = k;
  rep.mode = mode;
  rep.thickness = t;
  rep.centers_checked = results.size();
  for (const CenterResult& r : results) {
    rep.checks_performed += r.checks;
    rep.subshapes_checked += r.subshapes;
    rep.max_travel_time = std::max(rep.max_travel_time, r.max_time);
    if (!r.first) continue;
    ++rep.violating_centers;
    if (!rep.violation || config.index(r.first->center) < config.index(rep.violation->center)) rep.violation = r.first;
  }
  rep.holds = !rep.violation;
  if (mode.kind == CheckMode::Sampled) rep.violation_upper_bound = wilson_upper(rep.violating_centers, results.size());
  return rep;
}

const char* kind_name(EventKind k) { return k == EventKind::E ? "E" : "F"; }

ordered_json site_json(Site s) { return ordered_json::array({s.x, s.y, s.z}); }

}  // namespace

EventReport check_event_E(const Configuration& config, int k, const EventMode& mode, unsigned threads) {
  if (k < 0) throw std::invalid_argument("budget k must be >= 0");
  const std::vector<Site> centers = centers_for(config, mode);
  std::vector<CenterResult> results(centers.size());
  parallel_for(centers.size(), threads, [&](std::size_t i) { results[i] = check_center_E(config, centers[i], k); });
  return merge(EventKind::E, k, mode, 3.0, config, results);
}

EventReport check_event_F(const Configuration& config, int k, const EventMode& mode, double t, unsigned threads) {
  if (k < 0) throw std::invalid_argument("budget k must be >= 0");
  if (t < 0.0) throw std::invalid_argument("thickness must be non-negative");
  const std::vector<Site> centers = centers_for(config, mode);
  OffsetTable table;
  for (std::int64_t r2 : admissible_radii({0, 0, 0}, config.box())) table.emplace(r2, thickened_offsets_all(r2, t));
  std::vector<CenterResult> results(centers.size());
  parallel_for(centers.size(), threads,
               [&](std::size_t i) { results[i] = check_center_F(config, centers[i], k, table); });
  return merge(EventKind::F, k, mode, t, config, results);
}

// ---------------------------------------------------------------------------

EventOracle::EventOracle(const Configuration& config, int k, double t) : engine_(config), k_(k), t_(t) {
  if (k < 0) throw std::invalid_argument("budget k must be >= 0");
  if (t < 0.0) throw std::invalid_argument("thickness must be non-negative");
}

SetHit EventOracle::face(const FaceQuery& q) {
  if (auto it = faces_.find(q); it != faces_.end()) return it->second;
  const Configuration& cfg = config();
  if (!cfg.contains(q.center)) throw std::invalid_argument("face query: center outside Λ(n)");
  QuarterSquare quarter = quarter_square(BoxSpec{q.center, q.half_side}, q.face, q.quadrant);
  std::erase_if(quarter.sites, [&](Site s) { return !cfg.contains(s); });
  const SetHit hit = engine_.nearest_in_box(q.center, quarter.sites);
  faces_.emplace(q, hit);
  return hit;
}

const std::vector<Site>& EventOracle::triangle_offsets(std::int64_t r_squared, int ordinal) {
  auto it = offsets_.find(r_squared);
  if (it == offsets_.end()) it = offsets_.emplace(r_squared, thickened_offsets_all(r_squared, t_)).first;
  return it->second.at(static_cast<std::size_t>(ordinal));
}

SetHit EventOracle::triangle(const TriangleQuery& q) {
  if (auto it = triangles_.find(q); it != triangles_.end()) return it->second;
  const Configuration& cfg = config();
  if (!cfg.contains(q.center)) throw std::invalid_argument("triangle query: center outside Λ(n)");
  std::vector<Site> targets;
  for (Site off : triangle_offsets(q.r_squared, q.triangle))
    if (cfg.contains(q.center + off)) targets.push_back(q.center + off);
  const SetHit hit = engine_.nearest(BallSpec{q.center, q.r_squared}, q.center, targets);
  triangles_.emplace(q, hit);
  return hit;
}

EventReport EventOracle::report(EventKind kind) const {
  EventReport rep;
  rep.event = kind;
  rep.k = k_;
  rep.mode = EventMode::on_demand();
  rep.thickness = t_;
  auto consider = [&](const EventWitness& w) {
    ++rep.checks_performed;
    if (w.travel_time != kUnreachable) rep.max_travel_time = std::max(rep.max_travel_time, w.travel_time);
    if (w.travel_time > k_ && !rep.violation) rep.violation = w;
  };
  if (kind == EventKind::E) {
    for (const auto& [q, hit] : faces_) {
      EventWitness w{q.center, q, std::nullopt, hit.cost, std::nullopt};
      if (hit.reachable()) w.hit = hit.hit;
      consider(w);
    }
  } else {
    for (const auto& [q, hit] : triangles_) {
      EventWitness w{q.center, std::nullopt, q, hit.cost, std::nullopt};
      if (hit.reachable()) w.hit = hit.hit;
      consider(w);
    }
  }
  rep.subshapes_checked = rep.checks_performed;
  rep.holds = !rep.violation;
  return rep;
}

int recheck_witness(const Configuration& config, const EventWitness& w, double t) {
  if (w.face) {
    QuarterSquare q = quarter_square(BoxSpec{w.face->center, w.face->half_side}, w.face->face, w.face->quadrant);
    return travel_to_set(config, config.box(), w.face->center, q.sites).cost;
  }
  if (w.triangle) {
    const ThickSet ts = thickened_triangle(w.triangle->center, w.triangle->r_squared,
                                           TriangleIndex::from_ordinal(w.triangle->triangle), t);
    return travel_to_set(config, BallSpec{w.triangle->center, w.triangle->r_squared}, w.triangle->center, ts.sites)
        .cost;
  }
  throw std::invalid_argument("witness carries no query");
}

std::string EventReport::to_json() const {
  ordered_json j;
  j["event"] = kind_name(event);
  j["k"] = k;
  ordered_json m;
  switch (mode.kind) {
    case CheckMode::Exhaustive: m["kind"] = "exhaustive"; break;
    case CheckMode::Sampled:
      m["kind"] = "sampled";
      m["count"] = mode.count;
      m["seed"] = mode.seed;
      break;
    case CheckMode::OnDemand: m["kind"] = "on_demand"; break;
  }
  j["mode"] = m;
  if (event == EventKind::F) j["thickness"] = thickness;
  j["holds"] = holds;
  if (violation) {
    ordered_json v;
    v["center"] = site_json(violation->center);
    if (violation->face) {
      v["half_side"] = violation->face->half_side;
      v["face"] = violation->face->face;
      v["quadrant"] = violation->face->quadrant;
    }
    if (violation->triangle) {
      v["r_squared"] = violation->triangle->r_squared;
      v["triangle"] = violation->triangle->triangle;
    }
    if (violation->travel_time == kUnreachable) {
      v["travel_time"] = nullptr;
    } else {
      v["travel_time"] = violation->travel_time;
    }
    v["hit"] = violation->hit ? site_json(*violation->hit) : ordered_json(nullptr);
    j["violation"] = v;
  } else {
    j["violation"] = nullptr;
  }
  j["checks_performed"] = checks_performed;
  j["subshapes_checked"] = subshapes_checked;
  j["centers_checked"] = centers_checked;
  j["violating_centers"] = violating_centers;
  j["max_travel_time"] = max_travel_time;
  if (violation_upper_bound) {
    j["violation_upper_bound"] = *violation_upper_bound;
    j["confidence"] = {{"method", "wilson_one_sided"}, {"level", 0.95}};
  }
  return j.dump(2);
}

}  // namespace perc3
