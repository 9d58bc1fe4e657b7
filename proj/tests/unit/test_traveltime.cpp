#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "perc3/rng.hpp"
#include "perc3/traveltime.hpp"

using namespace perc3;

TEST_SUITE("traveltime") {

TEST_CASE("field equals Dijkstra on boxes and balls") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed)
    for (double p : {0.1, 0.5, 0.9}) {
      const Configuration cfg = sample_configuration(4, p, seed);
      for (const Region& region : {Region(cfg.box()), Region(BallSpec{{1, 1, 0}, 9}), Region(BoxSpec{{-1, 2, 0}, 2})}) {
        const Site src = region.contains({0, 0, 0}) ? Site{0, 0, 0} : Site{1, 1, 0};
        const auto ref = oracle::dijkstra(cfg, region, src);
        const DistanceField f = travel_field(cfg, region, src);
        for (std::size_t i = 0; i < cfg.size(); ++i) {
          const Site s = cfg.site(i);
          CHECK(f.at(s) == oracle::lookup(ref, cfg, s));
        }
      }
    }
}

TEST_CASE("tiny box: field equals the literal all-simple-paths minimum") {
  // Λ(1) minus a corner region keeps the literal enumeration cheap.
  const Region region = BallSpec{{0, 0, 0}, 2};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Configuration cfg = sample_configuration(1, 0.5, seed);
    for (Site src : region.sites()) {
      std::uint64_t paths = 0;
      const auto ref = oracle::all_simple_paths_minima(cfg, region, src, &paths);
      CHECK(paths > 0);
      const DistanceField f = travel_field(cfg, region, src);
      for (std::size_t i = 0; i < cfg.size(); ++i) CHECK(f.at(cfg.site(i)) == ref[i]);
    }
  }
}

TEST_CASE("endpoint convention and trivial configurations") {
  const Configuration closed = sample_configuration(3, 0.0, 1);
  const Configuration open = sample_configuration(3, 1.0, 1);
  CHECK(travel_time(closed, closed.box(), {0, 0, 0}, {0, 0, 0}) == 1);
  CHECK(travel_time(closed, closed.box(), {0, 0, 0}, {2, -1, 3}) == 1 + 2 + 1 + 3);
  CHECK(travel_time(open, open.box(), {-3, -3, -3}, {3, 3, 3}) == 0);
}

TEST_CASE("symmetry and triangle inequality with the shared site") {
  const Configuration cfg = sample_configuration(3, 0.55, 4);
  const Region box = cfg.box();
  const std::vector<Site> pts{{0, 0, 0}, {3, -2, 1}, {-3, 3, -3}, {1, 1, 2}, {-1, 0, -2}};
  for (Site a : pts)
    for (Site b : pts) {
      const int ab = travel_time(cfg, box, a, b);
      CHECK(ab == travel_time(cfg, box, b, a));
      for (Site c : pts) {
        const int w = cfg.is_open(c) ? 0 : 1;
        CHECK(ab <= travel_time(cfg, box, a, c) + travel_time(cfg, box, c, b) - w);
      }
    }
}

TEST_CASE("witness paths are nearest-neighbour, inside the region, and cost exactly") {
  const Configuration cfg = sample_configuration(5, 0.45, 9);
  const Region region = BallSpec{{0, 0, 0}, 19};
  const DistanceField f = travel_field(cfg, region, {0, 0, 0});
  for (Site t : region.sites()) {
    if (!f.reachable(t)) continue;
    const auto path = f.path_to(t);
    REQUIRE(!path.empty());
    CHECK(path.front() == Site{0, 0, 0});
    CHECK(path.back() == t);
    int cost = 0;
    for (std::size_t i = 0; i < path.size(); ++i) {
      CHECK(region.contains(path[i]));
      cost += cfg.is_open(path[i]) ? 0 : 1;
      if (i) CHECK(adjacent(path[i - 1], path[i]));
    }
    CHECK(cost == f.at(t));
  }
}

TEST_CASE("disconnected regions report unreachable") {
  const Configuration cfg = sample_configuration(3, 0.5, 2);
  const Region two = SiteSet({{0, 0, 0}, {2, 0, 0}});
  const DistanceField f = travel_field(cfg, two, {0, 0, 0});
  CHECK_FALSE(f.reachable({2, 0, 0}));
  CHECK(f.at({9, 9, 9}) == kUnreachable);
  CHECK(f.path_to({2, 0, 0}).empty());
  CHECK_THROWS_AS(travel_field(cfg, two, {1, 0, 0}), std::invalid_argument);
}

TEST_CASE("set queries: minimum cost with smallest-index tie break") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Configuration cfg = sample_configuration(5, 0.4, seed);
    const Region region = cfg.box();
    const Site src{1, -2, 0};
    const auto ref = oracle::dijkstra(cfg, region, src);
    std::vector<Site> targets{{5, 5, 5}, {-5, 0, 1}, {0, 5, -3}, {2, 2, 2}, {-4, -4, 4}, {7, 0, 0}};
    int best = oracle::kInf;
    Site best_site{};
    std::vector<Site> ordered = targets;
    std::sort(ordered.begin(), ordered.end(), IndexOrder{});
    for (Site t : ordered) {
      const int d = oracle::lookup(ref, cfg, t);
      if (d < best) best = d, best_site = t;
    }
    const TravelPath tp = travel_to_set(cfg, region, src, targets);
    CHECK(tp.cost == best);
    CHECK(tp.hit == best_site);
    int cost = 0;
    for (Site s : tp.path) cost += cfg.is_open(s) ? 0 : 1;
    CHECK(cost == best);

    TravelEngine engine(cfg);
    const SetHit h = engine.nearest_in_box(src, targets);
    CHECK(h.cost == best);
    CHECK(h.hit == best_site);
  }
}

TEST_CASE("engine agrees with travel_to_set across sources, including label shortcuts") {
  const Configuration cfg = sample_configuration(6, 0.35, 13);
  TravelEngine engine(cfg);
  SplitMix64 rng(3);
  const Region ball = BallSpec{{0, 0, 0}, 25};
  for (int q = 0; q < 200; ++q) {
    auto coord = [&] { return static_cast<int>(rng.below(13)) - 6; };
    const Site src{coord(), coord(), coord()};
    std::vector<Site> targets;
    const int nt = 1 + static_cast<int>(rng.below(6));
    for (int j = 0; j < nt; ++j) targets.push_back({coord(), coord(), coord()});
    const TravelPath ref = travel_to_set(cfg, cfg.box(), src, targets);
    const SetHit h = engine.nearest_in_box(src, targets);
    CHECK(h.cost == ref.cost);
    if (ref.reachable()) CHECK(h.hit == ref.hit);
    if (ball.contains(src)) {
      const TravelPath rb = travel_to_set(cfg, ball, src, targets);
      const SetHit hb = engine.nearest(ball, src, targets);
      CHECK(hb.cost == rb.cost);
      if (rb.reachable()) CHECK(hb.hit == rb.hit);
    }
  }
  CHECK(engine.label_shortcuts() > 0);
  CHECK(engine.searches() > 0);
}

TEST_CASE("max distance and farthest site") {
  const Configuration cfg = sample_configuration(4, 0.5, 6);
  const DistanceField f = travel_field(cfg, cfg.box(), {0, 0, 0});
  int mx = 0;
  Site arg{};
  for (std::size_t i = 0; i < cfg.size(); ++i)
    if (f.at(cfg.site(i)) > mx) mx = f.at(cfg.site(i)), arg = cfg.site(i);
  CHECK(f.max_distance() == mx);
  CHECK(f.farthest() == arg);
}

}  // TEST_SUITE
