#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "perc3/events.hpp"
#include "perc3/stats.hpp"

using namespace perc3;

namespace {

struct Brute {
  bool holds = true;
  int max_time = 0;
  std::uint64_t checks = 0;
  std::uint64_t violating_centers = 0;
  std::optional<Site> first_center;
  int first_time = 0;
};

void record(Brute& b, int value, int k, Site x, bool& center_bad) {
  ++b.checks;
  if (value != oracle::kInf) b.max_time = std::max(b.max_time, value);
  if (value > k) {
    if (b.holds) b.first_center = x, b.first_time = value;
    b.holds = false;
    center_bad = true;
  }
}

Brute brute_E(const Configuration& cfg, int k) {
  Brute b;
  const int n = cfg.n();
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const Site x = cfg.site(i);
    const auto dist = oracle::dijkstra(cfg, cfg.box(), x);
    bool bad = false;
    for (int m = 1; norm_linf(x) + m <= n; ++m)
      for (int face = 1; face <= 6; ++face)
        for (int q = 1; q <= 4; ++q) {
          int best = oracle::kInf;
          for (Site s : oracle::quarter_by_definition(x, m, face, q)) best = std::min(best, oracle::lookup(dist, cfg, s));
          record(b, best, k, x, bad);
        }
    b.violating_centers += bad;
  }
  return b;
}

Brute brute_F(const Configuration& cfg, int k, double t) {
  Brute b;
  const auto tris = oracle::all_triangles();
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const Site x = cfg.site(i);
    bool bad = false;
    const std::int64_t reach = cfg.n() - norm_linf(x);
    for (std::int64_t r2 = 1; r2 <= reach * reach; ++r2) {
      if (!is_sum_of_three_squares(r2)) continue;
      const Region ball = BallSpec{x, r2};
      const auto dist = oracle::dijkstra(cfg, ball, x);
      for (const auto& tri : tris) {
        int best = oracle::kInf;
        for (Site off : oracle::thick_by_definition(tri, r2, t)) best = std::min(best, oracle::lookup(dist, cfg, x + off));
        record(b, best, k, x, bad);
      }
    }
    b.violating_centers += bad;
  }
  return b;
}

}  // namespace

TEST_SUITE("events") {

TEST_CASE("all-open holds at k = 0, all-closed fails with the corner witness") {
  const Configuration open = sample_configuration(4, 1.0, 1);
  CHECK(check_event_E(open, 0, EventMode::exhaustive()).holds);
  CHECK(check_event_F(open, 0, EventMode::exhaustive()).holds);
  const Configuration closed = sample_configuration(4, 0.0, 1);
  const EventReport e = check_event_E(closed, 0, EventMode::exhaustive());
  CHECK_FALSE(e.holds);
  REQUIRE(e.violation);
  // boundary centers have no admissible box; the first interior center fails
  CHECK(e.violation->center == Site{-3, -3, -3});
  REQUIRE(e.violation->face);
  CHECK(e.violation->face->half_side == 1);
  CHECK(e.violation->travel_time == 2);
  CHECK(e.centers_checked == 729);
  CHECK(e.violating_centers == 343);
}

TEST_CASE("exhaustive E and F agree with the definition-level checker") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Configuration cfg = sample_configuration(3, 0.65, seed);
    const Brute full_e = brute_E(cfg, 1000);
    for (int k : {full_e.max_time - 1, full_e.max_time}) {
      if (k < 0) continue;
      const Brute b = brute_E(cfg, k);
      const EventReport r = check_event_E(cfg, k, EventMode::exhaustive());
      CHECK(r.holds == b.holds);
      CHECK(r.max_travel_time == b.max_time);
      CHECK(r.checks_performed == b.checks);
      CHECK(r.violating_centers == b.violating_centers);
      if (!b.holds) {
        REQUIRE(r.violation);
        CHECK(r.violation->center == *b.first_center);
        CHECK(recheck_witness(cfg, *r.violation) == r.violation->travel_time);
      }
    }
    const Brute full_f = brute_F(cfg, 1000, 3.0);
    for (int k : {full_f.max_time - 1, full_f.max_time}) {
      if (k < 0) continue;
      const Brute b = brute_F(cfg, k, 3.0);
      const EventReport r = check_event_F(cfg, k, EventMode::exhaustive(), 3.0);
      CHECK(r.holds == b.holds);
      CHECK(r.max_travel_time == b.max_time);
      CHECK(r.checks_performed == b.checks);
      CHECK(r.violating_centers == b.violating_centers);
      if (!b.holds) {
        REQUIRE(r.violation);
        CHECK(r.violation->center == *b.first_center);
        CHECK(recheck_witness(cfg, *r.violation, 3.0) == r.violation->travel_time);
      }
    }
  }
}

TEST_CASE("monotone in k and in opening sites") {
  const Configuration cfg = sample_configuration(4, 0.5, 17);
  const int mx = check_event_E(cfg, 0, EventMode::exhaustive()).max_travel_time;
  bool prev = false;
  for (int k = 0; k <= mx + 1; ++k) {
    const bool h = check_event_E(cfg, k, EventMode::exhaustive()).holds;
    if (prev) CHECK(h);
    prev = h;
  }
  CHECK(prev);
  // coupling in p: the configuration at higher p has every site open that is open at lower p
  const int k = 3;
  const bool lo = check_event_F(sample_configuration(4, 0.4, 2), k, EventMode::exhaustive()).holds;
  const bool hi = check_event_F(sample_configuration(4, 0.8, 2), k, EventMode::exhaustive()).holds;
  if (lo) CHECK(hi);
}

TEST_CASE("sampled mode reports a one-sided Wilson bound") {
  const Configuration cfg = sample_configuration(8, 0.6, 5);
  const EventReport r = check_event_E(cfg, 2, EventMode::sampled(50, 9));
  CHECK(r.centers_checked == 50);
  REQUIRE(r.violation_upper_bound);
  CHECK(*r.violation_upper_bound == doctest::Approx(wilson_upper(r.violating_centers, 50)));
  const EventReport again = check_event_E(cfg, 2, EventMode::sampled(50, 9), 2);
  CHECK(again.violating_centers == r.violating_centers);
  CHECK(again.to_json() == r.to_json());
}

TEST_CASE("input validation") {
  const Configuration cfg = sample_configuration(18, 0.5, 1);
  CHECK_THROWS_AS(check_event_E(cfg, 2, EventMode::exhaustive()), std::invalid_argument);
  CHECK_THROWS_AS(check_event_E(cfg, -1, EventMode::sampled(3, 1)), std::invalid_argument);
  CHECK_THROWS_AS(check_event_F(cfg, 2, EventMode::on_demand()), std::invalid_argument);
  CHECK_THROWS_AS(EventOracle(cfg, 2, -1.0), std::invalid_argument);
}

TEST_CASE("oracle answers match direct computation and are cached") {
  const Configuration cfg = sample_configuration(6, 0.55, 4);
  EventOracle oracle_q(cfg, 2, 3.0);
  const FaceQuery fq{{1, -2, 0}, 3, 3, 2};
  const SetHit h = oracle_q.face(fq);
  const auto quarter = oracle::quarter_by_definition(fq.center, fq.half_side, fq.face, fq.quadrant);
  const auto dist = oracle::dijkstra(cfg, cfg.box(), fq.center);
  int best = oracle::kInf;
  for (Site s : quarter) best = std::min(best, oracle::lookup(dist, cfg, s));
  CHECK(h.cost == best);
  CHECK(oracle_q.face(fq) == h);

  const TriangleQuery tq{{0, 0, 0}, 17, 21};
  const SetHit th = oracle_q.triangle(tq);
  const auto tris = oracle::all_triangles();
  const auto bdist = oracle::dijkstra(cfg, BallSpec{{0, 0, 0}, 17}, {0, 0, 0});
  int tbest = oracle::kInf;
  for (Site off : oracle::thick_by_definition(tris[21], 17, 3.0)) tbest = std::min(tbest, oracle::lookup(bdist, cfg, off));
  CHECK(th.cost == tbest);

  const EventReport rep = oracle_q.report(EventKind::E);
  CHECK(rep.checks_performed == 1);
  CHECK(rep.holds == (h.cost <= 2));
}

}  // TEST_SUITE
