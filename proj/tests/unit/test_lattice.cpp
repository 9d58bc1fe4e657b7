#include <set>
#include <stdexcept>
#include <tuple>

#include "doctest.h"
#include "perc3/lattice.hpp"
#include "perc3/rng.hpp"

using namespace perc3;

TEST_SUITE("lattice") {

TEST_CASE("site index round trip and ordering") {
  const Configuration cfg = sample_configuration(3, 0.5, 7);
  CHECK(cfg.size() == 343);
  CHECK(cfg.index({-3, -3, -3}) == 0);
  CHECK(cfg.index({3, 3, 3}) == 342);
  CHECK(cfg.index({-2, -3, -3}) == 1);
  CHECK(cfg.index({-3, -2, -3}) == 7);
  CHECK(cfg.index({-3, -3, -2}) == 49);
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const Site s = cfg.site(i);
    REQUIRE(cfg.index(s) == i);
    if (i > 0) CHECK(IndexOrder{}(cfg.site(i - 1), s));
  }
}

TEST_CASE("site states follow the documented stream") {
  const std::uint64_t seed = 99;
  const Configuration cfg = sample_configuration(2, 0.37, seed);
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const std::uint64_t v = stream_value(seed, i);
    const double u = static_cast<double>(v >> 11) / 9007199254740992.0;
    CHECK(cfg.is_open(i) == (u < 0.37));
  }
}

TEST_CASE("configurations are nested across p for one seed") {
  const Configuration lo = sample_configuration(4, 0.3, 5);
  const Configuration hi = sample_configuration(4, 0.7, 5);
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo.is_open(i)) CHECK(hi.is_open(i));
  CHECK(sample_configuration(4, 0.0, 5).open_count() == 0);
  CHECK(sample_configuration(4, 1.0, 5).open_count() == lo.size());
}

TEST_CASE("sampling validates its inputs") {
  CHECK_THROWS_AS(sample_configuration(-1, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_configuration(2, 1.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_configuration(2, -0.1, 1), std::invalid_argument);
}

TEST_CASE("sums of three squares match direct enumeration") {
  std::set<std::int64_t> reachable;
  for (int a = 0; a <= 40; ++a)
    for (int b = 0; b <= 40; ++b)
      for (int c = 0; c <= 40; ++c) reachable.insert(a * a + b * b + c * c);
  for (std::int64_t n = 0; n <= 1600; ++n) CHECK(is_sum_of_three_squares(n) == (reachable.count(n) > 0));
  CHECK_FALSE(is_sum_of_three_squares(7));
  CHECK_FALSE(is_sum_of_three_squares(28));
  CHECK(is_sum_of_three_squares(27));
}

TEST_CASE("isqrt") {
  for (std::int64_t n = 0; n < 5000; ++n) {
    const std::int64_t r = isqrt(n);
    CHECK(r * r <= n);
    CHECK((r + 1) * (r + 1) > n);
  }
  CHECK(isqrt(std::int64_t{1} << 60) == (std::int64_t{1} << 30));
}

TEST_CASE("box and ball boundaries against neighbour counting") {
  for (const Region& region : {Region(BoxSpec{{1, -1, 0}, 2}), Region(BallSpec{{0, 0, 0}, 11}),
                               Region(SiteSet({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}}))}) {
    const SiteSet inner = inner_boundary(region);
    const SiteSet outer = outer_boundary(region);
    std::set<std::tuple<int, int, int>> in_ref, out_ref;
    for (int z = -6; z <= 6; ++z)
      for (int y = -6; y <= 6; ++y)
        for (int x = -6; x <= 6; ++x) {
          const Site s{x, y, z};
          int inside_nb = 0;
          for (Site d : kNeighborSteps) inside_nb += region.contains(s + d);
          if (region.contains(s) && inside_nb < 6) in_ref.insert({x, y, z});
          if (!region.contains(s) && inside_nb > 0) out_ref.insert({x, y, z});
        }
    CHECK(inner.size() == in_ref.size());
    CHECK(outer.size() == out_ref.size());
    for (Site s : inner) CHECK(in_ref.count({s.x, s.y, s.z}) == 1);
    for (Site s : outer) CHECK(out_ref.count({s.x, s.y, s.z}) == 1);
  }
}

TEST_CASE("inner boundary of a box has (2m+1)^3 - (2m-1)^3 sites") {
  for (int m = 1; m <= 5; ++m) {
    const std::int64_t expect = (2 * m + 1) * (2 * m + 1) * (2 * m + 1) - (2 * m - 1) * (2 * m - 1) * (2 * m - 1);
    CHECK(static_cast<std::int64_t>(inner_boundary(lambda_box(m)).size()) == expect);
  }
}

TEST_CASE("admissible radii") {
  // x = (1,0,0) in Λ(5): nearest face at distance 4, so r^2 <= 16.
  const auto r = admissible_radii({1, 0, 0}, lambda_box(5));
  std::vector<std::int64_t> expect;
  for (std::int64_t k = 1; k <= 16; ++k)
    if (is_sum_of_three_squares(k)) expect.push_back(k);
  CHECK(r == expect);
  CHECK(r.back() == 16);
  CHECK(admissible_radii({5, 0, 0}, lambda_box(5)).empty());
  for (std::int64_t r2 : admissible_radii({-2, 1, 3}, lambda_box(6))) {
    const BallSpec ball{{-2, 1, 3}, r2};
    for (Site s : Region(ball).sites()) CHECK(lambda_box(6).contains(s));
  }
}

TEST_CASE("scaled box membership") {
  CHECK(in_scaled_box({48, 0, 0}, 64, 3, 4));
  CHECK_FALSE(in_scaled_box({49, 0, 0}, 64, 3, 4));
  CHECK(in_scaled_box({0, -16, 3}, 64, 1, 4));
  CHECK_FALSE(in_scaled_box({0, -17, 3}, 64, 1, 4));
}

TEST_CASE("with_state toggles one site") {
  const Configuration cfg = sample_configuration(2, 0.5, 3);
  const Configuration opened = cfg.with_state({0, 0, 0}, true);
  CHECK(opened.is_open({0, 0, 0}));
  for (std::size_t i = 0; i < cfg.size(); ++i)
    if (cfg.site(i) != Site{0, 0, 0}) CHECK(opened.is_open(i) == cfg.is_open(i));
}

TEST_CASE("SplitMix64 below stays in range and is reproducible") {
  SplitMix64 a(5), b(5);
  for (int i = 0; i < 1000; ++i) {
    const auto v = a.below(37);
    CHECK(v < 37);
    CHECK(v == b.below(37));
  }
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

}  // TEST_SUITE
