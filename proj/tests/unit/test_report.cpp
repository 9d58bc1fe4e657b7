#include <cmath>

#include "doctest.h"
#include "perc3/parallel.hpp"
#include "perc3/report.hpp"
#include "perc3/stats.hpp"

using namespace perc3;

namespace {

ExperimentReport sample_report() {
  ExperimentReport r;
  r.experiment = "demo";
  r.set_parameter("p", "0.6");
  r.set_parameter("args", "--p 0.6 --n 3");
  r.columns = {"k", "value", "ratio"};
  r.add_row({0, 1.0, 0.1});
  r.add_row({1, 2.5e-7, 1.0 / 3.0});
  r.add_row({2, -4.0, 123456789.125});
  return r;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("csv and json round trips are exact") {
  const ExperimentReport r = sample_report();
  CHECK(ExperimentReport::from_csv(r.to_csv()) == r);
  CHECK(ExperimentReport::from_json(r.to_json()) == r);
  const auto csv = r.to_csv();
  CHECK(csv.rfind("# experiment=demo\n", 0) == 0);
  CHECK(csv.find("\nk,value,ratio\n") != std::string::npos);
  CHECK(r.at(1, "ratio") == 1.0 / 3.0);
  CHECK(r.column_values("k") == std::vector<double>{0, 1, 2});
  CHECK_THROWS_AS(r.column("nope"), std::out_of_range);
  CHECK(r.parameter("p") == std::optional<std::string>("0.6"));
  CHECK_FALSE(r.parameter("q"));
}

TEST_CASE("rows must match the header and bad input is rejected") {
  ExperimentReport r = sample_report();
  CHECK_THROWS_AS(r.add_row({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ExperimentReport::from_csv("# experiment=x\na,b\n1\n"), std::invalid_argument);
  CHECK_THROWS_AS(ExperimentReport::from_csv("# experiment=x\na,b\n1,zz\n"), std::invalid_argument);
  CHECK_THROWS_AS(ExperimentReport::from_json("{not json"), std::invalid_argument);
}

TEST_CASE("format_double is shortest round-trip") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -0.0, 42.0}) CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(3.0) == "3");
}

TEST_CASE("wilson interval closed form") {
  // p̂ = 0.5, n = 100, z = 1.96: center 0.5, half width z/(1+z²/n) * sqrt(p̂(1-p̂)/n + z²/4n²)
  const double z = kZ95TwoSided, n = 100, ph = 0.5;
  const double denom = 1 + z * z / n;
  const double half = z / denom * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n));
  const Interval ci = wilson_interval(50, 100);
  CHECK(ci.lo == doctest::Approx(0.5 - half).epsilon(1e-12));
  CHECK(ci.hi == doctest::Approx(0.5 + half).epsilon(1e-12));
  CHECK(wilson_interval(0, 10).lo == 0.0);
  CHECK(wilson_interval(10, 10).hi == doctest::Approx(1.0));
  const double zz = kZ95OneSided;
  CHECK(wilson_upper(0, 50) == doctest::Approx((zz * zz / 50) / (1 + zz * zz / 50)));
  CHECK(wilson_upper(3, 40) > 3.0 / 40.0);
}

TEST_CASE("nearest-rank quantile") {
  std::vector<double> v;
  for (int i = 1; i <= 100; ++i) v.push_back(101 - i);
  CHECK(quantile_nearest_rank(v, 0.99) == 99);
  CHECK(quantile_nearest_rank(v, 0.5) == 50);
  CHECK(quantile_nearest_rank(v, 1.0) == 100);
  CHECK(quantile_nearest_rank({7.0}, 0.3) == 7.0);
}

TEST_CASE("ranks and Spearman") {
  const std::vector<double> x{10, 20, 20, 40};
  CHECK(average_ranks(x) == std::vector<double>{1, 2.5, 2.5, 4});
  const std::vector<double> a{1, 2, 3, 4}, b{2, 4, 6, 8}, c{4, 3, 2, 1};
  CHECK(spearman_rho(a, b) == doctest::Approx(1.0));
  CHECK(spearman_rho(a, c) == doctest::Approx(-1.0));
  // perfect increase over 4 points: only the identity permutation reaches rho = 1
  CHECK(spearman_p_greater(a, b) == doctest::Approx(1.0 / 24.0));
  CHECK(spearman_p_greater(a, c) == doctest::Approx(1.0));
}

TEST_CASE("parallel_for covers every index once and propagates errors") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(100, 3,
                               [](std::size_t i) {
                                 if (i == 37) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
  CHECK(resolve_threads(0) >= 1);
  CHECK(resolve_threads(5) == 5);
}

}  // TEST_SUITE
