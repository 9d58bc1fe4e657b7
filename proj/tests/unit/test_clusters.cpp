#include <algorithm>
#include <map>

#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "perc3/clusters.hpp"

using namespace perc3;

namespace {

// {y : T(x, y) <= k} by the reference Dijkstra.
std::vector<Site> travel_ball(const Configuration& cfg, const Region& region, Site x, int k) {
  const auto dist = oracle::dijkstra(cfg, region, x);
  std::vector<Site> out;
  for (auto [i, d] : dist)
    if (d <= k) out.push_back(cfg.site(i));
  return out;
}

std::vector<Site> sorted(std::vector<Site> v) {
  std::sort(v.begin(), v.end(), IndexOrder{});
  return v;
}

std::vector<Site> as_vector(const SiteSet& s) { return sorted({s.begin(), s.end()}); }

}  // namespace

TEST_SUITE("clusters") {

TEST_CASE("labels agree with union-find components") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed)
    for (double p : {0.2, 0.35, 0.6}) {
      const Configuration cfg = sample_configuration(4, p, seed);
      const ClusterLabels labels = label_open_clusters(cfg);
      auto uf = oracle::open_components(cfg);
      std::map<std::size_t, std::int32_t> root_label;
      std::int32_t next = 0;
      std::vector<std::int64_t> sizes;
      for (std::size_t i = 0; i < cfg.size(); ++i) {
        if (!cfg.is_open(i)) {
          CHECK(labels.of(i) == -1);
          continue;
        }
        const std::size_t r = uf.find(i);
        auto [it, fresh] = root_label.emplace(r, next);
        if (fresh) {
          ++next;
          sizes.push_back(0);
        }
        ++sizes[static_cast<std::size_t>(it->second)];
        CHECK(labels.of(i) == it->second);
      }
      CHECK(labels.sizes == sizes);
    }
}

TEST_CASE("open cluster matches the component in a sub-region") {
  const Configuration cfg = sample_configuration(5, 0.45, 21);
  const Region region = BallSpec{{1, 0, -1}, 14};
  for (Site x : region.sites()) {
    if (!cfg.contains(x)) continue;
    const SiteSet c = open_cluster(cfg, region, x);
    if (cfg.is_closed(x)) {
      CHECK(c.empty());
      continue;
    }
    std::vector<Site> ref;
    for (Site y : travel_ball(cfg, region, x, 0)) ref.push_back(y);
    CHECK(as_vector(c) == sorted(ref));
  }
}

TEST_CASE("onion layers are the travel-time balls") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    Configuration cfg = sample_configuration(6, 0.4, seed).with_state({0, 0, 0}, true);
    const Region region = cfg.box();
    const ClusterLayers L = onion_layers(cfg, region, {0, 0, 0}, 4);
    REQUIRE(L.layers.size() == 5);
    REQUIRE(L.shells.size() == 4);
    for (int k = 0; k < static_cast<int>(L.layers.size()); ++k) {
      const auto ref = travel_ball(cfg, region, {0, 0, 0}, k);
      if (!L.truncated || k < L.exact_layers()) CHECK(as_vector(L.layers[static_cast<std::size_t>(k)]) == sorted(ref));
    }
  }
}

TEST_CASE("shells are closed, disjoint from their layer, and nest") {
  const Configuration cfg = sample_configuration(7, 0.5, 3).with_state({0, 0, 0}, true);
  const ClusterLayers L = onion_layers(cfg, cfg.box(), {0, 0, 0}, 5);
  REQUIRE(L.shells.size() + 1 == L.layers.size());
  for (std::size_t k = 0; k < L.shells.size(); ++k) {
    for (Site s : L.shells[k]) {
      CHECK(cfg.is_closed(s));
      for (std::size_t j = 0; j < k; ++j) CHECK_FALSE(L.shells[j].contains(s));
      CHECK_FALSE(L.layers[k].contains(s));
      CHECK(L.layers[k + 1].contains(s));
    }
    for (Site s : L.layers[k]) CHECK(L.layers[k + 1].contains(s));
  }
}

TEST_CASE("onion rejects a closed or outside origin") {
  const Configuration cfg = sample_configuration(3, 0.5, 1).with_state({0, 0, 0}, false);
  CHECK_THROWS_AS(onion_layers(cfg, cfg.box(), {0, 0, 0}, 2), std::invalid_argument);
  CHECK_THROWS_AS(onion_layers(cfg, cfg.box(), {9, 0, 0}, 2), std::invalid_argument);
}

TEST_CASE("boundary reach against the definition and the lazy sampler") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed)
    for (double p : {0.25, 0.31, 0.5}) {
      const int R = 5;
      const Configuration cfg = sample_configuration(R, p, seed);
      bool ref = false;
      if (cfg.is_open({0, 0, 0}))
        for (Site s : open_cluster(cfg, cfg.box(), {0, 0, 0}))
          if (norm_linf(s) == R) ref = true;
      CHECK(reaches_boundary(cfg, R) == ref);
      CHECK(origin_reaches_boundary(p, seed, R) == ref);
    }
  CHECK(origin_reaches_boundary(1.0, 1, 10));
  CHECK_FALSE(origin_reaches_boundary(0.0, 1, 10));
}

}  // TEST_SUITE
