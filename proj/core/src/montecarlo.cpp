#include "perc3/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "perc3/clusters.hpp"
#include "perc3/geometry.hpp"
#include "perc3/parallel.hpp"
#include "perc3/rng.hpp"
#include "perc3/stats.hpp"
#include "perc3/traveltime.hpp"

namespace perc3 {

namespace {

void check_common(double p, std::uint64_t trials) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
}

void check_theta(double theta_hat, double delta) {
  if (!(theta_hat >= 0.0 && theta_hat <= 1.0)) throw std::invalid_argument("theta estimate must lie in [0, 1]");
  if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in [0, 1)");
}

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// Number of samples >= k.
std::uint64_t count_at_least(const std::vector<int>& values, int k) {
  return static_cast<std::uint64_t>(std::count_if(values.begin(), values.end(), [k](int v) { return v >= k; }));
}

double frac(std::uint64_t a, std::uint64_t b) { return static_cast<double>(a) / static_cast<double>(b); }

int min_over_extent(const DistanceField& field, const QuarterSquare& q) {
  int best = kUnreachable;
  for (int z = q.lo.z; z <= q.hi.z; ++z)
    for (int y = q.lo.y; y <= q.hi.y; ++y)
      for (int x = q.lo.x; x <= q.hi.x; ++x) best = std::min(best, field.at({x, y, z}));
  return best;
}

int min_over(const DistanceField& field, const std::vector<Site>& sites) {
  int best = kUnreachable;
  for (Site s : sites) best = std::min(best, field.at(s));
  return best;
}

}  // namespace

ExperimentReport estimate_theta(double p, const std::vector<int>& radii, std::uint64_t trials,
                                std::uint64_t base_seed, unsigned threads) {
  check_common(p, trials);
  if (radii.empty()) throw std::invalid_argument("need at least one radius");
  for (int R : radii)
    if (R < 1) throw std::invalid_argument("radii must be >= 1");
  ExperimentReport rep;
  rep.experiment = "theta";
  rep.set_parameter("p", format_double(p));
  rep.set_parameter("radii", join(radii));
  rep.set_parameter("trials", std::to_string(trials));
  rep.set_parameter("seed", std::to_string(base_seed));
  rep.columns = {"R", "trials", "hits", "theta_hat", "ci_lo", "ci_hi"};
  for (int R : radii) {
    std::vector<std::uint8_t> hit(trials);
    parallel_for(trials, threads,
                 [&](std::size_t i) { hit[i] = origin_reaches_boundary(p, derive_seed(base_seed, i), R) ? 1 : 0; });
    const auto hits = static_cast<std::uint64_t>(std::accumulate(hit.begin(), hit.end(), std::uint64_t{0}));
    const Interval ci = wilson_interval(hits, trials);
    rep.add_row({double(R), double(trials), double(hits), frac(hits, trials), ci.lo, ci.hi});
  }
  return rep;
}

ExperimentReport tail_exit(double p, int m, std::uint64_t trials, std::uint64_t base_seed, double theta_hat,
                           double delta, unsigned threads) {
  check_common(p, trials);
  check_theta(theta_hat, delta);
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  const SiteSet boundary = inner_boundary(lambda_box(m));
  const std::vector<Site> targets(boundary.begin(), boundary.end());
  std::vector<int> times(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    const Configuration cfg = sample_configuration(m, p, derive_seed(base_seed, i));
    TravelEngine engine(cfg);
    times[i] = engine.nearest_in_box({0, 0, 0}, targets).cost;
  });
  const double adjusted = (1.0 - delta) * theta_hat;
  ExperimentReport rep;
  rep.experiment = "tail_exit";
  rep.set_parameter("p", format_double(p));
  rep.set_parameter("m", std::to_string(m));
  rep.set_parameter("trials", std::to_string(trials));
  rep.set_parameter("seed", std::to_string(base_seed));
  rep.set_parameter("theta_hat", format_double(theta_hat));
  rep.set_parameter("delta", format_double(delta));
  rep.set_parameter("theta_adjusted", format_double(adjusted));
  rep.columns = {"k", "survivors", "tail", "ci_lo", "ci_hi", "bound", "within", "eligible"};
  const int kmax = *std::max_element(times.begin(), times.end());
  for (int k = 0; k <= kmax; ++k) {
    const std::uint64_t s = count_at_least(times, k);
    const Interval ci = wilson_interval(s, trials);
    const double tail = frac(s, trials);
    const double bound = std::pow(1.0 - adjusted, k);
    rep.add_row({double(k), double(s), tail, ci.lo, ci.hi, bound, tail <= bound ? 1.0 : 0.0, s >= 100 ? 1.0 : 0.0});
  }
  return rep;
}

ExperimentReport tail_square(double p, int m, std::uint64_t trials, std::uint64_t base_seed, double theta_hat,
                             double delta, double t, unsigned threads) {
  check_common(p, trials);
  check_theta(theta_hat, delta);
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (t < 0.0) throw std::invalid_argument("thickness must be non-negative");
  const BoxSpec box = lambda_box(m);
  const std::vector<QuarterSquare> quarters = [&] {
    std::vector<QuarterSquare> q;
    for (int f = 1; f <= 6; ++f)
      for (int j = 1; j <= 4; ++j) q.push_back(quarter_extent(box, f, j));
    return q;
  }();
  const SiteSet box_boundary = inner_boundary(box);
  const std::vector<Site> exit_targets(box_boundary.begin(), box_boundary.end());
  const std::int64_t r2 = std::int64_t{m} * m;
  const std::vector<std::vector<Site>> triangles = thickened_offsets_all(r2, t);
  const std::vector<Site> ball_boundary = ball_inner_boundary(r2);

  struct Trial {
    std::array<int, 24> square{};
    std::array<int, kTriangleCount> triangle{};
    int exit = 0;
    int ball_exit = 0;
  };
  std::vector<Trial> res(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    const Configuration cfg = sample_configuration(m, p, derive_seed(base_seed, i));
    Trial& tr = res[i];
    {
      const DistanceField field = travel_field(cfg, box, {0, 0, 0});
      for (std::size_t q = 0; q < quarters.size(); ++q) tr.square[q] = min_over_extent(field, quarters[q]);
      tr.exit = min_over(field, exit_targets);
    }
    const DistanceField ball = travel_field(cfg, BallSpec{{0, 0, 0}, r2}, {0, 0, 0});
    for (std::size_t g = 0; g < triangles.size(); ++g) tr.triangle[g] = min_over(ball, triangles[g]);
    tr.ball_exit = min_over(ball, ball_boundary);
  });

  const double adjusted = (1.0 - delta) * theta_hat;
  ExperimentReport rep;
  rep.experiment = "tail_square";
  rep.set_parameter("p", format_double(p));
  rep.set_parameter("m", std::to_string(m));
  rep.set_parameter("trials", std::to_string(trials));
  rep.set_parameter("seed", std::to_string(base_seed));
  rep.set_parameter("theta_hat", format_double(theta_hat));
  rep.set_parameter("delta", format_double(delta));
  rep.set_parameter("theta_adjusted", format_double(adjusted));
  rep.set_parameter("t", format_double(t));
  rep.set_parameter("r_squared", std::to_string(r2));
  rep.columns = {"k",
                 "square_tail", "square_lo", "square_hi", "square_tail_min", "square_tail_max",
                 "exit_tail", "exit_lo", "exit_hi", "square_pow24", "product_ok", "square_bound",
                 "triangle_tail", "triangle_lo", "triangle_hi", "triangle_tail_min", "triangle_tail_max",
                 "ball_exit_tail", "ball_exit_lo", "ball_exit_hi", "triangle_pow48", "triangle_product_ok",
                 "triangle_bound"};

  int kmax = 0;
  for (const Trial& tr : res) {
    kmax = std::max({kmax, tr.exit, tr.ball_exit});
    for (int v : tr.square) kmax = std::max(kmax, v);
    for (int v : tr.triangle)
      if (v != kUnreachable) kmax = std::max(kmax, v);
  }
  auto tail_of = [&](auto&& pick, int k) {
    std::uint64_t c = 0;
    for (const Trial& tr : res) c += pick(tr) >= k ? 1 : 0;
    return c;
  };
  for (int k = 0; k <= kmax; ++k) {
    const std::uint64_t sq = tail_of([](const Trial& tr) { return tr.square[0]; }, k);
    double sq_min = 1.0, sq_max = 0.0;
    for (std::size_t q = 0; q < 24; ++q) {
      const double f = frac(tail_of([q](const Trial& tr) { return tr.square[q]; }, k), trials);
      sq_min = std::min(sq_min, f);
      sq_max = std::max(sq_max, f);
    }
    const std::uint64_t ex = tail_of([](const Trial& tr) { return tr.exit; }, k);
    const std::uint64_t tri = tail_of([](const Trial& tr) { return tr.triangle[0]; }, k);
    double tri_min = 1.0, tri_max = 0.0;
    for (std::size_t g = 0; g < static_cast<std::size_t>(kTriangleCount); ++g) {
      const double f = frac(tail_of([g](const Trial& tr) { return tr.triangle[g]; }, k), trials);
      tri_min = std::min(tri_min, f);
      tri_max = std::max(tri_max, f);
    }
    const std::uint64_t bex = tail_of([](const Trial& tr) { return tr.ball_exit; }, k);
    const Interval sq_ci = wilson_interval(sq, trials), ex_ci = wilson_interval(ex, trials);
    const Interval tri_ci = wilson_interval(tri, trials), bex_ci = wilson_interval(bex, trials);
    const double pow24 = std::pow(frac(sq, trials), 24.0);
    const double pow48 = std::pow(frac(tri, trials), 48.0);
    const bool product_ok = ex_ci.hi >= std::pow(sq_ci.lo, 24.0);
    const bool tri_product_ok = bex_ci.hi >= std::pow(tri_ci.lo, 48.0);
    rep.add_row({double(k),
                 frac(sq, trials), sq_ci.lo, sq_ci.hi, sq_min, sq_max,
                 frac(ex, trials), ex_ci.lo, ex_ci.hi, pow24, product_ok ? 1.0 : 0.0,
                 std::pow(1.0 - adjusted, k / 24.0),
                 frac(tri, trials), tri_ci.lo, tri_ci.hi, tri_min, tri_max,
                 frac(bex, trials), bex_ci.lo, bex_ci.hi, pow48, tri_product_ok ? 1.0 : 0.0,
                 std::pow(1.0 - adjusted, k / 48.0)});
  }
  return rep;
}

ExperimentReport scaling_scan(double p, const ScanOptions& opts, std::uint64_t base_seed, unsigned threads) {
  check_common(p, 1);
  if (opts.sizes.empty()) throw std::invalid_argument("need at least one size");
  if (!std::is_sorted(opts.sizes.begin(), opts.sizes.end()) ||
      std::adjacent_find(opts.sizes.begin(), opts.sizes.end()) != opts.sizes.end())
    throw std::invalid_argument("sizes must be strictly ascending");
  if (opts.sizes.front() < 2) throw std::invalid_argument("sizes must be >= 2");
  if (opts.configs < 1 || opts.pairs < 1) throw std::invalid_argument("configs and pairs must be >= 1");
  if (!(opts.c >= 0.0)) throw std::invalid_argument("budget coefficient must be >= 0");

  struct ConfigResult {
    std::vector<int> exact, constructed;
    int reached = 0;
    int sweep = 0;
  };
  const std::size_t per_n = static_cast<std::size_t>(opts.configs);
  std::vector<ConfigResult> res(opts.sizes.size() * per_n);
  parallel_for(res.size(), threads, [&](std::size_t task) {
    const int n = opts.sizes[task / per_n];
    const std::uint64_t cfg_seed = derive_seed(derive_seed(base_seed, static_cast<std::uint64_t>(n)), task % per_n);
    const Configuration cfg = sample_configuration(n, p, cfg_seed);
    WalkBudget budget = WalkBudget::desk(n, static_cast<int>(std::ceil(opts.c * std::log(double(n)))));
    budget.thickness = opts.thickness;
    budget.contraction = opts.contraction;
    EventOracle oracle(cfg, budget.leg_budget, budget.thickness);
    TravelEngine& engine = oracle.engine();
    SplitMix64 rng(derive_seed(cfg_seed, 1));
    ConfigResult& out = res[task];

    Site far{};
    {
      const DistanceField first = engine.field_in_box(cfg.site(rng.below(cfg.size())));
      far = first.farthest();
      out.sweep = first.max_distance();
    }
    out.sweep = std::max(out.sweep, engine.field_in_box(far).max_distance());

    for (int k = 0; k < opts.pairs; ++k) {
      const Site x = cfg.site(rng.below(cfg.size()));
      const Site y = cfg.site(rng.below(cfg.size()));
      const Site target[1] = {y};
      out.exact.push_back(engine.nearest_in_box(x, target).cost);
      const WalkTrace tr = theorem_path(oracle, x, y, budget);
      out.constructed.push_back(tr.total_cost);
      if (tr.outcome == WalkOutcome::Reached) ++out.reached;
    }
  });

  ExperimentReport rep;
  rep.experiment = "scaling";
  rep.set_parameter("p", format_double(p));
  rep.set_parameter("sizes", join(opts.sizes));
  rep.set_parameter("configs", std::to_string(opts.configs));
  rep.set_parameter("pairs", std::to_string(opts.pairs));
  rep.set_parameter("c", format_double(opts.c));
  rep.set_parameter("t", format_double(opts.thickness));
  rep.set_parameter("lambda", format_double(opts.contraction));
  rep.set_parameter("seed", std::to_string(base_seed));
  rep.columns = {"n", "configs", "pairs", "sampled_max", "pair_max", "pair_q99", "pair_mean", "two_sweep_max",
                 "kappa_hat", "theorem_max", "theorem_mean", "theorem_kappa", "gap_ok", "reached_fraction"};
  for (std::size_t s = 0; s < opts.sizes.size(); ++s) {
    const int n = opts.sizes[s];
    std::vector<double> exact, constructed;
    int sweep = 0, reached = 0;
    bool gap_ok = true;
    for (std::size_t c = 0; c < per_n; ++c) {
      const ConfigResult& r = res[s * per_n + c];
      sweep = std::max(sweep, r.sweep);
      reached += r.reached;
      for (std::size_t i = 0; i < r.exact.size(); ++i) {
        exact.push_back(r.exact[i]);
        constructed.push_back(r.constructed[i]);
        if (r.constructed[i] < r.exact[i]) gap_ok = false;
      }
    }
    const double pair_max = *std::max_element(exact.begin(), exact.end());
    const double sampled_max = std::max(pair_max, double(sweep));
    const double ln2 = std::log(double(n)) * std::log(double(n));
    const double mean = std::accumulate(exact.begin(), exact.end(), 0.0) / double(exact.size());
    const double tmax = *std::max_element(constructed.begin(), constructed.end());
    const double tmean = std::accumulate(constructed.begin(), constructed.end(), 0.0) / double(constructed.size());
    rep.add_row({double(n), double(opts.configs), double(exact.size()), sampled_max, pair_max,
                 quantile_nearest_rank(exact, 0.99), mean, double(sweep), sampled_max / ln2, tmax, tmean, tmax / ln2,
                 gap_ok ? 1.0 : 0.0, double(reached) / double(exact.size())});
  }
  return rep;
}

}  // namespace perc3
