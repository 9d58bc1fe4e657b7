#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "CLI11.hpp"
#include "perc3/config_io.hpp"
#include "perc3/events.hpp"
#include "perc3/geometry.hpp"
#include "perc3/montecarlo.hpp"
#include "perc3/report.hpp"
#include "perc3/rng.hpp"
#include "perc3/walks.hpp"

namespace perc3::cli {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int n = 16;
  double p = 0.6;
  std::uint64_t seed = 1;
  std::string in;
  std::string out = "-";
  std::string format = "csv";
  unsigned threads = 0;
  std::string config;

  std::uint64_t trials = 10000;
  std::string radii = "10,20,40";
  std::string theta;
  int theta_r = 40;
  std::uint64_t theta_trials = 10000;
  double delta = 0.1;
  double t = 3.0;

  int k = -1;
  double c = 2.0;
  std::string mode = "exhaustive";
  std::uint64_t samples = 100;
  std::uint64_t sample_seed = 1;
  std::string x, y;
  int m = 1, face = 1, quadrant = 1;
  std::int64_t r2 = 1;
  int triangle = 0;

  double lambda = 0.97;
  double stop_radius = -1.0;
  int max_steps = 0;

  std::string sizes = "16,32,64,128";
  int configs = 50;
  int pairs = 20;

  std::int64_t rmin_squared = 1;
  std::int64_t rmax_squared = 10000;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("malformed ") + what + ": '" + s + "'");
  }
}

std::vector<int> parse_list(const std::string& s, const char* what) {
  std::vector<int> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_int(part, what));
  if (out.empty()) throw std::invalid_argument(std::string("empty ") + what);
  return out;
}

Site parse_site(const std::string& s, const char* what) {
  const auto v = parse_list(s, what);
  if (v.size() != 3) throw std::invalid_argument(std::string(what) + " needs three comma-separated integers");
  return {v[0], v[1], v[2]};
}

// Canonical flag string of a parsed subcommand: every valued option with its
// final value, in declaration order. Output-only options are left out.
std::string canonical_args(const CLI::App* sub) {
  std::string out = sub->get_name();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty() || opt->get_expected_min() == 0) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "threads" || name == "out" || name == "format" || name == "config") continue;
    const std::string value = opt->count() > 0 ? opt->results().back() : opt->get_default_str();
    if (value.empty()) continue;
    out += " --" + name + " " + value;
  }
  return out;
}

void emit_text(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out == "-") {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw IoError("cannot open " + o.out + " for writing");
  f << text;
  if (!f) throw IoError("failed writing " + o.out);
}

void emit(const ExperimentReport& rep, const Options& o, std::ostream& out) {
  emit_text(o.format == "csv" ? rep.to_csv() : rep.to_json(), o, out);
}

Configuration obtain_configuration(const Options& o, ExperimentReport& rep) {
  Configuration cfg;
  if (!o.in.empty()) {
    try {
      cfg = load_configuration(o.in);
    } catch (const std::system_error& e) {
      throw IoError(e.what());
    } catch (const FormatError& e) {
      throw IoError(o.in + ": " + e.what());
    }
  } else {
    if (o.n < 1) throw std::invalid_argument("n must be >= 1");
    cfg = sample_configuration(o.n, o.p, o.seed);
  }
  rep.set_parameter("n", std::to_string(cfg.n()));
  rep.set_parameter("p", format_double(cfg.p()));
  rep.set_parameter("seed", std::to_string(cfg.seed()));
  return cfg;
}

int leg_budget(const Options& o, int n) {
  if (o.k >= 0) return o.k;
  if (!(o.c >= 0.0)) throw std::invalid_argument("c must be >= 0");
  return n > 1 ? static_cast<int>(std::ceil(o.c * std::log(double(n)))) : 0;
}

double theta_value(const Options& o, ExperimentReport& rep, unsigned threads) {
  if (!o.theta.empty()) {
    rep.set_parameter("theta_source", "given");
    return std::stod(o.theta);
  }
  const ExperimentReport est = estimate_theta(o.p, {o.theta_r}, o.theta_trials, derive_seed(o.seed, 1), threads);
  rep.set_parameter("theta_source", "estimated");
  return est.at(0, "theta_hat");
}

void finish_params(ExperimentReport& rep, const CLI::App* sub) { rep.set_parameter("args", canonical_args(sub)); }

// ---------------------------------------------------------------------------

ExperimentReport event_table(const EventReport& ev, const std::string& name) {
  ExperimentReport rep;
  rep.experiment = name;
  rep.columns = {"holds", "checks_performed", "subshapes_checked", "centers_checked", "violating_centers",
                 "max_travel_time", "violation_upper_bound", "has_violation", "center_x", "center_y", "center_z",
                 "half_side", "face", "quadrant", "r_squared", "triangle", "travel_time", "hit_x", "hit_y", "hit_z"};
  std::vector<double> row{ev.holds ? 1.0 : 0.0,
                          double(ev.checks_performed),
                          double(ev.subshapes_checked),
                          double(ev.centers_checked),
                          double(ev.violating_centers),
                          double(ev.max_travel_time),
                          ev.violation_upper_bound ? *ev.violation_upper_bound : -1.0,
                          ev.violation ? 1.0 : 0.0};
  if (ev.violation) {
    const EventWitness& w = *ev.violation;
    row.insert(row.end(), {double(w.center.x), double(w.center.y), double(w.center.z)});
    row.insert(row.end(), {w.face ? double(w.face->half_side) : 0.0, w.face ? double(w.face->face) : 0.0,
                           w.face ? double(w.face->quadrant) : 0.0});
    row.insert(row.end(), {w.triangle ? double(w.triangle->r_squared) : 0.0,
                           w.triangle ? double(w.triangle->triangle) : 0.0});
    row.push_back(w.travel_time == kUnreachable ? -1.0 : double(w.travel_time));
    const Site h = w.hit.value_or(Site{});
    row.insert(row.end(), {double(h.x), double(h.y), double(h.z)});
  } else {
    row.resize(rep.columns.size(), 0.0);
    row[rep.column("travel_time")] = -1.0;
  }
  rep.add_row(std::move(row));
  if (ev.mode.kind == CheckMode::Sampled) {
    rep.confidence_method = "wilson_one_sided";
    rep.confidence_level = 0.95;
  } else {
    rep.confidence_method = "none";
    rep.confidence_level = 1.0;
  }
  return rep;
}

ExperimentReport walk_table(const WalkTrace& tr, const std::string& name) {
  ExperimentReport rep;
  rep.experiment = name;
  rep.confidence_method = "none";
  rep.confidence_level = 1.0;
  rep.columns = {"leg", "kind", "from_x", "from_y", "from_z", "to_x", "to_y", "to_z", "cost", "budgeted",
                 "half_side", "face", "quadrant", "r_squared", "triangle", "radius", "ball_contained", "guaranteed"};
  for (std::size_t i = 0; i < tr.legs.size(); ++i) {
    const WalkLeg& l = tr.legs[i];
    rep.add_row({double(i), double(static_cast<int>(l.kind)), double(l.from.x), double(l.from.y), double(l.from.z),
                 double(l.to.x), double(l.to.y), double(l.to.z), double(l.cost), l.budgeted ? 1.0 : 0.0,
                 l.face ? double(l.face->half_side) : 0.0, l.face ? double(l.face->face) : 0.0,
                 l.face ? double(l.face->quadrant) : 0.0, l.triangle ? double(l.triangle->r_squared) : 0.0,
                 l.triangle ? double(l.triangle->triangle) : 0.0, l.radius, l.ball_contained ? 1.0 : 0.0,
                 l.guaranteed ? 1.0 : 0.0});
  }
  return rep;
}

void walk_summary(ExperimentReport& rep, const WalkTrace& tr) {
  rep.set_parameter("outcome", to_string(tr.outcome));
  rep.set_parameter("total_cost", std::to_string(tr.total_cost));
  rep.set_parameter("steps", std::to_string(tr.steps()));
  rep.set_parameter("failing_leg", tr.failing_leg ? std::to_string(*tr.failing_leg) : "none");
  if (!tr.detail.empty()) rep.set_parameter("detail", tr.detail);
}

WalkBudget walk_budget(const Options& o, int n, ExperimentReport& rep) {
  WalkBudget b = WalkBudget::desk(n, leg_budget(o, n));
  b.thickness = o.t;
  b.contraction = o.lambda;
  if (o.stop_radius >= 0.0) b.stop_radius = o.stop_radius;
  b.max_steps = o.max_steps;
  b.validate();
  rep.set_parameter("k", std::to_string(b.leg_budget));
  rep.set_parameter("t", format_double(b.thickness));
  rep.set_parameter("lambda", format_double(b.contraction));
  rep.set_parameter("stop_radius", format_double(b.stop_radius));
  rep.set_parameter("max_steps", std::to_string(b.step_limit(n)));
  return b;
}

// ---------------------------------------------------------------------------

int cmd_sample(const Options& o, std::ostream& out) {
  if (o.n < 1) throw std::invalid_argument("n must be >= 1");
  const Configuration cfg = sample_configuration(o.n, o.p, o.seed);
  std::ostringstream bytes;
  write_configuration(bytes, cfg);
  emit_text(bytes.str(), o, out);
  return kOk;
}

int cmd_theta(const Options& o, const CLI::App* sub, std::ostream& out) {
  ExperimentReport rep = estimate_theta(o.p, parse_list(o.radii, "radii"), o.trials, o.seed, o.threads);
  finish_params(rep, sub);
  emit(rep, o, out);
  return kOk;
}

int cmd_tail_exit(const Options& o, const CLI::App* sub, std::ostream& out) {
  ExperimentReport tmp;
  const double theta = theta_value(o, tmp, o.threads);
  ExperimentReport rep = tail_exit(o.p, o.n, o.trials, o.seed, theta, o.delta, o.threads);
  rep.set_parameter("theta_source", *tmp.parameter("theta_source"));
  finish_params(rep, sub);
  emit(rep, o, out);
  return kOk;
}

int cmd_tail_square(const Options& o, const CLI::App* sub, std::ostream& out) {
  ExperimentReport tmp;
  const double theta = theta_value(o, tmp, o.threads);
  ExperimentReport rep = tail_square(o.p, o.n, o.trials, o.seed, theta, o.delta, o.t, o.threads);
  rep.set_parameter("theta_source", *tmp.parameter("theta_source"));
  finish_params(rep, sub);
  emit(rep, o, out);
  return kOk;
}

int cmd_check(EventKind kind, const Options& o, const CLI::App* sub, std::ostream& out) {
  ExperimentReport params;
  const Configuration cfg = obtain_configuration(o, params);
  const int k = leg_budget(o, cfg.n());
  EventReport ev;
  if (o.mode == "on-demand") {
    if (o.x.empty()) throw std::invalid_argument("on-demand mode needs --x");
    const Site x = parse_site(o.x, "--x");
    EventOracle oracle(cfg, k, o.t);
    if (kind == EventKind::E) {
      if (o.m < 1 || !cfg.box().contains(x) || norm_linf(x) + o.m > cfg.n())
        throw std::invalid_argument("--x/--m must describe a box inside Λ(n)");
      oracle.face(FaceQuery{x, o.m, o.face, o.quadrant});
    } else {
      if (!is_sum_of_three_squares(o.r2) || o.r2 < 1) throw std::invalid_argument("--r2 must be admissible");
      if (o.triangle < 0 || o.triangle >= kTriangleCount) throw std::invalid_argument("--triangle must be in 0..47");
      oracle.triangle(TriangleQuery{x, o.r2, o.triangle});
    }
    ev = oracle.report(kind);
    ev.centers_checked = 1;
    ev.violating_centers = ev.holds ? 0 : 1;
  } else {
    const EventMode mode =
        o.mode == "sampled" ? EventMode::sampled(o.samples, o.sample_seed) : EventMode::exhaustive();
    ev = kind == EventKind::E ? check_event_E(cfg, k, mode, o.threads) : check_event_F(cfg, k, mode, o.t, o.threads);
  }
  ExperimentReport rep = event_table(ev, kind == EventKind::E ? "check_e" : "check_f");
  rep.parameters = params.parameters;
  rep.set_parameter("k", std::to_string(k));
  rep.set_parameter("mode", o.mode);
  if (kind == EventKind::F) rep.set_parameter("t", format_double(o.t));
  rep.set_parameter("holds", ev.holds ? "true" : "false");
  finish_params(rep, sub);
  emit(rep, o, out);
  return ev.holds ? kOk : kViolation;
}

int cmd_walk(const std::string& which, const Options& o, const CLI::App* sub, std::ostream& out) {
  ExperimentReport params;
  const Configuration cfg = obtain_configuration(o, params);
  const int n = cfg.n();
  const WalkBudget budget = walk_budget(o, n, params);
  const Site x = o.x.empty() ? Site{n, n, n} : parse_site(o.x, "--x");
  if (!cfg.contains(x)) throw std::invalid_argument("--x outside Λ(n)");
  WalkTrace tr;
  EventOracle oracle(cfg, budget.leg_budget, budget.thickness);
  if (which == "walk_cube") {
    tr = cube_walk(oracle, x, budget);
  } else {
    if (o.y.empty()) throw std::invalid_argument("this walk needs --y");
    const Site y = parse_site(o.y, "--y");
    if (!cfg.contains(y)) throw std::invalid_argument("--y outside Λ(n)");
    tr = which == "walk_sphere" ? sphere_walk(oracle, x, y, budget) : theorem_path(oracle, x, y, budget);
  }
  ExperimentReport rep = walk_table(tr, which);
  rep.parameters = params.parameters;
  walk_summary(rep, tr);
  finish_params(rep, sub);
  emit(rep, o, out);
  return tr.outcome == WalkOutcome::Reached ? kOk : kViolation;
}

int cmd_scaling(const Options& o, const CLI::App* sub, std::ostream& out) {
  ScanOptions so;
  so.sizes = parse_list(o.sizes, "sizes");
  so.configs = o.configs;
  so.pairs = o.pairs;
  so.c = o.c;
  so.thickness = o.t;
  so.contraction = o.lambda;
  ExperimentReport rep = scaling_scan(o.p, so, o.seed, o.threads);
  finish_params(rep, sub);
  emit(rep, o, out);
  return kOk;
}

int cmd_coverage(const Options& o, const CLI::App* sub, std::ostream& out) {
  if (o.rmin_squared < 1 || o.rmax_squared < o.rmin_squared)
    throw std::invalid_argument("need 1 <= rmin-squared <= rmax-squared");
  if (!(o.t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  const CoverageResult res = coverage_check_range(o.rmin_squared, o.rmax_squared, o.t, o.threads);
  ExperimentReport rep;
  rep.experiment = "coverage";
  rep.confidence_method = "none";
  rep.confidence_level = 1.0;
  rep.set_parameter("t", format_double(o.t));
  rep.set_parameter("rmin_squared", std::to_string(o.rmin_squared));
  rep.set_parameter("rmax_squared", std::to_string(o.rmax_squared));
  rep.set_parameter("holds", res.holds ? "true" : "false");
  rep.columns = {"radii_checked", "sites_checked", "holds", "failing_r_squared", "witness_x", "witness_y",
                 "witness_z"};
  const Site w = res.witness.value_or(Site{});
  rep.add_row({double(res.radii_checked), double(res.sites_checked), res.holds ? 1.0 : 0.0,
               res.failing_r_squared ? double(*res.failing_r_squared) : -1.0, double(w.x), double(w.y),
               double(w.z)});
  finish_params(rep, sub);
  emit(rep, o, out);
  return res.holds ? kOk : kViolation;
}

// ---------------------------------------------------------------------------

struct Command {
  CLI::App* app;
  Options opts;
};

void add_output(CLI::App* s, Options& o) {
  s->add_option("--out", o.out, "Output path, '-' for stdout");
  s->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  s->add_option("--threads", o.threads, "Worker threads (0 = all hardware threads)");
  s->add_option("--config", o.config, "key=value file or report header read as flags; flags win");
}

void add_model(CLI::App* s, Options& o, bool with_in) {
  s->add_option("--n", o.n, "Half-side of Λ(n)");
  s->add_option("--p", o.p, "Open-site probability")->check(CLI::Range(0.0, 1.0));
  s->add_option("--seed", o.seed, "Configuration or base seed");
  if (with_in) s->add_option("--in", o.in, "Read the configuration from a .perc file instead of sampling");
}

void add_theta(CLI::App* s, Options& o) {
  s->add_option("--trials", o.trials, "Trials")->check(CLI::PositiveNumber);
  s->add_option("--theta", o.theta, "θ estimate; estimated from --theta-r/--theta-trials when absent");
  s->add_option("--theta-r", o.theta_r, "Box half-side for the θ estimate")->check(CLI::PositiveNumber);
  s->add_option("--theta-trials", o.theta_trials, "Trials for the θ estimate")->check(CLI::PositiveNumber);
  s->add_option("--delta", o.delta, "Slack δ on θ̂")->check(CLI::Range(0.0, 0.999999));
}

void add_budget(CLI::App* s, Options& o) {
  s->add_option("--k", o.k, "Leg budget k (default ceil(c ln n))");
  s->add_option("--c", o.c, "Budget coefficient c");
}

void add_walk(CLI::App* s, Options& o) {
  add_budget(s, o);
  s->add_option("--t", o.t, "Target thickness");
  s->add_option("--lambda", o.lambda, "Contraction factor λ");
  s->add_option("--stop-radius", o.stop_radius, "Fallback radius (default min(600, n/8))");
  s->add_option("--max-steps", o.max_steps, "Step guard (0 = 64 ceil(ln(2n+1)))");
  s->add_option("--x", o.x, "Start site x,y,z");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<std::string> config_tokens(const std::string& text) {
  std::vector<std::string> pairs;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t#");
    if (start == std::string::npos) continue;
    line = line.substr(start);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    value.erase(0, value.find_first_not_of(" \t"));
    if (key == "args") {
      std::vector<std::string> tokens;
      std::istringstream ts(value);
      for (std::string tok; ts >> tok;) tokens.push_back(tok);
      if (!tokens.empty() && tokens.front().rfind("--", 0) != 0) tokens.erase(tokens.begin());
      return tokens;
    }
    pairs.push_back("--" + key);
    pairs.push_back(value);
  }
  return pairs;
}

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Site-percolation travel times: sampling, event checks, waypoint walks and Monte Carlo reports",
               "perc3"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::map<std::string, Command> cmds;
  auto make = [&](const std::string& name, const std::string& help) -> Command& {
    Command& c = cmds[name];
    return c = Command{app.add_subcommand(name, help), Options{}}, c;
  };

  {
    Command& c = make("sample", "Sample a configuration and write it as .perc");
    add_model(c.app, c.opts, false);
    add_output(c.app, c.opts);
  }
  {
    Command& c = make("theta", "Estimate θ(p) by the boundary-reaching proxy");
    c.app->add_option("--p", c.opts.p, "Open-site probability")->check(CLI::Range(0.0, 1.0));
    c.app->add_option("--seed", c.opts.seed, "Base seed");
    c.app->add_option("--radii", c.opts.radii, "Box half-sides R, comma-separated");
    c.app->add_option("--trials", c.opts.trials, "Trials per R")->check(CLI::PositiveNumber);
    add_output(c.app, c.opts);
  }
  {
    Command& c = make("tail-exit", "Exit-time tail against (1 - (1-δ)θ̂)^k");
    c.opts.n = 20;
    add_model(c.app, c.opts, false);
    add_theta(c.app, c.opts);
    add_output(c.app, c.opts);
  }
  {
    Command& c = make("tail-square", "Per-quarter and per-triangle tails beside the exit tails");
    c.opts.n = 16;
    add_model(c.app, c.opts, false);
    add_theta(c.app, c.opts);
    c.app->add_option("--t", c.opts.t, "Target thickness");
    add_output(c.app, c.opts);
  }
  for (const char* name : {"check-e", "check-f"}) {
    const bool f = std::string(name) == "check-f";
    Command& c = make(name, f ? "Check the ball event (48 thickened targets per ball)"
                              : "Check the box event (24 quarter squares per box)");
    c.opts.n = 6;
    add_model(c.app, c.opts, true);
    add_budget(c.app, c.opts);
    c.app->add_option("--mode", c.opts.mode, "Check mode")
        ->check(CLI::IsMember({"exhaustive", "sampled", "on-demand"}));
    c.app->add_option("--samples", c.opts.samples, "Sampled centers")->check(CLI::PositiveNumber);
    c.app->add_option("--sample-seed", c.opts.sample_seed, "Seed for sampled centers");
    c.app->add_option("--x", c.opts.x, "On-demand center x,y,z");
    if (f) {
      c.app->add_option("--t", c.opts.t, "Target thickness");
      c.app->add_option("--r2", c.opts.r2, "On-demand squared radius");
      c.app->add_option("--triangle", c.opts.triangle, "On-demand triangle ordinal 0..47");
    } else {
      c.app->add_option("--m", c.opts.m, "On-demand box half-side");
      c.app->add_option("--face", c.opts.face, "On-demand face 1..6")->check(CLI::Range(1, 6));
      c.app->add_option("--quadrant", c.opts.quadrant, "On-demand quadrant 1..4")->check(CLI::Range(1, 4));
    }
    add_output(c.app, c.opts);
  }
  for (const char* name : {"walk-cube", "walk-sphere", "theorem-path"}) {
    Command& c = make(name, std::string(name) == "walk-cube"      ? "Outward-doubling walk into Λ(n/4)"
                            : std::string(name) == "walk-sphere" ? "Geometric walk between two sites of Λ(n/4)"
                                                                 : "Full constructive path x -> y");
    c.opts.n = 64;
    add_model(c.app, c.opts, true);
    add_walk(c.app, c.opts);
    if (std::string(name) != "walk-cube") c.app->add_option("--y", c.opts.y, "End site x,y,z");
    add_output(c.app, c.opts);
  }
  {
    Command& c = make("scaling", "Travel-time maxima over n against (ln n)^2");
    c.app->add_option("--p", c.opts.p, "Open-site probability")->check(CLI::Range(0.0, 1.0));
    c.app->add_option("--seed", c.opts.seed, "Base seed");
    c.app->add_option("--sizes", c.opts.sizes, "Values of n, ascending, comma-separated");
    c.app->add_option("--configs", c.opts.configs, "Configurations per n")->check(CLI::PositiveNumber);
    c.app->add_option("--pairs", c.opts.pairs, "Random pairs per configuration")->check(CLI::PositiveNumber);
    c.app->add_option("--c", c.opts.c, "theorem_path budget coefficient");
    c.app->add_option("--t", c.opts.t, "Target thickness");
    c.app->add_option("--lambda", c.opts.lambda, "Contraction factor λ");
    add_output(c.app, c.opts);
  }
  {
    Command& c = make("coverage", "Check that the 48 thickened targets cover every ball boundary");
    c.app->add_option("--t", c.opts.t, "Target thickness");
    c.app->add_option("--rmin-squared", c.opts.rmin_squared, "Smallest r^2");
    c.app->add_option("--rmax-squared", c.opts.rmax_squared, "Largest r^2");
    add_output(c.app, c.opts);
  }

  // --config contents go right after the subcommand so explicit flags win.
  std::vector<std::string> args = args_in;
  try {
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string path;
      if (args[i] == "--config" && i + 1 < args.size()) {
        path = args[i + 1];
      } else if (args[i].rfind("--config=", 0) == 0) {
        path = args[i].substr(9);
      } else {
        continue;
      }
      const auto tokens = config_tokens(read_file(path));
      const auto sub_pos = std::find_if(args.begin(), args.end(), [&](const std::string& a) { return cmds.count(a); });
      if (sub_pos == args.end()) break;
      args.insert(sub_pos + 1, tokens.begin(), tokens.end());
      break;
    }
  } catch (const IoError& e) {
    err << "perc3: " << e.what() << '\n';
    return kIo;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "perc3: " << e.what() << '\n';
    return kValidation;
  }

  try {
    for (auto& [name, cmd] : cmds) {
      if (!cmd.app->parsed()) continue;
      const Options& o = cmd.opts;
      const CLI::App* sub = cmd.app;
      if (name == "sample") return cmd_sample(o, out);
      if (name == "theta") return cmd_theta(o, sub, out);
      if (name == "tail-exit") return cmd_tail_exit(o, sub, out);
      if (name == "tail-square") return cmd_tail_square(o, sub, out);
      if (name == "check-e") return cmd_check(EventKind::E, o, sub, out);
      if (name == "check-f") return cmd_check(EventKind::F, o, sub, out);
      if (name == "walk-cube") return cmd_walk("walk_cube", o, sub, out);
      if (name == "walk-sphere") return cmd_walk("walk_sphere", o, sub, out);
      if (name == "theorem-path") return cmd_walk("theorem_path", o, sub, out);
      if (name == "scaling") return cmd_scaling(o, sub, out);
      if (name == "coverage") return cmd_coverage(o, sub, out);
    }
  } catch (const IoError& e) {
    err << "perc3: " << e.what() << '\n';
    return kIo;
  } catch (const std::system_error& e) {
    err << "perc3: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    err << "perc3: " << e.what() << '\n';
    return kValidation;
  } catch (const std::out_of_range& e) {
    err << "perc3: value out of range: " << e.what() << '\n';
    return kValidation;
  }
  err << "perc3: no subcommand\n";
  return kValidation;
}

}  // namespace perc3::cli
