#include "perc3/walks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace perc3 {

namespace {

using nlohmann::ordered_json;

// d(s, F_l(Λ(n))) for face l.
int face_distance(Site s, int n, int face) {
  const FaceDir f = face_dir(face);
  return n - f.sign * s[f.axis];
}

// d(Q, F_l(Λ(n))) for a quarter with inclusive extent [lo, hi].
int face_distance(const QuarterSquare& q, int n, int face) {
  const FaceDir f = face_dir(face);
  return n - (f.sign > 0 ? q.hi[f.axis] : -q.lo[f.axis]);
}

class TraceBuilder {
 public:
  TraceBuilder(Site start, int k) : k_(k) { trace_.waypoints.push_back(start); }

  Site current() const { return trace_.waypoints.back(); }
  int legs() const { return trace_.steps(); }

  void add(const WalkLeg& leg) {
    if (leg.budgeted && leg.cost > k_ && !trace_.failing_leg) trace_.failing_leg = trace_.legs.size();
    trace_.legs.push_back(leg);
    trace_.waypoints.push_back(leg.to);
    trace_.total_cost += leg.cost;
  }

  WalkTrace finish(WalkOutcome outcome, std::string detail = {}) {
    if (outcome == WalkOutcome::Reached && trace_.failing_leg) outcome = WalkOutcome::BudgetExceeded;
    trace_.outcome = outcome;
    trace_.detail = std::move(detail);
    return std::move(trace_);
  }

 private:
  WalkTrace trace_;
  int k_;
};

void check_oracle(const EventOracle& oracle, const WalkBudget& budget) {
  budget.validate();
  if (oracle.thickness() != budget.thickness)
    throw std::invalid_argument("oracle thickness differs from the walk budget");
}

std::string site_text(Site s) {
  std::ostringstream os;
  os << '(' << s.x << ',' << s.y << ',' << s.z << ')';
  return os.str();
}

bool terminal_failure(WalkOutcome o) { return o != WalkOutcome::Reached && o != WalkOutcome::BudgetExceeded; }

ordered_json site_json(Site s) { return ordered_json::array({s.x, s.y, s.z}); }

}  // namespace

WalkBudget WalkBudget::desk(int n, int k) {
  WalkBudget b;
  b.leg_budget = k;
  b.stop_radius = std::min(600.0, n / 8.0);
  return b;
}

void WalkBudget::validate() const {
  if (leg_budget < 0) throw std::invalid_argument("leg budget k must be >= 0");
  if (!(thickness >= 0.0)) throw std::invalid_argument("thickness must be >= 0");
  if (!(contraction > 0.96 && contraction < 1.0)) throw std::invalid_argument("contraction must lie in (0.96, 1)");
  if (!(stop_radius >= 0.0)) throw std::invalid_argument("stop radius must be >= 0");
  if (max_steps < 0) throw std::invalid_argument("max steps must be >= 0");
}

int WalkBudget::step_limit(int n) const {
  if (max_steps > 0) return max_steps;
  return 64 * static_cast<int>(std::ceil(std::log(2.0 * n + 1.0)));
}

const char* to_string(LegKind kind) {
  switch (kind) {
    case LegKind::Adjust: return "adjust";
    case LegKind::Doubling: return "doubling";
    case LegKind::Chain: return "chain";
    case LegKind::Triangle: return "triangle";
    case LegKind::Fallback: return "fallback";
  }
  return "?";
}

const char* to_string(WalkOutcome outcome) {
  switch (outcome) {
    case WalkOutcome::Reached: return "reached";
    case WalkOutcome::BudgetExceeded: return "budget_exceeded";
    case WalkOutcome::StepLimit: return "step_limit";
    case WalkOutcome::ContractionViolated: return "contraction_violated";
    case WalkOutcome::NoFeasibleQuadrant: return "no_feasible_quadrant";
  }
  return "?";
}

std::vector<int> WalkTrace::leg_costs() const {
  std::vector<int> out;
  out.reserve(legs.size());
  for (const WalkLeg& l : legs) out.push_back(l.cost);
  return out;
}

std::string WalkTrace::to_json() const {
  ordered_json j;
  ordered_json wp = ordered_json::array();
  for (Site s : waypoints) wp.push_back(site_json(s));
  j["waypoints"] = wp;
  ordered_json legs_json = ordered_json::array();
  for (const WalkLeg& l : legs) {
    ordered_json lj;
    lj["kind"] = to_string(l.kind);
    lj["from"] = site_json(l.from);
    lj["to"] = site_json(l.to);
    lj["cost"] = l.cost;
    lj["budgeted"] = l.budgeted;
    if (l.face) {
      lj["half_side"] = l.face->half_side;
      lj["face"] = l.face->face;
      lj["quadrant"] = l.face->quadrant;
    }
    if (l.triangle) {
      lj["r_squared"] = l.triangle->r_squared;
      lj["triangle"] = l.triangle->triangle;
      lj["ball_contained"] = l.ball_contained;
      lj["guaranteed"] = l.guaranteed;
    }
    legs_json.push_back(lj);
  }
  j["legs"] = legs_json;
  j["leg_costs"] = leg_costs();
  j["total_cost"] = total_cost;
  j["steps"] = steps();
  j["outcome"] = to_string(outcome);
  j["failing_leg"] = failing_leg ? ordered_json(*failing_leg) : ordered_json(nullptr);
  if (!detail.empty()) j["detail"] = detail;
  return j.dump(2);
}

// ---------------------------------------------------------------------------

WalkTrace cube_walk(EventOracle& oracle, Site x, const WalkBudget& budget) {
  check_oracle(oracle, budget);
  const Configuration& cfg = oracle.config();
  const int n = cfg.n();
  if (!cfg.contains(x)) throw std::invalid_argument("cube_walk: start outside Λ(n)");
  TraceBuilder tb(x, budget.leg_budget);
  const int limit = budget.step_limit(n);
  TravelEngine& engine = oracle.engine();

  Site y = x;
  if (n >= 1 && norm_linf(y) == n) {
    Site y1 = y;
    for (int a = 0; a < 3; ++a) y1[a] = std::clamp(y1[a], -(n - 1), n - 1);
    const Site target[1] = {y1};
    WalkLeg leg;
    leg.kind = LegKind::Adjust;
    leg.from = y;
    leg.to = y1;
    leg.cost = engine.nearest_in_box(y, target).cost;
    tb.add(leg);
    y = y1;
  }

  while (!in_scaled_box(y, n, 3, 4)) {
    if (tb.legs() >= limit) return tb.finish(WalkOutcome::StepLimit);
    const int g = n - norm_linf(y);
    int h = 1;
    for (int l = 1; l <= 6; ++l)
      if (face_distance(y, n, l) == g) {
        h = l;
        break;
      }
    const int i = opposite_face(h);
    const BoxSpec gamma{y, g};
    int chosen = 0;
    for (int j = 1; j <= 4 && chosen == 0; ++j) {
      const QuarterSquare q = quarter_extent(gamma, i, j);
      bool ok = true;
      for (int l = 1; l <= 6 && ok; ++l) {
        const int dy = face_distance(y, n, l);
        if (dy < n && face_distance(q, n, l) < dy) ok = false;
      }
      if (ok) chosen = j;
    }
    if (chosen == 0) {
      std::ostringstream os;
      os << "no quadrant of face " << i << " of " << site_text(y) << "+Λ(" << g << ") keeps the near-face distances";
      return tb.finish(WalkOutcome::NoFeasibleQuadrant, os.str());
    }
    const FaceQuery fq{y, g, i, chosen};
    const SetHit hit = oracle.face(fq);
    WalkLeg leg;
    leg.kind = LegKind::Doubling;
    leg.from = y;
    leg.to = hit.hit;
    leg.cost = hit.cost;
    leg.budgeted = true;
    leg.face = fq;
    tb.add(leg);
    y = hit.hit;
  }

  const int hop = std::max(1, (n + 5) / 6);
  while (!in_scaled_box(y, n, 1, 4)) {
    if (tb.legs() >= limit) return tb.finish(WalkOutcome::StepLimit);
    int a = 0;
    for (int b = 1; b < 3; ++b)
      if (std::abs(y[b]) > std::abs(y[a])) a = b;
    const int s = y[a] > 0 ? 1 : -1;
    const int face = face_index(a, -s);
    const auto plane = face_plane_axes(a);
    int bits = 0;
    for (int kk = 0; kk < 2; ++kk)
      if (y[plane[static_cast<std::size_t>(kk)]] > 0) bits |= 1 << kk;
    const int m = std::max(1, std::min(hop, n - norm_linf(y)));
    const FaceQuery fq{y, m, face, bits + 1};
    const SetHit hit = oracle.face(fq);
    WalkLeg leg;
    leg.kind = LegKind::Chain;
    leg.from = y;
    leg.to = hit.hit;
    leg.cost = hit.cost;
    leg.budgeted = true;
    leg.face = fq;
    tb.add(leg);
    y = hit.hit;
  }
  return tb.finish(WalkOutcome::Reached);
}

WalkTrace cube_walk(const Configuration& config, Site x, const WalkBudget& budget) {
  budget.validate();
  EventOracle oracle(config, budget.leg_budget, budget.thickness);
  return cube_walk(oracle, x, budget);
}

WalkTrace sphere_walk(EventOracle& oracle, Site x, Site y, const WalkBudget& budget) {
  check_oracle(oracle, budget);
  const Configuration& cfg = oracle.config();
  const int n = cfg.n();
  if (!in_scaled_box(x, n, 1, 4) || !in_scaled_box(y, n, 1, 4))
    throw std::invalid_argument("sphere_walk: endpoints must lie in Λ(n/4)");
  TraceBuilder tb(x, budget.leg_budget);
  const int limit = budget.step_limit(n);
  const double rmin = budget.r_min();
  const double lambda2 = budget.contraction * budget.contraction;
  TravelEngine& engine = oracle.engine();

  auto fallback = [&](Site from) {
    const Site target[1] = {y};
    WalkLeg leg;
    leg.kind = LegKind::Fallback;
    leg.from = from;
    leg.to = y;
    leg.cost = engine.nearest_in_box(from, target).cost;
    leg.radius = std::sqrt(static_cast<double>(norm2(y - from)));
    tb.add(leg);
  };

  Site cur = x;
  for (;;) {
    const std::int64_t r2 = norm2(y - cur);
    const double r = std::sqrt(static_cast<double>(r2));
    if (r2 == 0 || r < budget.stop_radius) {
      if (!(cur == y && tb.legs() > 0)) fallback(cur);
      break;
    }
    if (tb.legs() >= limit) return tb.finish(WalkOutcome::StepLimit);
    const CanonicalDirection dir = canonicalize_direction(to_vec(y - cur));
    const TriangleQuery tq{cur, r2, dir.triangle.ordinal()};
    const SetHit hit = oracle.triangle(tq);
    if (!hit.reachable()) throw std::logic_error("sphere_walk: target containing y is unreachable");
    WalkLeg leg;
    leg.kind = LegKind::Triangle;
    leg.from = cur;
    leg.to = hit.hit;
    leg.cost = hit.cost;
    leg.budgeted = true;
    leg.triangle = tq;
    leg.radius = r;
    leg.ball_contained = norm_linf(cur) + static_cast<int>(isqrt(r2)) <= n;
    leg.guaranteed = r >= rmin;
    const auto next2 = static_cast<double>(norm2(y - hit.hit));
    if (leg.guaranteed && next2 > lambda2 * static_cast<double>(r2) * (1.0 + 1e-12)) {
      tb.add(leg);
      std::ostringstream os;
      os << "hop " << site_text(cur) << " -> " << site_text(hit.hit) << " at radius " << r
         << " does not contract by " << budget.contraction;
      return tb.finish(WalkOutcome::ContractionViolated, os.str());
    }
    if (!leg.guaranteed && next2 >= static_cast<double>(r2)) {
      fallback(cur);
      break;
    }
    tb.add(leg);
    cur = hit.hit;
  }
  return tb.finish(WalkOutcome::Reached);
}

WalkTrace sphere_walk(const Configuration& config, Site x, Site y, const WalkBudget& budget) {
  budget.validate();
  EventOracle oracle(config, budget.leg_budget, budget.thickness);
  return sphere_walk(oracle, x, y, budget);
}

WalkTrace theorem_path(EventOracle& oracle, Site x, Site y, const WalkBudget& budget) {
  check_oracle(oracle, budget);
  const Configuration& cfg = oracle.config();
  if (!cfg.contains(x) || !cfg.contains(y)) throw std::invalid_argument("theorem_path: endpoints outside Λ(n)");
  TraceBuilder tb(x, budget.leg_budget);

  const WalkTrace tx = cube_walk(oracle, x, budget);
  for (const WalkLeg& l : tx.legs) tb.add(l);
  if (terminal_failure(tx.outcome)) return tb.finish(tx.outcome, "from x: " + tx.detail);

  const WalkTrace ty = cube_walk(oracle, y, budget);
  if (terminal_failure(ty.outcome)) return tb.finish(ty.outcome, "from y: " + ty.detail);

  const WalkTrace ts = sphere_walk(oracle, tx.waypoints.back(), ty.waypoints.back(), budget);
  for (const WalkLeg& l : ts.legs) tb.add(l);
  if (terminal_failure(ts.outcome)) return tb.finish(ts.outcome, "sphere: " + ts.detail);

  for (auto it = ty.legs.rbegin(); it != ty.legs.rend(); ++it) {
    WalkLeg l = *it;
    std::swap(l.from, l.to);
    tb.add(l);
  }
  return tb.finish(WalkOutcome::Reached);
}

WalkTrace theorem_path(const Configuration& config, Site x, Site y, const WalkBudget& budget) {
  budget.validate();
  EventOracle oracle(config, budget.leg_budget, budget.thickness);
  return theorem_path(oracle, x, y, budget);
}

}  // namespace perc3
