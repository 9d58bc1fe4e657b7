#include "perc3/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace perc3 {

namespace {

constexpr std::array<std::array<std::uint8_t, 3>, 6> kPerms{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

// Maximum of q·u over the great-circle arc from unit P to unit Q.
double arc_max(Vec3 p, Vec3 q_end, Vec3 q) {
  const Vec3 nrm = cross(p, q_end);
  const double nn = dot(nrm, nrm);
  const Vec3 w = q - (dot(q, nrm) / nn) * nrm;
  const double wn = norm(w);
  const double endpoints = std::max(dot(q, p), dot(q, q_end));
  if (wn <= 1e-15 * norm(q)) return endpoints;
  // w lies between P and Q iff it is on the inner side of both.
  if (dot(cross(p, w), nrm) >= 0.0 && dot(cross(w, q_end), nrm) >= 0.0) return wn;
  return endpoints;
}

}  // namespace

// ---------------------------------------------------------------------------

QuarterSquare quarter_extent(const BoxSpec& box, int face, int quadrant) {
  if (face < 1 || face > 6) throw std::invalid_argument("face must be in 1..6");
  if (quadrant < 1 || quadrant > 4) throw std::invalid_argument("quadrant must be in 1..4");
  if (box.half_side < 1) throw std::invalid_argument("quarter squares need half_side >= 1");
  const FaceDir f = face_dir(face);
  const auto plane = face_plane_axes(f.axis);
  const int m = box.half_side;
  QuarterSquare q;
  q.box = box;
  q.face = face;
  q.quadrant = quadrant;
  q.lo = box.center;
  q.hi = box.center;
  q.lo[f.axis] = q.hi[f.axis] = box.center[f.axis] + f.sign * m;
  for (int k = 0; k < 2; ++k) {
    const int a = plane[k];
    const bool negative = ((quadrant - 1) >> k) & 1;
    if (negative) {
      q.lo[a] = box.center[a] - m;
    } else {
      q.hi[a] = box.center[a] + m;
    }
  }
  return q;
}

QuarterSquare quarter_square(const BoxSpec& box, int face, int quadrant) {
  QuarterSquare q = quarter_extent(box, face, quadrant);
  const auto count = static_cast<std::size_t>(q.hi.x - q.lo.x + 1) * static_cast<std::size_t>(q.hi.y - q.lo.y + 1) *
                     static_cast<std::size_t>(q.hi.z - q.lo.z + 1);
  q.sites.reserve(count);
  for (int z = q.lo.z; z <= q.hi.z; ++z)
    for (int y = q.lo.y; y <= q.hi.y; ++y)
      for (int x = q.lo.x; x <= q.hi.x; ++x) q.sites.push_back({x, y, z});
  return q;
}

std::vector<QuarterSquare> quarter_squares(const BoxSpec& box) {
  std::vector<QuarterSquare> out;
  out.reserve(24);
  for (int face = 1; face <= 6; ++face)
    for (int j = 1; j <= 4; ++j) out.push_back(quarter_square(box, face, j));
  return out;
}

// ---------------------------------------------------------------------------

TriangleIndex TriangleIndex::from_ordinal(int ordinal) {
  if (ordinal < 0 || ordinal >= kTriangleCount) throw std::invalid_argument("triangle ordinal must be in 0..47");
  TriangleIndex g;
  g.perm_ = kPerms[static_cast<std::size_t>(ordinal / 8)];
  for (int k = 0; k < 3; ++k) g.sign_[static_cast<std::size_t>(k)] = ((ordinal >> k) & 1) ? -1 : 1;
  return g;
}

int TriangleIndex::ordinal() const noexcept {
  int rank = 0;
  for (int i = 0; i < 6; ++i)
    if (kPerms[static_cast<std::size_t>(i)] == perm_) rank = i;
  int bits = 0;
  for (int k = 0; k < 3; ++k)
    if (sign_[static_cast<std::size_t>(k)] < 0) bits |= 1 << k;
  return rank * 8 + bits;
}

Vec3 TriangleIndex::apply(Vec3 v) const noexcept {
  Vec3 out;
  for (int k = 0; k < 3; ++k) out[k] = sign_[static_cast<std::size_t>(k)] * v[perm_[static_cast<std::size_t>(k)]];
  return out;
}

Vec3 TriangleIndex::apply_inverse(Vec3 v) const noexcept {
  Vec3 out;
  for (int k = 0; k < 3; ++k) out[perm_[static_cast<std::size_t>(k)]] = sign_[static_cast<std::size_t>(k)] * v[k];
  return out;
}

Site TriangleIndex::apply(Site v) const noexcept {
  Site out;
  for (int k = 0; k < 3; ++k) out[k] = sign_[static_cast<std::size_t>(k)] * v[perm_[static_cast<std::size_t>(k)]];
  return out;
}

Site TriangleIndex::apply_inverse(Site v) const noexcept {
  Site out;
  for (int k = 0; k < 3; ++k) out[perm_[static_cast<std::size_t>(k)]] = sign_[static_cast<std::size_t>(k)] * v[k];
  return out;
}

Vec3 fundamental_vertex(int k) {
  switch (k) {
    case 0: return {1.0, 0.0, 0.0};
    case 1: return {kInvSqrt3, kInvSqrt3, kInvSqrt3};
    case 2: return {kInvSqrt2, kInvSqrt2, 0.0};
    default: throw std::invalid_argument("vertex index must be 0, 1 or 2");
  }
}

double fundamental_longest_arc() {
  double best = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double c = std::clamp(dot(fundamental_vertex(i), fundamental_vertex(j)), -1.0, 1.0);
      best = std::max(best, std::acos(c));
    }
  return best;
}

CanonicalDirection canonicalize_direction(Vec3 v) {
  if (v.x == 0.0 && v.y == 0.0 && v.z == 0.0) throw std::invalid_argument("cannot canonicalize the zero vector");
  std::array<double, 3> c{std::abs(v.x), std::abs(v.y), std::abs(v.z)};
  std::sort(c.begin(), c.end(), std::greater<>());
  const Vec3 canonical{c[0], c[1], c[2]};
  // Greedy smallest slot per coordinate gives the lexicographically smallest
  // permutation; zero coordinates keep the + sign.
  int ordinal_perm = 0;
  std::array<std::uint8_t, 3> perm{};
  std::array<bool, 3> used{};
  for (int k = 0; k < 3; ++k) {
    const double a = std::abs(v[k]);
    for (std::uint8_t j = 0; j < 3; ++j)
      if (!used[j] && c[j] == a) {
        perm[static_cast<std::size_t>(k)] = j;
        used[j] = true;
        break;
      }
  }
  for (int i = 0; i < 6; ++i)
    if (kPerms[static_cast<std::size_t>(i)] == perm) ordinal_perm = i;
  int bits = 0;
  for (int k = 0; k < 3; ++k)
    if (v[k] < 0.0) bits |= 1 << k;
  const TriangleIndex g = TriangleIndex::from_ordinal(ordinal_perm * 8 + bits);
  if (!(g.apply(canonical) == v)) throw std::logic_error("canonicalize_direction: round trip failed");
  return {g, canonical};
}

double max_dot_over_triangle(const TriangleIndex& tri, Vec3 q) {
  const Vec3 u = tri.apply_inverse(q);
  if (u.x >= u.y && u.y >= u.z && u.z >= 0.0) return norm(q);
  const Vec3 a = fundamental_vertex(0), b = fundamental_vertex(1), c = fundamental_vertex(2);
  return std::max({arc_max(a, c, u), arc_max(c, b, u), arc_max(a, b, u)});
}

double distance_to_scaled_triangle(const TriangleIndex& tri, Vec3 q, double r) {
  const double qq = dot(q, q);
  if (qq == 0.0) return r;
  const double d2 = qq + r * r - 2.0 * r * max_dot_over_triangle(tri, q);
  return std::sqrt(std::max(0.0, d2));
}

bool in_thickened_triangle(Site q, std::int64_t r_squared, const TriangleIndex& tri, double t) {
  const std::int64_t qq = norm2(q);
  if (qq > r_squared) return false;
  const double r = std::sqrt(static_cast<double>(r_squared));
  const double rr = static_cast<double>(r_squared);
  const double md = qq == 0 ? 0.0 : max_dot_over_triangle(tri, to_vec(q));
  const double d2 = static_cast<double>(qq) + rr - 2.0 * r * md;
  return d2 <= t * t + 1e-9 * (1.0 + rr);
}

std::vector<Site> thickened_offsets(std::int64_t r_squared, const TriangleIndex& tri, double t) {
  if (r_squared < 0) throw std::invalid_argument("r_squared must be non-negative");
  if (t < 0.0) throw std::invalid_argument("thickness must be non-negative");
  const TriangleIndex id;
  const double r = std::sqrt(static_cast<double>(r_squared));
  const int R = static_cast<int>(isqrt(r_squared));
  const int x_lo = std::max(-R, static_cast<int>(std::floor(r * kInvSqrt3 - t)) - 1);
  const int y_lo = std::max(-R, static_cast<int>(std::floor(-t)) - 1);
  const int y_hi = std::min(R, static_cast<int>(std::ceil(r * kInvSqrt2 + t)) + 1);
  const int z_lo = y_lo;
  const int z_hi = std::min(R, static_cast<int>(std::ceil(r * kInvSqrt3 + t)) + 1);
  const double shell = std::max(0.0, r - t);

  std::vector<Site> base;
  for (int z = z_lo; z <= z_hi; ++z) {
    for (int y = y_lo; y <= y_hi; ++y) {
      const std::int64_t rest = r_squared - std::int64_t{y} * y - std::int64_t{z} * z;
      if (rest < 0) continue;
      const int x_hi = static_cast<int>(isqrt(rest));
      int from = std::max(x_lo, -x_hi);
      if (from >= 0) {
        const double inner = shell * shell - double(y) * y - double(z) * z;
        if (inner > 0.0) from = std::max(from, static_cast<int>(std::ceil(std::sqrt(inner))) - 1);
      }
      for (int x = from; x <= x_hi; ++x) {
        const Site s{x, y, z};
        if (in_thickened_triangle(s, r_squared, id, t)) base.push_back(s);
      }
    }
  }
  for (Site& s : base) s = tri.apply(s);
  std::sort(base.begin(), base.end(), IndexOrder{});
  return base;
}

std::vector<std::vector<Site>> thickened_offsets_all(std::int64_t r_squared, double t) {
  const std::vector<Site> base = thickened_offsets(r_squared, TriangleIndex{}, t);
  std::vector<std::vector<Site>> out(kTriangleCount);
  for (int ord = 0; ord < kTriangleCount; ++ord) {
    const TriangleIndex g = TriangleIndex::from_ordinal(ord);
    auto& list = out[static_cast<std::size_t>(ord)];
    list.reserve(base.size());
    for (Site s : base) list.push_back(g.apply(s));
    std::sort(list.begin(), list.end(), IndexOrder{});
  }
  return out;
}

ThickSet thickened_triangle(Site center, std::int64_t r_squared, const TriangleIndex& tri, double t) {
  ThickSet out;
  out.center = center;
  out.r_squared = r_squared;
  out.triangle = tri;
  out.thickness = t;
  out.sites = thickened_offsets(r_squared, tri, t);
  for (Site& s : out.sites) s = s + center;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Visits ∂in B_r column by column: zmax(x, y) is the top of the ball column
// above (x, y), and a site leaves the ball through a side step exactly when
// its |z| exceeds the neighbouring column's top.
template <typename Visit>
void for_each_ball_boundary_site(std::int64_t r_squared, Visit&& visit) {
  const int R = static_cast<int>(isqrt(r_squared));
  const int w = 2 * R + 3;  // one empty column of padding on each side
  std::vector<int> top(static_cast<std::size_t>(w) * static_cast<std::size_t>(w), -1);
  auto at = [&](int x, int y) -> int& {
    return top[static_cast<std::size_t>(x + R + 1) + static_cast<std::size_t>(w) * static_cast<std::size_t>(y + R + 1)];
  };
  for (int y = -R; y <= R; ++y)
    for (int x = -R; x <= R; ++x) {
      const std::int64_t rest = r_squared - std::int64_t{x} * x - std::int64_t{y} * y;
      if (rest >= 0) at(x, y) = static_cast<int>(isqrt(rest));
    }
  for (int y = -R; y <= R; ++y)
    for (int x = -R; x <= R; ++x) {
      const int h = at(x, y);
      if (h < 0) continue;
      const int side = std::min({at(x + 1, y), at(x - 1, y), at(x, y + 1), at(x, y - 1)});
      for (int z = -h; z <= h; ++z) {
        const int az = std::abs(z);
        if (az == h || az > side) visit(Site{x, y, z});
      }
    }
}

CoverageResult coverage_single(std::int64_t r_squared, double t) {
  CoverageResult res;
  res.radii_checked = 1;
  for_each_ball_boundary_site(r_squared, [&](Site s) {
    ++res.sites_checked;
    if (!res.holds) return;
    const CanonicalDirection home = canonicalize_direction(to_vec(s));
    if (in_thickened_triangle(s, r_squared, home.triangle, t)) return;
    for (int ord = 0; ord < kTriangleCount; ++ord)
      if (in_thickened_triangle(s, r_squared, TriangleIndex::from_ordinal(ord), t)) return;
    res.holds = false;
    res.failing_r_squared = r_squared;
    res.witness = s;
  });
  return res;
}

}  // namespace

std::vector<Site> ball_inner_boundary(std::int64_t r_squared) {
  if (r_squared < 0) throw std::invalid_argument("r_squared must be non-negative");
  std::vector<Site> out;
  for_each_ball_boundary_site(r_squared, [&](Site s) { out.push_back(s); });
  std::sort(out.begin(), out.end(), IndexOrder{});
  return out;
}

CoverageResult coverage_check(std::int64_t r_squared, double t) {
  if (!is_sum_of_three_squares(r_squared) || r_squared <= 0)
    throw std::invalid_argument("coverage_check needs an admissible r^2");
  if (t < 0.0) throw std::invalid_argument("thickness must be non-negative");
  return coverage_single(r_squared, t);
}

CoverageResult coverage_check_range(std::int64_t lo, std::int64_t hi, double t, unsigned threads) {
  if (t < 0.0) throw std::invalid_argument("thickness must be non-negative");
  std::vector<std::int64_t> radii;
  for (std::int64_t r2 = std::max<std::int64_t>(lo, 1); r2 <= hi; ++r2)
    if (is_sum_of_three_squares(r2)) radii.push_back(r2);
  std::vector<CoverageResult> results(radii.size());
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, radii.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < radii.size();) results[i] = coverage_single(radii[i], t);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  CoverageResult total;
  for (const CoverageResult& r : results) {
    total.radii_checked += r.radii_checked;
    total.sites_checked += r.sites_checked;
    if (!r.holds && total.holds) {
      total.holds = false;
      total.failing_r_squared = r.failing_r_squared;
      total.witness = r.witness;
    }
  }
  return total;
}

// ---------------------------------------------------------------------------

double max_pair_distance(std::span<const Site> points) {
  if (points.size() < 2) return 0.0;
  Site lo = points[0], hi = points[0];
  for (Site s : points)
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], s[a]);
      hi[a] = std::max(hi[a], s[a]);
    }
  const int extent = std::max({hi.x - lo.x, hi.y - lo.y, hi.z - lo.z}) + 1;
  const int h = std::max(1, (extent + 15) / 16);
  const int cells_per_axis = (extent + h - 1) / h;

  struct Cell {
    Site lo, hi;
    std::vector<Site> pts;
  };
  std::vector<int> slot(static_cast<std::size_t>(cells_per_axis) * cells_per_axis * cells_per_axis, -1);
  std::vector<Cell> cells;
  for (Site s : points) {
    const Site c = {(s.x - lo.x) / h, (s.y - lo.y) / h, (s.z - lo.z) / h};
    const auto key = static_cast<std::size_t>(c.x) +
                     static_cast<std::size_t>(cells_per_axis) *
                         (static_cast<std::size_t>(c.y) + static_cast<std::size_t>(cells_per_axis) * c.z);
    if (slot[key] < 0) {
      slot[key] = static_cast<int>(cells.size());
      cells.push_back({s, s, {}});
    }
    Cell& cell = cells[static_cast<std::size_t>(slot[key])];
    for (int a = 0; a < 3; ++a) {
      cell.lo[a] = std::min(cell.lo[a], s[a]);
      cell.hi[a] = std::max(cell.hi[a], s[a]);
    }
    cell.pts.push_back(s);
  }

  struct Pair {
    std::int64_t bound;
    std::uint32_t i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(cells.size() * (cells.size() + 1) / 2);
  std::int64_t best = 0;
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i; j < cells.size(); ++j) {
      std::int64_t ub = 0;
      for (int a = 0; a < 3; ++a) {
        const std::int64_t d = std::max(std::abs(cells[i].hi[a] - cells[j].lo[a]), std::abs(cells[j].hi[a] - cells[i].lo[a]));
        ub += d * d;
      }
      best = std::max(best, norm2(cells[i].pts.front() - cells[j].pts.front()));
      pairs.push_back({ub, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.bound > b.bound; });
  for (const Pair& pr : pairs) {
    if (pr.bound <= best) break;
    const auto& a = cells[pr.i].pts;
    const auto& b = cells[pr.j].pts;
    for (Site s : a)
      for (Site u : b) best = std::max(best, norm2(s - u));
  }
  return std::sqrt(static_cast<double>(best));
}

}  // namespace perc3
