#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "perc3/lattice.hpp"

namespace perc3 {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  constexpr double operator[](int a) const noexcept { return a == 0 ? x : (a == 1 ? y : z); }
  constexpr double& operator[](int a) noexcept { return a == 0 ? x : (a == 1 ? y : z); }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) noexcept { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) noexcept { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 v) noexcept { return {s * v.x, s * v.y, s * v.z}; }
};

constexpr Vec3 to_vec(Site s) noexcept { return {double(s.x), double(s.y), double(s.z)}; }
constexpr double dot(Vec3 a, Vec3 b) noexcept { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(Vec3 a, Vec3 b) noexcept {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 v) noexcept { return std::sqrt(dot(v, v)); }

// ---------------------------------------------------------------------------
// Quarter squares of cube faces

/// Face i in 1..6 of a box: +x, -x, +y, -y, +z, -z.
struct FaceDir {
  int axis;
  int sign;
};
constexpr FaceDir face_dir(int face) noexcept { return {(face - 1) / 2, (face % 2 == 1) ? 1 : -1}; }
constexpr int face_index(int axis, int sign) noexcept { return 2 * axis + (sign > 0 ? 1 : 2); }
constexpr int opposite_face(int face) noexcept { return face % 2 == 1 ? face + 1 : face - 1; }

/// The two axes spanning a face, ascending.
constexpr std::array<int, 2> face_plane_axes(int axis) noexcept {
  return axis == 0 ? std::array<int, 2>{1, 2} : (axis == 1 ? std::array<int, 2>{0, 2} : std::array<int, 2>{0, 1});
}

/// One of the four closed quadrants of a face: quadrant j in 1..4 takes the
/// first in-plane axis on the + side when bit 0 of (j-1) is clear and the
/// second when bit 1 is clear. Each quadrant holds the face center and one
/// corner of the box; sites on the median lines belong to several quadrants.
struct QuarterSquare {
  BoxSpec box;
  int face = 1;
  int quadrant = 1;
  Site lo, hi;  // inclusive extent
  std::vector<Site> sites;  // IndexOrder
};

/// Extent-only version (no site list).
QuarterSquare quarter_extent(const BoxSpec& box, int face, int quadrant);
QuarterSquare quarter_square(const BoxSpec& box, int face, int quadrant);
/// All 24 quarters, ordered by (face, quadrant). Requires half_side >= 1.
std::vector<QuarterSquare> quarter_squares(const BoxSpec& box);

// ---------------------------------------------------------------------------
// Octahedral tiling of the sphere

/// A signed coordinate permutation g with (g v)[k] = sign[k] * v[perm[k]].
///
/// The 48 elements form the reflection group of the nine planes x=0, y=0,
/// z=0, x=±y, x=±z, y=±z; element g names the spherical triangle g(T0), where
/// T0 = {u : u_x >= u_y >= u_z >= 0} has vertices (1,0,0), (1,1,1)/√3 and
/// (1,1,0)/√2. Ordinal = 8 * (lexicographic rank of perm) + sign bits, bit k
/// set when sign[k] = -1; ordinal 0 is the identity.
class TriangleIndex {
 public:
  constexpr TriangleIndex() = default;
  static TriangleIndex from_ordinal(int ordinal);
  static constexpr TriangleIndex identity() noexcept { return {}; }

  int ordinal() const noexcept;
  const std::array<std::uint8_t, 3>& perm() const noexcept { return perm_; }
  const std::array<std::int8_t, 3>& signs() const noexcept { return sign_; }

  Vec3 apply(Vec3 v) const noexcept;
  Vec3 apply_inverse(Vec3 v) const noexcept;
  Site apply(Site v) const noexcept;
  Site apply_inverse(Site v) const noexcept;

  friend bool operator==(const TriangleIndex&, const TriangleIndex&) = default;

 private:
  std::array<std::uint8_t, 3> perm_{0, 1, 2};
  std::array<std::int8_t, 3> sign_{1, 1, 1};
};

inline constexpr int kTriangleCount = 48;

/// Vertices of T0.
Vec3 fundamental_vertex(int k);

/// Largest pairwise arc length among the vertices of T0 (arccos(1/√3)).
double fundamental_longest_arc();

struct CanonicalDirection {
  TriangleIndex triangle;
  Vec3 canonical;  // |components| sorted descending; triangle.apply(canonical) == v
};

/// Triangle containing v/|v|. Directions on shared edges go to the smallest
/// ordinal. Throws std::invalid_argument for v = 0.
CanonicalDirection canonicalize_direction(Vec3 v);

/// max over unit u in the triangle of q·u, in closed form.
double max_dot_over_triangle(const TriangleIndex& tri, Vec3 q);

/// Euclidean distance from q to r·T.
double distance_to_scaled_triangle(const TriangleIndex& tri, Vec3 q, double r);

/// Membership of an offset q (relative to the ball center) in the thickened
/// target {q in B_r : d(q, rT) <= t}; a relative tolerance of 1e-9 r^2 on the
/// squared distance absorbs rounding.
bool in_thickened_triangle(Site q, std::int64_t r_squared, const TriangleIndex& tri, double t);

struct ThickSet {
  Site center;
  std::int64_t r_squared = 0;
  TriangleIndex triangle;
  double thickness = 3.0;
  std::vector<Site> sites;  // IndexOrder
};

/// Offsets of the thickened target relative to the ball center.
std::vector<Site> thickened_offsets(std::int64_t r_squared, const TriangleIndex& tri, double t);
/// All 48 offset lists, indexed by ordinal.
std::vector<std::vector<Site>> thickened_offsets_all(std::int64_t r_squared, double t);

ThickSet thickened_triangle(Site center, std::int64_t r_squared, const TriangleIndex& tri, double t);

/// ∂in B_r of the ball centered at 0, in IndexOrder.
std::vector<Site> ball_inner_boundary(std::int64_t r_squared);

struct CoverageResult {
  bool holds = true;
  std::uint64_t radii_checked = 0;
  std::uint64_t sites_checked = 0;
  std::optional<std::int64_t> failing_r_squared;
  std::optional<Site> witness;
};

/// Every site of ∂in B_r lies in at least one of the 48 thickened targets.
CoverageResult coverage_check(std::int64_t r_squared, double t);
/// coverage_check over every admissible r^2 in [lo, hi]; stops at the first
/// failure. Work is split across `threads` (0 = hardware).
CoverageResult coverage_check_range(std::int64_t lo, std::int64_t hi, double t, unsigned threads = 0);

/// Exact largest pairwise Euclidean distance (cell-pair branch and bound).
double max_pair_distance(std::span<const Site> points);

/// Contraction guarantee threshold 2t/(λ - 0.96): for r at or above it, any
/// two points of a thickened target are within λ r of each other.
inline double contraction_radius(double t, double lambda) { return 2.0 * t / (lambda - 0.96); }

}  // namespace perc3
