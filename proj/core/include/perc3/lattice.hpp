#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <variant>
#include <vector>

namespace perc3 {

/// A vertex of the cubic lattice Z^3.
struct Site {
  int x = 0;
  int y = 0;
  int z = 0;

  constexpr int operator[](int axis) const noexcept { return axis == 0 ? x : (axis == 1 ? y : z); }
  constexpr int& operator[](int axis) noexcept { return axis == 0 ? x : (axis == 1 ? y : z); }

  friend constexpr bool operator==(const Site&, const Site&) = default;
  friend constexpr Site operator+(Site a, Site b) noexcept { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Site operator-(Site a, Site b) noexcept { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
};

constexpr std::int64_t norm2(Site s) noexcept {
  return std::int64_t{s.x} * s.x + std::int64_t{s.y} * s.y + std::int64_t{s.z} * s.z;
}
constexpr int norm_l1(Site s) noexcept { return std::abs(s.x) + std::abs(s.y) + std::abs(s.z); }
constexpr int norm_linf(Site s) noexcept {
  const int ax = std::abs(s.x), ay = std::abs(s.y), az = std::abs(s.z);
  return ax > ay ? (ax > az ? ax : az) : (ay > az ? ay : az);
}

/// The six nearest-neighbour steps, in the fixed order +x, -x, +y, -y, +z, -z.
inline constexpr std::array<Site, 6> kNeighborSteps{{
    {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}};

constexpr bool adjacent(Site a, Site b) noexcept { return norm_l1(a - b) == 1; }

/// Orders sites like the configuration index: z slowest, x fastest.
struct IndexOrder {
  constexpr bool operator()(const Site& a, const Site& b) const noexcept {
    if (a.z != b.z) return a.z < b.z;
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  }
};

/// Axis-aligned cube center + [-m, m]^3.
struct BoxSpec {
  Site center;
  int half_side = 0;

  constexpr bool contains(Site s) const noexcept {
    return std::abs(s.x - center.x) <= half_side && std::abs(s.y - center.y) <= half_side &&
           std::abs(s.z - center.z) <= half_side;
  }
  constexpr std::int64_t site_count() const noexcept {
    const std::int64_t side = 2 * std::int64_t{half_side} + 1;
    return side * side * side;
  }
  constexpr Site lo() const noexcept { return center - Site{half_side, half_side, half_side}; }
  constexpr Site hi() const noexcept { return center + Site{half_side, half_side, half_side}; }
  friend constexpr bool operator==(const BoxSpec&, const BoxSpec&) = default;
};

/// Legendre's three-square theorem: n is a sum of three squares iff it is not
/// of the form 4^a (8b + 7).
constexpr bool is_sum_of_three_squares(std::int64_t n) noexcept {
  if (n < 0) return false;
  if (n == 0) return true;
  while (n % 4 == 0) n /= 4;
  return n % 8 != 7;
}

/// Integer square root, floor(sqrt(n)) for n >= 0.
std::int64_t isqrt(std::int64_t n) noexcept;

/// Lattice ball {s : |s - center|^2 <= r_squared}.
struct BallSpec {
  Site center;
  std::int64_t r_squared = 1;

  constexpr bool contains(Site s) const noexcept { return norm2(s - center) <= r_squared; }
  /// The sphere of radius sqrt(r_squared) passes through a lattice point.
  constexpr bool admissible() const noexcept { return r_squared > 0 && is_sum_of_three_squares(r_squared); }
  int extent() const noexcept { return static_cast<int>(isqrt(r_squared)); }
  friend constexpr bool operator==(const BallSpec&, const BallSpec&) = default;
};

/// Sorted (IndexOrder), duplicate-free list of sites.
class SiteSet {
 public:
  SiteSet() = default;
  explicit SiteSet(std::vector<Site> sites);

  bool contains(Site s) const noexcept;
  std::size_t size() const noexcept { return sites_.size(); }
  bool empty() const noexcept { return sites_.empty(); }
  std::span<const Site> sites() const noexcept { return sites_; }
  auto begin() const noexcept { return sites_.begin(); }
  auto end() const noexcept { return sites_.end(); }

  friend bool operator==(const SiteSet&, const SiteSet&) = default;

 private:
  std::vector<Site> sites_;
};

/// A finite subset of Z^3: a box, a ball or an explicit site list.
class Region {
 public:
  Region(BoxSpec box) : shape_(box) {}    // NOLINT(google-explicit-constructor)
  Region(BallSpec ball) : shape_(ball) {}  // NOLINT(google-explicit-constructor)
  Region(SiteSet set) : shape_(std::move(set)) {}  // NOLINT(google-explicit-constructor)

  bool contains(Site s) const noexcept;
  /// Smallest axis-aligned bounds [lo, hi] holding the region. Empty explicit
  /// sets report lo > hi.
  void bounds(Site& lo, Site& hi) const noexcept;
  /// All member sites in IndexOrder.
  std::vector<Site> sites() const;

  const BoxSpec* box() const noexcept { return std::get_if<BoxSpec>(&shape_); }
  const BallSpec* ball() const noexcept { return std::get_if<BallSpec>(&shape_); }
  const SiteSet* set() const noexcept { return std::get_if<SiteSet>(&shape_); }

 private:
  std::variant<BoxSpec, BallSpec, SiteSet> shape_;
};

/// Λ(n) = [-n, n]^3.
constexpr BoxSpec lambda_box(int n) noexcept { return BoxSpec{{0, 0, 0}, n}; }

/// Membership in the real box [-num*n/den, num*n/den]^3, e.g. Λ(3n/4).
constexpr bool in_scaled_box(Site s, int n, int num, int den) noexcept {
  return std::int64_t{norm_linf(s)} * den <= std::int64_t{num} * n;
}

/// Bernoulli site configuration on Λ(n), bit-packed in index order.
///
/// Site index: (x+n) + (2n+1)((y+n) + (2n+1)(z+n)). Bit i of the packed array
/// is word i/64, bit i%64 (LSB first); a set bit means open.
class Configuration {
 public:
  Configuration() = default;
  /// Takes ownership of already packed bits; throws std::invalid_argument on a
  /// size mismatch or p outside [0, 1].
  Configuration(int n, double p, std::uint64_t seed, std::vector<std::uint64_t> words);

  int n() const noexcept { return n_; }
  double p() const noexcept { return p_; }
  std::uint64_t seed() const noexcept { return seed_; }
  int side() const noexcept { return 2 * n_ + 1; }
  std::size_t size() const noexcept { return size_; }
  BoxSpec box() const noexcept { return lambda_box(n_); }

  bool contains(Site s) const noexcept { return norm_linf(s) <= n_; }
  std::size_t index(Site s) const noexcept {
    const auto w = static_cast<std::size_t>(side());
    return static_cast<std::size_t>(s.x + n_) +
           w * (static_cast<std::size_t>(s.y + n_) + w * static_cast<std::size_t>(s.z + n_));
  }
  Site site(std::size_t index) const noexcept;

  bool is_open(std::size_t index) const noexcept { return (words_[index >> 6] >> (index & 63)) & 1U; }
  bool is_open(Site s) const noexcept { return is_open(index(s)); }
  bool is_closed(Site s) const noexcept { return !is_open(s); }

  std::size_t open_count() const noexcept;
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// Copy with one site forced open (or closed); used by monotonicity checks.
  Configuration with_state(Site s, bool open) const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  int n_ = 0;
  double p_ = 0.0;
  std::uint64_t seed_ = 0;
  std::size_t size_ = 1;
  std::vector<std::uint64_t> words_{0};
};

/// Per-site uniform of the configuration stream: site i is open iff
/// site_uniform(seed, i) < p. Independent of p, so configurations sampled with
/// one seed are coupled (nested) across p.
double site_uniform(std::uint64_t seed, std::uint64_t index) noexcept;

/// Throws std::invalid_argument when n < 0 or p is outside [0, 1].
Configuration sample_configuration(int n, double p, std::uint64_t seed);

/// Sites of the region with a nearest neighbour outside it.
SiteSet inner_boundary(const Region& region);
/// Sites outside the region with a nearest neighbour inside it.
SiteSet outer_boundary(const Region& region);

/// Squared radii r^2, ascending, that are sums of three squares and whose
/// ball x + B_r lies inside `bounding`, i.e. r <= the distance from x to the
/// nearest face. Empty when x is on the inner boundary.
std::vector<std::int64_t> admissible_radii(Site x, const BoxSpec& bounding);

}  // namespace perc3
