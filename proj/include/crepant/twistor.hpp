#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "crepant/exact.hpp"
#include "crepant/linalg.hpp"

namespace crepant {

// The group of even sign flips of R^4 and its induced rotations of the
// twistor fiber sphere over the fixed point.
//
// Conventions: R^4 is identified with the quaternions via the ordered basis
// (1, i, j, k), and a point (x, y, z) of the fiber sphere is the complex
// structure given by left multiplication with x*i + y*j + z*k.  Rotation
// matrices are written in the basis of the left multiplications (I, J, K).

struct SignFlip {
  std::array<int, 4> signs;

  explicit SignFlip(std::array<int, 4> s) : signs(s) {
    int minus = 0;
    for (int x : signs) {
      if (x != 1 && x != -1)
        throw std::invalid_argument("SignFlip: entries must be +1 or -1");
      if (x == -1) ++minus;
    }
    if (minus % 2 != 0)
      throw std::invalid_argument(
          "SignFlip: odd sign pattern reverses orientation, not in the group");
  }

  static SignFlip identity() { return SignFlip({1, 1, 1, 1}); }

  friend SignFlip operator*(const SignFlip& g, const SignFlip& h) {
    return SignFlip({g.signs[0] * h.signs[0], g.signs[1] * h.signs[1],
                     g.signs[2] * h.signs[2], g.signs[3] * h.signs[3]});
  }
  friend bool operator==(const SignFlip& g, const SignFlip& h) {
    return g.signs == h.signs;
  }
  friend bool operator<(const SignFlip& g, const SignFlip& h) {
    return g.signs < h.signs;
  }
};

// All eight even sign flips, in lexicographic order of sign patterns.
inline std::vector<SignFlip> sign_flip_group() {
  std::vector<SignFlip> out;
  for (int mask = 0; mask < 16; ++mask) {
    std::array<int, 4> s;
    int minus = 0;
    for (int j = 0; j < 4; ++j) {
      s[j] = (mask >> j) & 1 ? -1 : 1;
      if (s[j] == -1) ++minus;
    }
    if (minus % 2 == 0) out.push_back(SignFlip(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct FiberRotation {
  std::array<std::array<int, 3>, 3> m;

  static FiberRotation identity() {
    return FiberRotation{{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
  }
  friend FiberRotation operator*(const FiberRotation& a, const FiberRotation& b) {
    FiberRotation c{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int s = 0;
        for (int k = 0; k < 3; ++k) s += a.m[i][k] * b.m[k][j];
        c.m[i][j] = s;
      }
    return c;
  }
  friend bool operator==(const FiberRotation& a, const FiberRotation& b) {
    return a.m == b.m;
  }
  std::array<int, 3> apply(const std::array<int, 3>& v) const {
    std::array<int, 3> w{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) w[i] += m[i][j] * v[j];
    return w;
  }
};

// A rational direction on the fiber sphere, stored primitively.
struct FiberPoint {
  std::array<int, 3> dir;

  explicit FiberPoint(std::array<int, 3> d) : dir(d) {
    if (d == std::array<int, 3>{0, 0, 0})
      throw std::invalid_argument("FiberPoint: zero direction");
    int g = 0;
    for (int x : d) g = std::gcd(g, std::abs(x));
    for (auto& x : dir) x /= g;
  }
  FiberPoint antipode() const { return FiberPoint({-dir[0], -dir[1], -dir[2]}); }
  // Representative of the antipodal pair with positive leading entry.
  FiberPoint canonical_pair_rep() const {
    for (int x : dir) {
      if (x > 0) return *this;
      if (x < 0) return antipode();
    }
    return *this;
  }
  friend bool operator==(const FiberPoint& a, const FiberPoint& b) {
    return a.dir == b.dir;
  }
  friend bool operator<(const FiberPoint& a, const FiberPoint& b) {
    return a.dir < b.dir;
  }
};

// diag(s) * L_q * diag(s) expressed in the basis (I, J, K) collapses to a
// diagonal matrix with entries s1s2, s1s3, s1s4; the even-sign condition
// makes the two blocks of each left multiplication scale identically.
inline FiberRotation fiber_action(const SignFlip& g) {
  const auto& s = g.signs;
  FiberRotation r{};
  r.m[0][0] = s[0] * s[1];
  r.m[1][1] = s[0] * s[2];
  r.m[2][2] = s[0] * s[3];
  return r;
}

struct FixedPointSet {
  bool whole_sphere = false;
  std::optional<FiberPoint> axis;  // one of the antipodal pair otherwise

  std::vector<FiberPoint> points() const {
    if (whole_sphere || !axis) return {};
    return {axis->canonical_pair_rep(), axis->canonical_pair_rep().antipode()};
  }
};

// Fixed directions of the induced rotation: everything for kernel elements,
// a single antipodal axis pair otherwise.
inline FixedPointSet fixed_points(const SignFlip& g) {
  const FiberRotation r = fiber_action(g);
  if (r == FiberRotation::identity()) return {true, std::nullopt};
  // Kernel of r - id over the integers; a rotation always has the +1 axis.
  IntMat m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = Int(r.m[i][j] - (i == j ? 1 : 0));
  const IntMat k = kernel_lattice_basis(m);
  if (k.cols != 1)
    throw std::logic_error("fixed_points: rotation without a unique axis");
  const Vec axis = primitive(k.col(0));
  std::array<int, 3> d;
  for (int j = 0; j < 3; ++j) d[j] = static_cast<int>(axis[j].get_si());
  return {false, FiberPoint(d)};
}

inline std::vector<SignFlip> stabilizer(const FiberPoint& p) {
  std::vector<SignFlip> out;
  for (const auto& g : sign_flip_group())
    if (fiber_action(g).apply(p.dir) == p.dir) out.push_back(g);
  return out;
}

// Orbits of the six coordinate-axis points under the full group: three
// antipodal pairs.
inline std::vector<std::vector<FiberPoint>> octahedron_orbits() {
  std::vector<FiberPoint> pts;
  for (int j = 0; j < 3; ++j) {
    std::array<int, 3> d{0, 0, 0};
    d[j] = 1;
    pts.push_back(FiberPoint(d));
    d[j] = -1;
    pts.push_back(FiberPoint(d));
  }
  std::sort(pts.begin(), pts.end());
  std::vector<std::vector<FiberPoint>> orbits;
  std::vector<bool> used(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    std::vector<FiberPoint> orbit;
    for (const auto& g : sign_flip_group()) {
      const FiberPoint img(fiber_action(g).apply(pts[i].dir));
      for (std::size_t j = 0; j < pts.size(); ++j)
        if (!used[j] && pts[j] == img) {
          used[j] = true;
          orbit.push_back(img);
        }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

// Geodesic coordinate two-plane spanned by axes i < j of R^4 (1-based).
struct CoordinatePlane {
  int i, j;

  CoordinatePlane(int i_, int j_) : i(i_), j(j_) {
    if (i < 1 || j < 1 || i > 4 || j > 4 || i == j)
      throw std::invalid_argument("CoordinatePlane: need distinct axes in 1..4");
    if (i > j) std::swap(i, j);
  }
  CoordinatePlane orthogonal() const {
    std::array<bool, 5> used{};
    used[i] = used[j] = true;
    int a = 0, b = 0;
    for (int k = 1; k <= 4; ++k)
      if (!used[k]) (a == 0 ? a : b) = k;
    return CoordinatePlane(a, b);
  }
  friend bool operator==(const CoordinatePlane& x, const CoordinatePlane& y) {
    return x.i == y.i && x.j == y.j;
  }
};

namespace detail {

// Left multiplication by i, j, k on (1, i, j, k) coordinates.
inline const std::array<std::array<std::array<int, 4>, 4>, 3>& left_mult_tables() {
  static const std::array<std::array<std::array<int, 4>, 4>, 3> t = {{
      // L_i: 1->i, i->-1, j->k, k->-j
      {{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}},
      // L_j: 1->j, i->-k, j->-1, k->i
      {{{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}}},
      // L_k: 1->k, i->j, j->-i, k->-1
      {{{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}},
  }};
  return t;
}

}  // namespace detail

// The two unit imaginary directions q with q * span(e_i, e_j) = span(e_i, e_j)
// under left multiplication, as an antipodal pair (returned by its canonical
// representative).
inline FiberPoint plane_lift_fiber_points(const CoordinatePlane& plane) {
  const auto& lm = detail::left_mult_tables();
  // Rows: for each basis vector e of the plane and each coordinate outside
  // the plane, the coefficient of (a, b, c) in that coordinate of L_q(e).
  std::vector<Vec> rows;
  const int pi = plane.i - 1, pj = plane.j - 1;
  for (int e : {pi, pj})
    for (int out = 0; out < 4; ++out) {
      if (out == pi || out == pj) continue;
      Vec row(3);
      for (int q = 0; q < 3; ++q) row[q] = Int(lm[q][out][e]);
      rows.push_back(std::move(row));
    }
  const IntMat k = kernel_lattice_basis(IntMat::from_rows(rows));
  if (k.cols != 1)
    throw std::logic_error("plane_lift_fiber_points: preservation space not a line");
  const Vec dir = primitive(k.col(0));
  std::array<int, 3> d;
  for (int q = 0; q < 3; ++q) d[q] = static_cast<int>(dir[q].get_si());
  return FiberPoint(d).canonical_pair_rep();
}

inline std::vector<CoordinatePlane> all_coordinate_planes() {
  std::vector<CoordinatePlane> out;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) out.emplace_back(i, j);
  return out;
}

}  // namespace crepant
