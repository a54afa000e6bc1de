#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace crepant {

// Arbitrary-precision integers and rationals, backed by GMP.  Rationals are
// kept canonical (reduced, positive denominator) by construction.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat parse_rat(const std::string& text) {
  Rat q;
  if (text.empty() || mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
    throw std::invalid_argument("parse_rat: malformed rational '" + text + "'");
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw std::invalid_argument("parse_rat: zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

// Always "p/q", including a unit denominator, so serialized output is uniform.
inline std::string rat_to_string(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int tdiv(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// ---------------------------------------------------------------------------
// The golden ring: elements a + b*phi with phi^2 = phi + 1.
//
// Ordering uses phi = (1 + sqrt 5)/2, so sign(a + b*phi) is the sign of
// (2a + b) + b*sqrt5, decided exactly by comparing squares when the two
// terms have opposite signs.
// ---------------------------------------------------------------------------
struct Golden {
  Rat a, b;

  Golden() : a(0), b(0) {}
  Golden(Rat a_) : a(std::move(a_)), b(0) {}
  Golden(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}

  static Golden phi() { return Golden(Rat(0), Rat(1)); }

  friend Golden operator+(const Golden& x, const Golden& y) {
    return Golden(x.a + y.a, x.b + y.b);
  }
  friend Golden operator-(const Golden& x, const Golden& y) {
    return Golden(x.a - y.a, x.b - y.b);
  }
  friend Golden operator-(const Golden& x) { return Golden(-x.a, -x.b); }
  friend Golden operator*(const Golden& x, const Golden& y) {
    // (a1 + b1 phi)(a2 + b2 phi) = a1 a2 + b1 b2 + (a1 b2 + b1 a2 + b1 b2) phi
    return Golden(x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b);
  }

  // Ring involution phi -> 1 - phi.
  Golden conj() const { return Golden(a + b, -b); }

  // x * conj(x), always rational.
  Rat norm() const { return a * a + a * b - b * b; }

  int sign() const {
    const Rat big = 2 * a + b;  // value = (big + b*sqrt5)/2
    const int sa = sgn(big), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    const Rat cmp = big * big - 5 * b * b;  // sign tells |big| vs |b*sqrt5|
    return sgn(cmp) * sa;
  }

  bool is_zero() const { return a == 0 && b == 0; }

  friend bool operator==(const Golden& x, const Golden& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator!=(const Golden& x, const Golden& y) { return !(x == y); }
  friend bool operator<(const Golden& x, const Golden& y) {
    return (x - y).sign() < 0;
  }
  friend bool operator>(const Golden& x, const Golden& y) { return y < x; }
};

// ---------------------------------------------------------------------------
// Integer vectors.
// ---------------------------------------------------------------------------
using Vec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int dot(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("dot: size mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

inline Rat dot_rat(const Vec& n, const RatVec& x) {
  if (n.size() != x.size()) throw std::invalid_argument("dot_rat: size mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < n.size(); ++i) s += Rat(n[i]) * x[i];
  return s;
}

inline bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline Vec negated(const Vec& v) {
  Vec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = -v[i];
  return w;
}

inline bool vec_less(const Vec& u, const Vec& v) {
  return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
}

inline bool ratvec_less(const RatVec& u, const RatVec& v) {
  return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
}

// v divided by the gcd of its entries; the direction is preserved.
inline Vec primitive(const Vec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) throw std::invalid_argument("primitive: zero vector has no direction");
  Vec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] / g;
  return w;
}

// Clear denominators and reduce: the primitive integer vector on the ray
// through a rational vector.
inline Vec primitive_of_rational(const RatVec& x) {
  Int l = 1;
  for (const auto& q : x) {
    Int d = q.get_den();
    l = l / gcd(l, d) * d;
  }
  Vec w(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rat s = x[i] * Rat(l);
    w[i] = s.get_num();
  }
  return primitive(w);
}

// ---------------------------------------------------------------------------
// Dense integer matrices (row major).
// ---------------------------------------------------------------------------
struct IntMat {
  int rows = 0, cols = 0;
  std::vector<Int> e;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), e(static_cast<std::size_t>(r) * c) {}

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static IntMat from_rows(const std::vector<Vec>& rs) {
    const int r = static_cast<int>(rs.size());
    const int c = r == 0 ? 0 : static_cast<int>(rs[0].size());
    IntMat m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rs[i].size()) != c)
        throw std::invalid_argument("from_rows: ragged rows");
      for (int j = 0; j < c; ++j) m.at(i, j) = rs[i][j];
    }
    return m;
  }

  Int& at(int i, int j) { return e[static_cast<std::size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const {
    return e[static_cast<std::size_t>(i) * cols + j];
  }

  Vec row(int i) const {
    Vec v(cols);
    for (int j = 0; j < cols; ++j) v[j] = at(i, j);
    return v;
  }
  Vec col(int j) const {
    Vec v(rows);
    for (int i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
  }

  IntMat transposed() const {
    IntMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend IntMat operator*(const IntMat& a, const IntMat& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: shape mismatch");
    IntMat c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
      for (int k = 0; k < a.cols; ++k) {
        if (a.at(i, k) == 0) continue;
        for (int j = 0; j < b.cols; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return c;
  }

  friend bool operator==(const IntMat& a, const IntMat& b) {
    return a.rows == b.rows && a.cols == b.cols && a.e == b.e;
  }
};

// Bareiss fraction-free elimination; exact for any square integer matrix.
inline Int det(const IntMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("det: matrix not square");
  const int n = m.rows;
  if (n == 0) return 1;
  IntMat w = m;
  Int sign = 1, prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (w.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (w.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
    prev = w.at(k, k);
  }
  return sign * w.at(n - 1, n - 1);
}

namespace detail {

inline void row_axpy(IntMat& m, int dst, int src, const Int& q) {
  if (q == 0) return;
  for (int j = 0; j < m.cols; ++j) m.at(dst, j) -= q * m.at(src, j);
}
inline void col_axpy(IntMat& m, int dst, int src, const Int& q) {
  if (q == 0) return;
  for (int i = 0; i < m.rows; ++i) m.at(i, dst) -= q * m.at(i, src);
}
inline void row_swap(IntMat& m, int i, int k) {
  if (i == k) return;
  for (int j = 0; j < m.cols; ++j) std::swap(m.at(i, j), m.at(k, j));
}
inline void col_swap(IntMat& m, int j, int k) {
  if (j == k) return;
  for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, j), m.at(i, k));
}
inline void row_negate(IntMat& m, int i) {
  for (int j = 0; j < m.cols; ++j) m.at(i, j) = -m.at(i, j);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hermite normal form, row style: U*M = H with |det U| = 1, H in row echelon
// form with positive pivots and the entries above each pivot reduced into
// [0, pivot).  This convention makes H unique, so hnf(H).H == H.
// ---------------------------------------------------------------------------
struct HermiteForm {
  IntMat h, u;
};

inline HermiteForm hermite_normal_form(const IntMat& m) {
  IntMat h = m, u = IntMat::identity(m.rows);
  int r = 0;
  for (int c = 0; c < h.cols && r < h.rows; ++c) {
    // Euclidean elimination below row r in column c.
    for (;;) {
      int p = -1;
      for (int i = r; i < h.rows; ++i) {
        if (h.at(i, c) == 0) continue;
        if (p < 0 || cmp(abs(h.at(i, c)), abs(h.at(p, c))) < 0) p = i;
      }
      if (p < 0) break;
      detail::row_swap(h, r, p);
      detail::row_swap(u, r, p);
      bool clean = true;
      for (int i = r + 1; i < h.rows; ++i) {
        if (h.at(i, c) == 0) continue;
        const Int q = tdiv(h.at(i, c), h.at(r, c));
        detail::row_axpy(h, i, r, q);
        detail::row_axpy(u, i, r, q);
        if (h.at(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h.at(r, c) == 0) continue;
    if (h.at(r, c) < 0) {
      detail::row_negate(h, r);
      detail::row_negate(u, r);
    }
    for (int i = 0; i < r; ++i) {
      const Int q = fdiv(h.at(i, c), h.at(r, c));
      detail::row_axpy(h, i, r, q);
      detail::row_axpy(u, i, r, q);
    }
    ++r;
  }
  return {h, u};
}

// ---------------------------------------------------------------------------
// Smith normal form: U*M*V = D with D diagonal, entries non-negative and
// d1 | d2 | ... (invariant factors), |det U| = |det V| = 1.
// ---------------------------------------------------------------------------
struct SmithForm {
  IntMat u, d, v;

  std::vector<Int> diagonal() const {
    std::vector<Int> out;
    const int n = std::min(d.rows, d.cols);
    for (int i = 0; i < n; ++i) out.push_back(d.at(i, i));
    return out;
  }
};

inline SmithForm smith_normal_form(const IntMat& m) {
  IntMat d = m;
  IntMat u = IntMat::identity(m.rows), v = IntMat::identity(m.cols);
  const int n = std::min(m.rows, m.cols);
  for (int t = 0; t < n; ++t) {
    for (;;) {
      int pi = -1, pj = -1;
      for (int i = t; i < d.rows; ++i)
        for (int j = t; j < d.cols; ++j) {
          if (d.at(i, j) == 0) continue;
          if (pi < 0 || cmp(abs(d.at(i, j)), abs(d.at(pi, pj))) < 0) {
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        pi = pj = t;  // submatrix all zero; done at this t
        break;
      }
      detail::row_swap(d, t, pi);
      detail::row_swap(u, t, pi);
      detail::col_swap(d, t, pj);
      detail::col_swap(v, t, pj);

      bool changed = false;
      for (int i = t + 1; i < d.rows; ++i) {
        if (d.at(i, t) == 0) continue;
        const Int q = tdiv(d.at(i, t), d.at(t, t));
        detail::row_axpy(d, i, t, q);
        detail::row_axpy(u, i, t, q);
        if (d.at(i, t) != 0) changed = true;
      }
      for (int j = t + 1; j < d.cols; ++j) {
        if (d.at(t, j) == 0) continue;
        const Int q = tdiv(d.at(t, j), d.at(t, t));
        detail::col_axpy(d, j, t, q);
        detail::col_axpy(v, j, t, q);
        if (d.at(t, j) != 0) changed = true;
      }
      if (changed) continue;

      // Pivot must divide the rest of the submatrix for the divisibility chain.
      bool fixed = true;
      for (int i = t + 1; i < d.rows && fixed; ++i)
        for (int j = t + 1; j < d.cols && fixed; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            detail::row_axpy(d, t, i, Int(-1));
            detail::row_axpy(u, t, i, Int(-1));
            fixed = false;
          }
      if (fixed) break;
    }
    if (d.at(t, t) < 0) {
      detail::row_negate(d, t);
      detail::row_negate(u, t);
    }
  }
  return {u, d, v};
}

}  // namespace crepant
