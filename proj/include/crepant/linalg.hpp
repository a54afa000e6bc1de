#pragma once

#include <optional>
#include <vector>

#include "crepant/exact.hpp"

namespace crepant {

// Exact rational linear algebra on small dense systems.

// Gauss-Jordan with rows processed in input order.  Rows that turn out
// inconsistent are skipped and the first one is recorded; remaining free
// variables are set to zero, which fixes a canonical solution.
struct LinearSolution {
  bool consistent = true;
  RatVec x;
  int rank = 0;
  int bad_row = -1;  // first inconsistent row, when !consistent
};

inline LinearSolution solve_free_zero(const std::vector<RatVec>& rows,
                                      const RatVec& rhs) {
  const std::size_t n = rows.empty() ? 0 : rows[0].size();
  std::vector<RatVec> pivot_rows;  // reduced rows, augmented with rhs
  std::vector<int> pivot_cols;
  LinearSolution out;
  out.x.assign(n, Rat(0));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    RatVec w(rows[r]);
    w.push_back(rhs[r]);
    for (std::size_t p = 0; p < pivot_rows.size(); ++p) {
      const Rat f = w[pivot_cols[p]];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= n; ++j) w[j] -= f * pivot_rows[p][j];
    }
    int pc = -1;
    for (std::size_t j = 0; j < n; ++j)
      if (w[j] != 0) {
        pc = static_cast<int>(j);
        break;
      }
    if (pc < 0) {
      if (w[n] != 0 && out.bad_row < 0) {
        out.consistent = false;
        out.bad_row = static_cast<int>(r);
      }
      continue;
    }
    const Rat inv = w[pc];
    for (std::size_t j = 0; j <= n; ++j) w[j] /= inv;
    for (std::size_t p = 0; p < pivot_rows.size(); ++p) {
      const Rat f = pivot_rows[p][pc];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= n; ++j) pivot_rows[p][j] -= f * w[j];
    }
    pivot_rows.push_back(std::move(w));
    pivot_cols.push_back(pc);
  }
  out.rank = static_cast<int>(pivot_rows.size());
  for (std::size_t p = 0; p < pivot_rows.size(); ++p)
    out.x[pivot_cols[p]] = pivot_rows[p][n];
  return out;
}

// Unique solution of a square system, if the matrix is invertible.
inline std::optional<RatVec> solve_square(const std::vector<RatVec>& rows,
                                          const RatVec& rhs) {
  const LinearSolution s = solve_free_zero(rows, rhs);
  if (!s.consistent || s.rank != static_cast<int>(rows.size()) ||
      s.rank != static_cast<int>(s.x.size()))
    return std::nullopt;
  return s.x;
}

inline std::vector<RatVec> rat_rows_of(const std::vector<Vec>& rows) {
  std::vector<RatVec> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    RatVec w(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) w[j] = Rat(r[j]);
    out.push_back(std::move(w));
  }
  return out;
}

inline int rank_of(const std::vector<RatVec>& rows) {
  if (rows.empty()) return 0;
  RatVec zero(rows.size(), Rat(0));
  return solve_free_zero(rows, zero).rank;
}

inline int rank_of_int(const std::vector<Vec>& rows) {
  return rank_of(rat_rows_of(rows));
}

// Basis of the saturated integer kernel {x in Z^n : M x = 0}: the columns of
// V in the Smith decomposition that pair with zero diagonal entries.  Because
// V is unimodular the basis spans the full kernel lattice, not a sublattice.
inline IntMat kernel_lattice_basis(const IntMat& m) {
  const SmithForm s = smith_normal_form(m);
  std::vector<int> keep;
  for (int j = 0; j < m.cols; ++j) {
    const bool zero_diag = j >= std::min(m.rows, m.cols) || s.d.at(j, j) == 0;
    if (zero_diag) keep.push_back(j);
  }
  IntMat b(m.cols, static_cast<int>(keep.size()));
  for (int k = 0; k < static_cast<int>(keep.size()); ++k)
    for (int i = 0; i < m.cols; ++i) b.at(i, k) = s.v.at(i, keep[k]);
  return b;
}

// Canonical column form of a full-column-rank basis matrix: Hermite-reduce
// the transpose, producing the same lattice with a deterministic basis.
inline IntMat column_canonical_basis(const IntMat& b) {
  const HermiteForm hf = hermite_normal_form(b.transposed());
  std::vector<int> nonzero;
  for (int i = 0; i < hf.h.rows; ++i) {
    bool z = true;
    for (int j = 0; j < hf.h.cols; ++j)
      if (hf.h.at(i, j) != 0) {
        z = false;
        break;
      }
    if (!z) nonzero.push_back(i);
  }
  IntMat out(hf.h.cols, static_cast<int>(nonzero.size()));
  for (int k = 0; k < static_cast<int>(nonzero.size()); ++k)
    for (int j = 0; j < hf.h.cols; ++j) out.at(j, k) = hf.h.at(nonzero[k], j);
  return out;
}

// Integer solution of M x = rhs via the Smith form, free coordinates zero.
inline std::optional<Vec> solve_integer(const IntMat& m, const Vec& rhs) {
  const SmithForm s = smith_normal_form(m);
  Vec urhs(m.rows, Int(0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.rows; ++j) urhs[i] += s.u.at(i, j) * rhs[j];
  Vec y(m.cols, Int(0));
  for (int i = 0; i < m.rows; ++i) {
    const Int di = (i < std::min(m.rows, m.cols)) ? s.d.at(i, i) : Int(0);
    if (di == 0) {
      if (urhs[i] != 0) return std::nullopt;
      continue;
    }
    if (urhs[i] % di != 0) return std::nullopt;
    y[i] = urhs[i] / di;
  }
  Vec x(m.cols, Int(0));
  for (int i = 0; i < m.cols; ++i)
    for (int j = 0; j < m.cols; ++j) x[i] += s.v.at(i, j) * y[j];
  return x;
}

}  // namespace crepant
