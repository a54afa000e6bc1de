#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "crepant/exact.hpp"
#include "crepant/linalg.hpp"
#include "oracles.hpp"

using namespace crepant;

namespace {

IntMat mat(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<Vec> rs;
  for (const auto& r : rows) {
    Vec v;
    for (int x : r) v.push_back(Int(x));
    rs.push_back(v);
  }
  return IntMat::from_rows(rs);
}

bool hermite_shape_ok(const IntMat& h) {
  int prev_col = -1;
  bool seen_zero_row = false;
  for (int i = 0; i < h.rows; ++i) {
    int pc = -1;
    for (int j = 0; j < h.cols; ++j)
      if (h.at(i, j) != 0) {
        pc = j;
        break;
      }
    if (pc < 0) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;       // zero rows must trail
    if (pc <= prev_col) return false;      // strictly staircased
    if (h.at(i, pc) <= 0) return false;    // positive pivot
    for (int k = 0; k < i; ++k) {
      if (h.at(k, pc) < 0) return false;   // reduced above pivot
      if (h.at(k, pc) >= h.at(i, pc)) return false;
    }
    prev_col = pc;
  }
  return true;
}

}  // namespace

TEST_CASE("rationals are canonical") {
  CHECK(make_rat(Int(4), Int(-6)) == make_rat(Int(-2), Int(3)));
  CHECK(make_rat(Int(4), Int(-6)).get_den() == 3);
  CHECK(parse_rat("10/4") == make_rat(Int(5), Int(2)));
  CHECK(parse_rat("-3") == Rat(-3));
  CHECK(rat_to_string(parse_rat("10/4")) == "5/2");
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("abc"), std::invalid_argument);
  CHECK_THROWS_AS(make_rat(Int(1), Int(0)), std::invalid_argument);
}

TEST_CASE("golden ring arithmetic") {
  const Golden phi = Golden::phi();
  CHECK(phi * phi == phi + Golden(Rat(1)));

  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int t = 0; t < 200; ++t) {
    const Golden x(Rat(d(rng)), Rat(d(rng)));
    const Golden y(Rat(d(rng)), Rat(d(rng)));
    // multiplication expands through phi^2 = phi + 1
    const Golden xy = x * y;
    CHECK(xy.a == x.a * y.a + x.b * y.b);
    CHECK(xy.b == x.a * y.b + x.b * y.a + x.b * y.b);
    // conjugation is a ring involution and multiplicative
    CHECK(x.conj().conj() == x);
    CHECK((x * y).conj() == x.conj() * y.conj());
    CHECK(x.norm() == x.a * x.a + x.a * x.b - x.b * x.b);
    // (x * conj x) must equal the rational norm embedded in the ring
    const Golden nx = x * x.conj();
    CHECK(nx.b == 0);
    CHECK(nx.a == x.norm());
  }

  // ordering: 1 < phi < 2, and conj(phi) = 1 - phi is negative
  CHECK(Golden(Rat(1)) < phi);
  CHECK(phi < Golden(Rat(2)));
  CHECK(phi.conj().sign() < 0);
  CHECK(Golden(Rat(-3), Rat(2)).sign() > 0);   // 2 phi > 3
  CHECK(Golden(Rat(-7), Rat(4)).sign() < 0);   // 4 phi < 7
  CHECK(Golden(Rat(0), Rat(0)).sign() == 0);
}

TEST_CASE("primitive vectors") {
  CHECK(primitive({Int(2), Int(4), Int(6)}) == Vec{Int(1), Int(2), Int(3)});
  CHECK(primitive({Int(1), Int(1), Int(-1)}) == Vec{Int(1), Int(1), Int(-1)});
  CHECK(primitive({Int(0), Int(-4)}) == Vec{Int(0), Int(-1)});
  CHECK_THROWS_AS(primitive({Int(0), Int(0), Int(0)}), std::invalid_argument);
}

TEST_CASE("smith normal form on pinned inputs") {
  {
    const auto s = smith_normal_form(IntMat::identity(3));
    CHECK(s.d == IntMat::identity(3));
  }
  {
    const IntMat m = mat({{1, 1, -1}, {1, -1, 1}, {-1, 1, 1}});
    const auto s = smith_normal_form(m);
    CHECK(s.diagonal() == std::vector<Int>{Int(1), Int(2), Int(2)});
    CHECK(s.u * m * s.v == s.d);
    CHECK(oracles::invariant_factors(m) ==
          std::vector<Int>{Int(1), Int(2), Int(2)});
  }
  {
    const IntMat m = mat({{2, -1, 0}, {0, 1, 0}});
    const auto s = smith_normal_form(m);
    CHECK(s.diagonal() == std::vector<Int>{Int(1), Int(2)});
    CHECK(s.d.cols == 3);
    CHECK(s.d.at(0, 2) == 0);
    CHECK(s.d.at(1, 2) == 0);
    CHECK(oracles::invariant_factors(m) == std::vector<Int>{Int(1), Int(2)});
  }
}

TEST_CASE("hermite normal form on pinned inputs") {
  CHECK(hermite_normal_form(IntMat::identity(4)).h == IntMat::identity(4));
  {
    const IntMat m = mat({{2, 0}, {0, 2}});
    CHECK(hermite_normal_form(m).h == m);
  }
  {
    const IntMat m = mat({{1, 2}, {3, 4}});
    const auto hf = hermite_normal_form(m);
    CHECK(hf.h == mat({{1, 0}, {0, 2}}));
    CHECK(hf.u * m == hf.h);
    CHECK(oracles::is_unimodular(hf.u));
    CHECK(hf.h.at(0, 0) * hf.h.at(1, 1) == abs(det(m)));
  }
}

TEST_CASE("normal forms against oracles on random matrices") {
  std::mt19937 rng(20260809);
  for (int t = 0; t < 500; ++t) {
    const IntMat m = oracles::random_matrix(rng, 4, 5);

    const auto s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(oracles::is_unimodular(s.u));
    CHECK(oracles::is_unimodular(s.v));
    for (int i = 0; i < s.d.rows; ++i)
      for (int j = 0; j < s.d.cols; ++j)
        if (i != j) CHECK(s.d.at(i, j) == 0);
    const auto diag = s.diagonal();
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
      CHECK(diag[i] >= 0);
      if (diag[i] != 0) CHECK(diag[i + 1] % diag[i] == 0);
      if (diag[i] == 0) CHECK(diag[i + 1] == 0);
    }
    CHECK(diag == oracles::invariant_factors(m));
    if (m.rows == m.cols) {
      Int prod = 1;
      for (const auto& d : diag) prod *= d;
      CHECK(prod == abs(det(m)));
    }

    const auto hf = hermite_normal_form(m);
    CHECK(hf.u * m == hf.h);
    CHECK(oracles::is_unimodular(hf.u));
    CHECK(hermite_shape_ok(hf.h));
    CHECK(hermite_normal_form(hf.h).h == hf.h);  // idempotent on its output
    if (m.rows == m.cols && det(m) != 0) {
      Int prod = 1;
      for (int i = 0; i < m.rows; ++i) prod *= hf.h.at(i, i);
      CHECK(prod == abs(det(m)));
    }
  }
}

TEST_CASE("integer kernels are saturated") {
  const IntMat m = mat({{2, -1, 0}, {0, 1, 0}});
  const IntMat k = kernel_lattice_basis(m);
  REQUIRE(k.cols == 1);
  CHECK(primitive(k.col(0)) == Vec{Int(0), Int(0), Int(1)});

  std::mt19937 rng(99);
  for (int t = 0; t < 100; ++t) {
    const IntMat a = oracles::random_matrix(rng, 4, 5);
    const IntMat k2 = kernel_lattice_basis(a);
    for (int c = 0; c < k2.cols; ++c) {
      const Vec v = k2.col(c);
      for (int i = 0; i < a.rows; ++i) CHECK(dot(a.row(i), v) == 0);
    }
    CHECK(k2.cols + rank_of_int([&] {
            std::vector<Vec> rows;
            for (int i = 0; i < a.rows; ++i) rows.push_back(a.row(i));
            return rows;
          }()) == a.cols);
  }
}

TEST_CASE("integer linear solve") {
  const IntMat m = mat({{2, 0}, {0, 3}});
  const auto x = solve_integer(m, {Int(4), Int(9)});
  REQUIRE(x.has_value());
  CHECK(*x == Vec{Int(2), Int(3)});
  CHECK_FALSE(solve_integer(m, {Int(1), Int(3)}).has_value());
}
