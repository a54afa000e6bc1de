#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "crepant/coxeter.hpp"

using namespace crepant;

namespace {

// Counting oracle for one gluing junction: remove the shared facet's faces
// from both sides, then subtract one per merged pair.  The merge counts are
// read off the shared facet alone: its 2-faces merge facets, its edges merge
// 2-faces, its vertices merge edges.
std::array<long, 4> glue_counts_oracle(const std::array<long, 4>& a,
                                       const std::array<long, 4>& b,
                                       long dv, long de, long df) {
  return {
      a[0] + b[0] - 2 * dv,
      a[1] + b[1] - 2 * de - dv,
      a[2] + b[2] - 2 * df - de,
      a[3] + b[3] - 2 * 1 - df,
  };
}

long count_faces_within(const CellComplex4& c, int dim, const std::vector<int>& facet) {
  long n = 0;
  for (const auto& f : c.faces[dim])
    if (CellComplex4::incident(f, facet)) ++n;
  return n;
}

}  // namespace

TEST_CASE("600-cell construction") {
  const Cell600 g = build_600_cell_geometry();
  CHECK(g.complex.f_vector() == std::array<long, 4>{120, 720, 1200, 600});
  CHECK(g.complex.euler() == 0);

  // unit vertices, 12 neighbours each
  for (const auto& v : g.vertices) CHECK(v.inner(v) == Golden(Rat(1)));
  std::vector<int> degree(120, 0);
  for (const auto& e : g.complex.faces[1]) {
    ++degree[e[0]];
    ++degree[e[1]];
  }
  for (int d : degree) CHECK(d == 12);

  // the vertex set is a group of unit quaternions
  const GoldenPoint& a = g.vertices[7];
  const GoldenPoint& b = g.vertices[42];
  const GoldenPoint prod = a * b;
  CHECK(std::count(g.vertices.begin(), g.vertices.end(), prod) == 1);
  CHECK(std::count(g.vertices.begin(), g.vertices.end(), a.conj()) == 1);
}

TEST_CASE("dualization") {
  const CellComplex4 c600 = build_600_cell();
  const CellComplex4 c120 = dualize(c600);
  CHECK(c120.f_vector() == std::array<long, 4>{600, 1200, 720, 120});
  CHECK(c120.euler() == 0);
  CHECK(dualize(c120) == c600);

  const CellComplex4 cube = build_hypercube();
  CHECK(cube.f_vector() == std::array<long, 4>{16, 32, 24, 8});
  CHECK(dualize(cube).f_vector() == std::array<long, 4>{8, 24, 32, 16});
  CHECK(dualize(dualize(cube)) == cube);
}

TEST_CASE("120-cell facet regularity") {
  const CellComplex4 c120 = dualize(build_600_cell());
  for (const auto& facet : c120.faces[3]) {
    CHECK(facet.size() == 20);
    CHECK(count_faces_within(c120, 1, facet) == 30);
    long pentagons = 0;
    for (const auto& f2 : c120.faces[2])
      if (CellComplex4::incident(f2, facet)) {
        ++pentagons;
        CHECK(f2.size() == 5);
      }
    CHECK(pentagons == 12);
  }
  // simple polytope: every vertex in 4 facets and 4 edges
  std::vector<int> in_facets(600, 0), in_edges(600, 0);
  for (const auto& facet : c120.faces[3])
    for (int v : facet) ++in_facets[v];
  for (const auto& e : c120.faces[1])
    for (int v : e) ++in_edges[v];
  for (int v = 0; v < 600; ++v) {
    CHECK(in_facets[v] == 4);
    CHECK(in_edges[v] == 4);
  }
}

TEST_CASE("gluing two 4-cubes across a facet") {
  const CellComplex4 cube = build_hypercube();
  // facet 0 and the identity pairing of its vertices
  const auto& facet = cube.faces[3][0];
  std::vector<std::pair<int, int>> iso;
  for (int v : facet) iso.push_back({v, v});
  const GlueResult res = glue_across(cube, 0, cube, 0, iso);
  CHECK(res.complex.f_vector() == std::array<long, 4>{16, 32, 24, 8});
  CHECK(res.complex.euler() == 0);
  CHECK(res.complex.f_vector() == build_hypercube().f_vector());

  // oracle: cube facet has 8 vertices, 12 edges, 6 squares
  CHECK(res.complex.f_vector() ==
        glue_counts_oracle(cube.f_vector(), cube.f_vector(), 8, 12, 6));
}

TEST_CASE("chains of 120-cells") {
  const CellComplex4 single = glue_chain({1, GluingRule::OppositeFacets});
  CHECK(single == dualize(build_600_cell()));

  const CellComplex4 two = glue_chain({2, GluingRule::OppositeFacets});
  CHECK(two.f_vector() == std::array<long, 4>{1160, 2320, 1386, 226});
  CHECK(two.euler() == 0);

  // oracle with the dodecahedral facet counts (20, 30, 12)
  CHECK(two.f_vector() ==
        glue_counts_oracle(single.f_vector(), single.f_vector(), 20, 30, 12));

  const CellComplex4 three = glue_chain({3, GluingRule::OppositeFacets});
  CHECK(three.f_vector() ==
        glue_counts_oracle(two.f_vector(), single.f_vector(), 20, 30, 12));
  CHECK(three.euler() == 0);

  // strict monotonicity of V and F in the chain length
  std::array<long, 4> prev = single.f_vector();
  for (int k = 2; k <= 4; ++k) {
    const auto fv = glue_chain({k, GluingRule::OppositeFacets}).f_vector();
    CHECK(fv[0] > prev[0]);
    CHECK(fv[2] > prev[2]);
    CHECK(fv[0] - fv[1] + fv[2] - fv[3] == 0);
    prev = fv;
  }
}

TEST_CASE("chain validation") {
  CHECK_THROWS_AS(glue_chain({0, GluingRule::OppositeFacets}),
                  std::invalid_argument);
  // adjacent gluing facets share a pentagon, so middle cells reject them
  CHECK_THROWS_AS(glue_chain({3, GluingRule::AdjacentFacets}), std::domain_error);
  // with only two cells there is no middle cell, and any facet pair works
  const CellComplex4 two = glue_chain({2, GluingRule::AdjacentFacets});
  CHECK(two.f_vector() == std::array<long, 4>{1160, 2320, 1386, 226});
  CHECK(two.euler() == 0);
}

TEST_CASE("doubling the polytope describes the singular locus") {
  {
    const auto d = double_to_singular_locus(600, 720);
    CHECK(d.component_count() == 2040);
    CHECK(d.genus_sum() == 0);
  }
  CHECK(double_to_singular_locus(0, 0).component_count() == 0);
  CHECK(double_to_singular_locus(16, 24).component_count() == 64);
  CHECK_THROWS_AS(double_to_singular_locus(-1, 0), std::invalid_argument);
}
