#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "crepant/betti.hpp"

using namespace crepant;

TEST_CASE("resolution deltas on pinned descriptions") {
  {
    SingularLocusDescription d;
    d.components = {{0, 0}, {0, 0}, {0, 0}};
    const auto r = resolution_deltas(d);
    CHECK(r.b2 == 3);
    CHECK(r.b3 == 0);
    CHECK(r.chi == 6);
  }
  {
    SingularLocusDescription d;
    d.components = {{2, 5}};
    const auto r = resolution_deltas(d);
    CHECK(r.b2 == 1);
    CHECK(r.b3 == 4);
    CHECK(r.chi == -2);
  }
  {
    const auto r = resolution_deltas(SingularLocusDescription{});
    CHECK(r.b2 == 0);
    CHECK(r.b3 == 0);
    CHECK(r.chi == 0);
  }
  SingularLocusDescription bad;
  bad.components = {{-1, 0}};
  CHECK_THROWS_AS(resolution_deltas(bad), std::invalid_argument);
}

TEST_CASE("deltas against per-component summation") {
  std::mt19937 rng(2041);
  std::uniform_int_distribution<int> count(0, 12), genus(0, 6), extra(0, 9);
  for (int t = 0; t < 100; ++t) {
    SingularLocusDescription d;
    const int n = count(rng);
    for (int i = 0; i < n; ++i)
      d.components.push_back({genus(rng), extra(rng)});
    // oracle: accumulate one blow-up at a time
    long db2 = 0, db3 = 0, dchi = 0;
    for (const auto& c : d.components) {
      db2 += 1;
      db3 += 2 * c.genus;
      dchi += 2 * (1 - c.genus);
    }
    const auto r = resolution_deltas(d);
    CHECK(r.b2 == db2);
    CHECK(r.b3 == db3);
    CHECK(r.chi == dchi);
  }
}

TEST_CASE("betti vectors of the doubled polytope") {
  const BettiVector base = base_betti_of_double();
  CHECK(base.b == std::array<long, 7>{1, 0, 1, 0, 1, 0, 1});
  CHECK(base.chi() == 4);
  CHECK(base.poincare_duality_ok());

  const BettiVector res = resolved_betti_of_double(600, 720);
  CHECK(res.b[2] == 2041);
  CHECK(res.b[3] == 0);
  CHECK(res.poincare_duality_ok());

  CHECK(resolved_betti_of_double(1160, 1386).b[2] == 3933);
  CHECK(resolved_betti_of_double(0, 0).b[2] == 1);
}

TEST_CASE("chi consistency between base, deltas, and resolution") {
  std::mt19937 rng(4);
  std::uniform_int_distribution<long> vals(0, 2000);
  for (int t = 0; t < 50; ++t) {
    const long v = vals(rng), f = vals(rng);
    SingularLocusDescription d;
    d.components.assign(static_cast<std::size_t>(v + 2 * f), SingularComponent{0, 0});
    const auto deltas = resolution_deltas(d);
    CHECK(resolved_betti_of_double(v, f).chi() ==
          base_betti_of_double().chi() + deltas.chi);
    CHECK(resolved_betti_of_double(v, f).chi() == 4 + 2 * (v + 2 * f));
  }
}

TEST_CASE("uniform locus generator") {
  {
    const auto d = uniform_locus_description(5, 2);
    const auto r = resolution_deltas(d);
    CHECK(r.b2 >= 5);
    CHECK(r.b3 >= 20);
  }
  CHECK(resolution_deltas(uniform_locus_description(1, 0)).b3 == 0);
  CHECK(resolution_deltas(uniform_locus_description(3, 1)).chi == 0);
  CHECK_THROWS_AS(uniform_locus_description(0, 1), std::invalid_argument);
}
