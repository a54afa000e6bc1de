// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion carries a wall-clock budget that is enforced.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "crepant/betti.hpp"
#include "crepant/coxeter.hpp"
#include "crepant/polytope.hpp"
#include "crepant/report.hpp"
#include "crepant/toric.hpp"
#include "crepant/twistor.hpp"
#include "oracles.hpp"

using namespace crepant;

namespace {

struct Checker {
  std::vector<std::string> failures;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

Vec iv(std::initializer_list<int> xs) {
  Vec v;
  for (int x : xs) v.push_back(Int(x));
  return v;
}

RatVec rv(std::initializer_list<int> xs) {
  RatVec v;
  for (int x : xs) v.push_back(Rat(x));
  return v;
}

HalfSpace ge(std::initializer_list<int> n, int level) {
  return HalfSpace(iv(n), Rat(level));
}

Polyhedron model_cone() {
  return Polyhedron::from_halfspaces(
      3, {ge({1, 1, -1}, 0), ge({1, -1, 1}, 0), ge({-1, 1, 1}, 0)});
}

Polyhedron a1_model() {
  return Polyhedron::from_halfspaces(
      3, {ge({2, -1, 0}, 0), ge({0, 1, 0}, 0), ge({0, 0, 1}, 0)});
}

CutSpec unit_cuts() {
  return CutSpec{{ge({1, 0, 0}, 1), ge({0, 1, 0}, 1), ge({0, 0, 1}, 1)}};
}

void criterion_1(Checker& c) {
  const Polyhedron p = model_cone();
  const auto verdicts = vertex_smoothness(p);
  c.require(verdicts.size() == 1, "expected a single vertex");
  c.require(verdicts.at(0).factors == std::vector<Int>{Int(2), Int(2)},
            "vertex group is not (2,2)");
  const auto fl = face_lattice(p);
  c.require(fl.count(1) == 3, "expected three rays");
  for (const auto& f : fl.faces(1))
    c.require(face_orbifold_group(p, f) == std::vector<Int>{Int(2)},
              "ray group is not (2)");
}

void criterion_2(Checker& c) {
  const Polyhedron r = apply_cut(model_cone(), unit_cuts()).polytope;
  const std::vector<RatVec> expected{rv({1, 1, 1}), rv({1, 1, 2}), rv({1, 2, 1}),
                                     rv({2, 1, 1})};
  c.require(r.vrep().vertices == expected, "vertex set differs from the model");
  c.require(is_delzant(vertex_smoothness(r)), "cut polytope is not Delzant");
}

void criterion_3(Checker& c) {
  const auto cp = crepancy_certificate(
      {iv({1, 1, -1}), iv({1, -1, 1}), iv({-1, 1, 1})},
      {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})});
  c.require(cp.crepant && cp.m == iv({1, 1, 1}), "triple-cut certificate wrong");
  const auto ca = crepancy_certificate({iv({2, -1, 0}), iv({0, 1, 0})},
                                       {iv({1, 0, 0})});
  c.require(ca.crepant && ca.m == iv({1, 1, 0}), "half-quotient certificate wrong");
  const auto neg = crepancy_certificate(
      {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})}, {iv({1, 1, 1})});
  c.require(!neg.crepant, "smooth-corner subdivision must fail");
  c.require(neg.violating_ray && *neg.violating_ray == iv({1, 1, 1}),
            "violating ray not reported");
  c.require(neg.pairing && *neg.pairing == Rat(3), "pairing value is not 3");
}

void criterion_4(Checker& c) {
  const Fan fan = Fan::normal_fan(apply_cut(model_cone(), unit_cuts()).polytope);
  const auto walls = interior_walls(fan);
  c.require(walls.size() == 3, "expected three interior walls");
  for (const auto& [i, j] : walls) {
    const auto w = curve_normal_bundle(fan, fan.rays[i], fan.rays[j]);
    c.require(w.a == -1 && w.b == -1, "wall splitting is not (-1,-1)");
  }
  const Fan a1fan = Fan::normal_fan(
      apply_cut(a1_model(), CutSpec{{ge({1, 0, 0}, 1)}}).polytope);
  const auto a1walls = interior_walls(a1fan);
  c.require(a1walls.size() == 1, "expected one interior wall");
  const auto w = curve_normal_bundle(a1fan, iv({1, 0, 0}), iv({0, 0, 1}));
  c.require(w.a == -2 && w.b == 0, "exceptional wall is not (-2,0)");
}

void criterion_5(Checker& c) {
  const Polyhedron r = apply_cut(model_cone(), unit_cuts()).polytope;
  const auto fl = face_lattice(r);
  int exceptional = 0;
  for (const auto& facet : fl.faces(2)) {
    if (facet.active.size() != 1) continue;
    if (r.halfspaces()[facet.active[0]].level != 1) continue;
    ++exceptional;
    const auto inv = surface_face_analysis(r, facet);
    c.require(inv.size() == 2, "exceptional face without exactly two bounded edges");
    for (const auto& e : inv) {
      c.require(e.self_intersection == -1, "edge self-intersection is not -1");
      c.require(e.lattice_length == 1, "edge lattice length is not 1");
    }
  }
  c.require(exceptional == 3, "expected three exceptional faces");
}

void criterion_6(Checker& c) {
  const auto group = sign_flip_group();
  c.require(group.size() == 8, "group order is not 8");
  for (const auto& g : group)
    for (const auto& h : group)
      c.require(fiber_action(g * h) == fiber_action(g) * fiber_action(h),
                "homomorphism table broken");
  int kernel = 0;
  for (const auto& g : group)
    if (fiber_action(g) == FiberRotation::identity()) ++kernel;
  c.require(kernel == 2, "kernel is not {+-identity}");

  std::set<std::array<int, 3>> fixed;
  for (const auto& g : group) {
    const auto fp = fixed_points(g);
    if (fp.whole_sphere) continue;
    for (const auto& p : fp.points()) fixed.insert(p.dir);
  }
  c.require(fixed.size() == 6, "fixed-point set is not six points");
  for (const auto& d : fixed)
    c.require(stabilizer(FiberPoint(d)).size() == 4, "octahedron stabilizer != 4");
  const auto orbits = octahedron_orbits();
  c.require(orbits.size() == 3, "orbit count is not 3");
  for (const auto& orbit : orbits)
    c.require(orbit.size() == 2 && orbit[0] == orbit[1].antipode(),
              "orbit is not an antipodal pair");
  c.require(stabilizer(FiberPoint({1, 1, 1})).size() == 2,
            "generic stabilizer != 2");

  std::map<std::array<int, 3>, int> hits;
  for (const auto& plane : all_coordinate_planes()) {
    const auto rep = plane_lift_fiber_points(plane);
    c.require(plane_lift_fiber_points(plane.orthogonal()) == rep,
              "complementary planes not paired");
    ++hits[rep.dir];
    ++hits[rep.antipode().dir];
  }
  c.require(hits.size() == 6, "lifts do not hit six points");
  for (const auto& [d, n] : hits) {
    c.require(n == 2, "point not hit by exactly two oriented lifts");
    c.require(fixed.count(d) == 1, "lift point is not an octahedron point");
  }
}

void criterion_7(Checker& c) {
  const CellComplex4 c600 = build_600_cell();
  c.require(c600.f_vector() == std::array<long, 4>{120, 720, 1200, 600},
            "600-cell f-vector wrong");
  c.require(c600.euler() == 0, "600-cell Euler relation broken");
  const CellComplex4 c120 = dualize(c600);
  c.require(c120.f_vector() == std::array<long, 4>{600, 1200, 720, 120},
            "120-cell f-vector wrong");
  c.require(c120.euler() == 0, "120-cell Euler relation broken");
  for (const auto& facet : c120.faces[3]) {
    c.require(facet.size() == 20, "facet vertex count != 20");
    long pentagons = 0;
    for (const auto& f2 : c120.faces[2])
      if (CellComplex4::incident(f2, facet)) {
        ++pentagons;
        c.require(f2.size() == 5, "facet 2-face is not a pentagon");
      }
    c.require(pentagons == 12, "facet pentagon count != 12");
  }
}

void criterion_8(Checker& c) {
  const CellComplex4 cube = build_hypercube();
  std::vector<std::pair<int, int>> iso;
  for (int v : cube.faces[3][0]) iso.push_back({v, v});
  const auto glued = glue_across(cube, 0, cube, 0, iso).complex;
  c.require(glued.f_vector() == std::array<long, 4>{16, 32, 24, 8},
            "4-cube regression failed");
  c.require(glued.euler() == 0, "4-cube gluing Euler relation broken");

  const auto one = glue_chain({1, GluingRule::OppositeFacets}).f_vector();
  c.require(one == std::array<long, 4>{600, 1200, 720, 120}, "chain k=1 wrong");
  const CellComplex4 two = glue_chain({2, GluingRule::OppositeFacets});
  c.require(two.f_vector() == std::array<long, 4>{1160, 2320, 1386, 226},
            "chain k=2 wrong");
  c.require(two.euler() == 0, "chain k=2 Euler relation broken");
}

void criterion_9(Checker& c) {
  c.require(resolved_betti_of_double(600, 720).b[2] == 2041,
            "resolved b2 of the doubled 120-cell is not 2041");
  c.require(resolved_betti_of_double(600, 720).b[2] == 1 + 600 + 2 * 720,
            "b2 formula mismatch");
  c.require(resolved_betti_of_double(600, 720).b[3] == 0, "b3 is not 0");

  std::mt19937 rng(9);
  std::uniform_int_distribution<int> count(0, 10), genus(0, 5);
  for (int t = 0; t < 100; ++t) {
    SingularLocusDescription d;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) d.components.push_back({genus(rng), 0});
    long db2 = 0, db3 = 0, dchi = 0;
    for (const auto& comp : d.components) {
      db2 += 1;
      db3 += 2 * comp.genus;
      dchi += 2 * (1 - comp.genus);
    }
    const auto r = resolution_deltas(d);
    c.require(r.b2 == db2 && r.b3 == db3 && r.chi == dchi,
              "deltas disagree with direct summation");
  }

  long prev_b2 = -1;
  for (int k = 1; k <= 5; ++k) {
    const auto fv = glue_chain({k, GluingRule::OppositeFacets}).f_vector();
    const auto deltas = resolution_deltas(double_to_singular_locus(fv[0], fv[2]));
    const long chi = resolved_betti_of_double(fv[0], fv[2]).chi();
    c.require(chi == base_betti_of_double().chi() + deltas.chi,
              "chi consistency failed at k=" + std::to_string(k));
    c.require(chi == 4 + 2 * (fv[0] + 2 * fv[2]),
              "chi closed form failed at k=" + std::to_string(k));
    const long b2 = resolved_betti_of_double(fv[0], fv[2]).b[2];
    c.require(b2 > prev_b2, "b2 not strictly increasing at k=" + std::to_string(k));
    prev_b2 = b2;
  }
}

void criterion_10(Checker& c) {
  std::mt19937 rng(20260809);
  for (int t = 0; t < 500; ++t) {
    const IntMat m = oracles::random_matrix(rng, 4, 5);
    const auto s = smith_normal_form(m);
    c.require(s.u * m * s.v == s.d, "U*M*V != D");
    c.require(oracles::is_unimodular(s.u) && oracles::is_unimodular(s.v),
              "transforms not unimodular");
    c.require(s.diagonal() == oracles::invariant_factors(m),
              "invariant factors disagree with the minor-gcd oracle");
    const auto hf = hermite_normal_form(m);
    c.require(hf.u * m == hf.h, "U*M != H");
    c.require(oracles::is_unimodular(hf.u), "Hermite transform not unimodular");
    c.require(hermite_normal_form(hf.h).h == hf.h, "Hermite form not idempotent");
  }

  std::mt19937 rng2(424242);
  for (int t = 0; t < 100; ++t) {
    const Polyhedron p = oracles::random_bounded_3polytope(rng2);
    auto rebuilt = oracles::hull_halfspaces(p.vrep().vertices, 3);
    auto have = p.halfspaces();
    std::sort(have.begin(), have.end());
    c.require(rebuilt == have, "H->V->H round trip failed");
  }

  std::mt19937 rng3(777);
  std::uniform_int_distribution<int> entry(-2, 2), lvl(-8, 0);
  for (int t = 0; t < 60; ++t) {
    const Polyhedron p = oracles::random_bounded_3polytope(rng3);
    CutSpec spec;
    for (int k = 0; k < 4; ++k) {
      Vec n(3);
      bool zero = true;
      for (int j = 0; j < 3; ++j) {
        n[j] = Int(entry(rng3));
        if (n[j] != 0) zero = false;
      }
      if (!zero) spec.halfspaces.emplace_back(n, Rat(lvl(rng3)));
    }
    if (spec.halfspaces.empty()) continue;
    const CutSpec red = compatibility_reduction(p, spec);
    const Polyhedron full = apply_cut(p, spec).polytope;
    const Polyhedron reduced = red.halfspaces.empty() ? p : apply_cut(p, red).polytope;
    c.require(full == reduced, "reduction changed the cut");
  }

  // complete smooth test fans: sum of self-intersections is 12 - 3n
  auto checksum = [&](const Polyhedron& q, int n) {
    Int sum = 0;
    const auto inv = polygon_edge_invariants(q);
    c.require(static_cast<int>(inv.size()) == n, "test fan edge count wrong");
    for (const auto& e : inv) sum += e.self_intersection;
    c.require(sum == 12 - 3 * n, "self-intersection sum != 12 - 3n");
  };
  checksum(Polyhedron::from_halfspaces(
               2, {HalfSpace(iv({1, 0}), Rat(0)), HalfSpace(iv({0, 1}), Rat(0)),
                   HalfSpace(iv({-1, -1}), Rat(-1))}),
           3);
  checksum(Polyhedron::from_halfspaces(
               2, {HalfSpace(iv({1, 0}), Rat(0)), HalfSpace(iv({-1, 0}), Rat(-1)),
                   HalfSpace(iv({0, 1}), Rat(0)), HalfSpace(iv({0, -1}), Rat(-1))}),
           4);
  checksum(Polyhedron::from_halfspaces(
               2, {HalfSpace(iv({1, 0}), Rat(0)), HalfSpace(iv({0, 1}), Rat(0)),
                   HalfSpace(iv({-1, 0}), Rat(-2)), HalfSpace(iv({0, -1}), Rat(-2)),
                   HalfSpace(iv({1, -1}), Rat(-1)), HalfSpace(iv({-1, 1}), Rat(-1))}),
           6);
}

struct Criterion {
  int number;
  std::string name;
  double budget_seconds;
  std::function<void(Checker&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "orbifold cone audit: vertex group (2,2), ray groups (2)", 1.0, criterion_1},
      {2, "triple cut has the pinned vertex set and is Delzant", 1.0, criterion_2},
      {3, "crepancy certificates and negative control", 1.0, criterion_3},
      {4, "wall splittings (-1,-1) x3 and (-2,0)", 1.0, criterion_4},
      {5, "exceptional faces carry two (-1)-curves of length 1", 1.0, criterion_5},
      {6, "fiber sphere group action table", 1.0, criterion_6},
      {7, "600-cell and 120-cell combinatorics", 60.0, criterion_7},
      {8, "facet gluing: 4-cube regression and chains", 60.0, criterion_8},
      {9, "Betti ledger of the doubled polytopes", 5.0, criterion_9},
      {10, "property suites: normal forms, round trips, cuts, fans", 120.0, criterion_10},
  };

  int failures = 0;
  for (const auto& cr : criteria) {
    Checker checker;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(checker);
    } catch (const std::exception& ex) {
      checker.failures.push_back(std::string("exception: ") + ex.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > cr.budget_seconds)
      checker.failures.push_back("over budget (" + std::to_string(cr.budget_seconds) +
                                 " s)");
    if (checker.failures.empty()) {
      std::printf("PASS  criterion %2d: %s (%.2f s)\n", cr.number, cr.name.c_str(),
                  secs);
    } else {
      ++failures;
      std::printf("FAIL  criterion %2d: %s (%.2f s)\n", cr.number, cr.name.c_str(),
                  secs);
      for (const auto& f : checker.failures)
        std::printf("      - %s\n", f.c_str());
    }
  }
  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
