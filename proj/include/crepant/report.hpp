#pragma once

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "crepant/betti.hpp"
#include "crepant/coxeter.hpp"
#include "crepant/json_io.hpp"
#include "crepant/polytope.hpp"
#include "crepant/toric.hpp"
#include "crepant/twistor.hpp"

namespace crepant {

// Report builders shared by the command line tool and the test suites.  All
// reports are deterministic: object keys are sorted by the JSON library and
// every array is emitted in a canonical order.

constexpr int kSchemaVersion = 1;

namespace report_detail {

inline json point_json(const RatVec& v) { return ratvec_to_json(v); }

inline std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

inline std::string point_str(const RatVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_num().get_str();
    if (v[i].get_den() != 1) s += "/" + v[i].get_den().get_str();
  }
  return s + ")";
}

inline std::string factors_str(const std::vector<Int>& fs) {
  if (fs.empty()) return "trivial";
  std::string s = "(";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) s += ",";
    s += fs[i].get_str();
  }
  return s + ")";
}

inline json verdict_json(const VertexVerdict& v) {
  json out;
  out["vertex"] = point_json(v.vertex);
  switch (v.status) {
    case VertexVerdict::Status::Smooth:
      out["status"] = "smooth";
      break;
    case VertexVerdict::Status::Orbifold:
      out["status"] = "orbifold";
      break;
    case VertexVerdict::Status::NonSimple:
      out["status"] = "non_simple";
      break;
  }
  json fs = json::array();
  for (const auto& f : v.factors) fs.push_back(int_to_json(f));
  out["factors"] = fs;
  return out;
}

}  // namespace report_detail

// ---------------------------------------------------------------------------
// Singular-face audit and the cut derived from it.
// ---------------------------------------------------------------------------
struct SingularFaceInfo {
  Face face;
  std::vector<Int> factors;
  // For singular 1-faces only: the distinguished cutting functional, the
  // primitive sum of the active facet normals, normalized to vanish there.
  std::optional<Vec> cut_normal;
  Rat value_on_face;
};

inline std::vector<SingularFaceInfo> singular_faces(const Polyhedron& p,
                                                    const FaceLattice& fl) {
  std::vector<SingularFaceInfo> out;
  for (int d = 0; d < p.ambient_dim(); ++d)
    for (const auto& f : fl.faces(d)) {
      if (static_cast<int>(f.active.size()) != p.ambient_dim() - d) continue;
      auto factors = face_orbifold_group(p, f);
      if (factors.empty()) continue;
      SingularFaceInfo info;
      info.face = f;
      info.factors = std::move(factors);
      if (d == 1) {
        Vec sum(p.ambient_dim(), Int(0));
        for (int i : f.active)
          for (int j = 0; j < p.ambient_dim(); ++j)
            sum[j] += p.halfspaces()[i].normal[j];
        info.cut_normal = primitive(sum);
        info.value_on_face =
            dot_rat(*info.cut_normal, p.vrep().vertices[f.vertex_members[0]]);
      }
      out.push_back(std::move(info));
    }
  return out;
}

struct ResolveOptions {
  Rat epsilon = Rat(1);
};

// End-to-end resolution pipeline: audit, derive the cut from the singular
// one-dimensional faces, validate the cut level, re-audit, and attach
// crepancy certificates, wall splittings, and exceptional-face analyses.
inline json run_resolve(const Polyhedron& input, const ResolveOptions& opt) {
  using report_detail::verdict_json;
  if (opt.epsilon <= 0)
    throw std::invalid_argument("resolve: cut level epsilon must be positive");
  if (input.is_empty() || !input.is_full_dimensional())
    throw std::domain_error("resolve: input must be nonempty and full-dimensional");

  json rep;
  rep["schema_version"] = kSchemaVersion;
  rep["epsilon"] = rat_to_json(opt.epsilon);
  rep["input"] = polyhedron_to_json(input);

  const auto before = vertex_smoothness(input);
  for (const auto& v : before)
    if (v.status == VertexVerdict::Status::NonSimple)
      throw std::domain_error("resolve: input has a non-simple vertex at " +
                              report_detail::point_str(v.vertex));
  json before_json;
  before_json["delzant"] = is_delzant(before);
  before_json["vertices"] = json::array();
  for (const auto& v : before) before_json["vertices"].push_back(verdict_json(v));

  const FaceLattice fl = face_lattice(input);
  const auto singular = singular_faces(input, fl);
  before_json["singular_faces"] = json::array();
  for (const auto& s : singular) {
    json e;
    e["dim"] = s.face.dim;
    e["point"] = report_detail::point_json(
        input.vrep().vertices[s.face.vertex_members[0]]);
    json fs = json::array();
    for (const auto& f : s.factors) fs.push_back(int_to_json(f));
    e["factors"] = fs;
    before_json["singular_faces"].push_back(std::move(e));
  }
  rep["before"] = std::move(before_json);

  if (singular.empty()) {
    rep["status"] = "already_delzant";
    rep["message"] = "already Delzant, no cut applied";
    return rep;
  }

  // One cut per singular 1-face, at level epsilon above the face.
  CutSpec spec;
  std::vector<const SingularFaceInfo*> cut_sources;
  for (const auto& s : singular) {
    if (!s.cut_normal) continue;
    spec.halfspaces.emplace_back(*s.cut_normal, s.value_on_face + opt.epsilon);
    cut_sources.push_back(&s);
  }
  if (spec.halfspaces.empty())
    throw std::domain_error(
        "resolve: singular faces present but none of dimension one to cut along");
  rep["cut"] = cutspec_to_json(spec);

  const CutResult cut = apply_cut(input, spec);
  rep["vacuous"] = json::array();
  for (auto i : cut.vacuous) rep["vacuous"].push_back(i);
  const Polyhedron& resolved = cut.polytope;

  // Level feasibility: each new facet must avoid every singular face.
  for (std::size_t ci = 0; ci < spec.halfspaces.size(); ++ci) {
    const auto& h = spec.halfspaces[ci];
    for (const auto& s : singular) {
      std::vector<HalfSpace> sys = resolved.halfspaces();
      sys.emplace_back(h.normal, h.level);
      sys.emplace_back(negated(h.normal), -h.level);
      for (int ai : s.face.active) {
        const auto& hf = input.halfspaces()[ai];
        sys.emplace_back(hf.normal, hf.level);
        sys.emplace_back(negated(hf.normal), -hf.level);
      }
      if (!Polyhedron::from_halfspaces(input.ambient_dim(), sys).is_empty())
        throw std::domain_error(
            "resolve: cut level " + rat_to_string(opt.epsilon) +
            " is infeasible: the new facet for " + report_detail::vec_str(h.normal) +
            " meets a singular face");
    }
  }

  const auto after = vertex_smoothness(resolved);
  json after_json;
  after_json["delzant"] = is_delzant(after);
  after_json["polyhedron"] = polyhedron_to_json(resolved);
  after_json["vertices"] = json::array();
  for (const auto& v : after) after_json["vertices"].push_back(verdict_json(v));
  rep["after"] = std::move(after_json);
  rep["status"] = is_delzant(after) ? "resolved" : "cut_applied_still_singular";

  // Crepancy certificates, one per singular face.
  rep["certificates"] = json::array();
  auto cert_json = [&](int face_dim, const std::vector<Vec>& old_rays,
                       const std::vector<Vec>& new_rays) {
    const auto c = crepancy_certificate(old_rays, new_rays);
    json e;
    e["face_dim"] = face_dim;
    e["old_rays"] = json::array();
    for (const auto& r : old_rays) e["old_rays"].push_back(vec_to_json(r));
    e["new_rays"] = json::array();
    for (const auto& r : new_rays) e["new_rays"].push_back(vec_to_json(r));
    e["crepant"] = c.crepant;
    if (c.crepant) {
      e["m"] = vec_to_json(c.m);
    } else {
      e["reason"] = c.reason;
      if (c.violating_ray) e["violating_ray"] = vec_to_json(*c.violating_ray);
      if (c.pairing) e["pairing"] = rat_to_json(*c.pairing);
    }
    return e;
  };
  for (const auto& s : singular) {
    std::vector<Vec> old_rays;
    for (int i : s.face.active) old_rays.push_back(input.halfspaces()[i].normal);
    std::vector<Vec> new_rays;
    if (s.face.dim == 1) {
      new_rays.push_back(*s.cut_normal);
    } else {
      for (const auto* src : cut_sources)
        if (std::includes(src->face.vertex_members.begin(),
                          src->face.vertex_members.end(),
                          s.face.vertex_members.begin(),
                          s.face.vertex_members.end()))
          new_rays.push_back(*src->cut_normal);
    }
    if (new_rays.empty()) continue;
    rep["certificates"].push_back(cert_json(s.face.dim, old_rays, new_rays));
  }

  // Wall splittings of the resolved fan, coefficients in ascending order.
  const Fan fan = Fan::normal_fan(resolved);
  rep["walls"] = json::array();
  for (const auto& [i, j] : interior_walls(fan)) {
    WallRelation w = curve_normal_bundle(fan, fan.rays[i], fan.rays[j]);
    if (w.b < w.a) {
      std::swap(w.a, w.b);
      std::swap(w.u1, w.u2);
    }
    json e;
    e["rays"] = json::array({vec_to_json(w.u1), vec_to_json(w.u2)});
    std::vector<Vec> flank{w.u3, w.u4};
    std::sort(flank.begin(), flank.end(), vec_less);
    e["flanking"] = json::array({vec_to_json(flank[0]), vec_to_json(flank[1])});
    e["coefficients"] = json::array({int_to_json(w.a), int_to_json(w.b)});
    rep["walls"].push_back(std::move(e));
  }

  // Exceptional 2-faces: the facets contributed by the cut.
  const FaceLattice fl_after = face_lattice(resolved);
  rep["exceptional_faces"] = json::array();
  for (const auto& facet : fl_after.faces(input.ambient_dim() - 1)) {
    if (facet.active.size() != 1) continue;
    const auto& h = resolved.halfspaces()[facet.active[0]];
    bool from_cut = false;
    for (const auto& ch : spec.halfspaces)
      if (ch == h) from_cut = true;
    if (!from_cut) continue;
    json e;
    e["halfspace"] = halfspace_to_json(h);
    e["edges"] = json::array();
    for (const auto& edge : surface_face_analysis(resolved, facet)) {
      json ej;
      ej["from"] = report_detail::point_json(edge.from);
      ej["to"] = report_detail::point_json(edge.to);
      ej["self_intersection"] = int_to_json(edge.self_intersection);
      ej["lattice_length"] = rat_to_json(edge.lattice_length);
      e["edges"].push_back(std::move(ej));
    }
    rep["exceptional_faces"].push_back(std::move(e));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Twistor fiber report.
// ---------------------------------------------------------------------------
inline json run_fiber_report() {
  json rep;
  rep["schema_version"] = kSchemaVersion;
  const auto group = sign_flip_group();

  rep["group"] = json::array();
  for (const auto& g : group) {
    json e;
    e["signs"] = json(g.signs);
    const auto r = fiber_action(g);
    e["matrix"] = json::array();
    for (const auto& row : r.m) e["matrix"].push_back(json(row));
    const auto fp = fixed_points(g);
    if (fp.whole_sphere) {
      e["fixed"] = "all";
    } else {
      const auto pts = fp.points();
      e["fixed"] = json::array({json(pts[0].dir), json(pts[1].dir)});
    }
    rep["group"].push_back(std::move(e));
  }

  rep["kernel"] = json::array();
  for (const auto& g : group)
    if (fiber_action(g) == FiberRotation::identity())
      rep["kernel"].push_back(json(g.signs));

  rep["octahedron_orbits"] = json::array();
  for (const auto& orbit : octahedron_orbits()) {
    json o = json::array();
    for (const auto& p : orbit) o.push_back(json(p.dir));
    rep["octahedron_orbits"].push_back(std::move(o));
  }

  rep["stabilizer_orders"] = json::array();
  for (const auto& orbit : octahedron_orbits())
    for (const auto& p : orbit)
      rep["stabilizer_orders"].push_back(json{
          {"point", json(p.dir)},
          {"order", stabilizer(p).size()}});
  rep["generic_stabilizer_order"] = stabilizer(FiberPoint({1, 1, 1})).size();

  rep["plane_lifts"] = json::array();
  for (const auto& plane : all_coordinate_planes()) {
    const FiberPoint rep_pt = plane_lift_fiber_points(plane);
    rep["plane_lifts"].push_back(json{
        {"plane", json::array({plane.i, plane.j})},
        {"pair", json::array({json(rep_pt.dir), json(rep_pt.antipode().dir)})}});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Betti and chain reports.
// ---------------------------------------------------------------------------
inline json run_betti_report(const SingularLocusDescription& desc,
                             std::optional<std::pair<long, long>> doubled) {
  json rep;
  rep["schema_version"] = kSchemaVersion;
  rep["input"] = locus_to_json(desc);
  rep["n"] = desc.component_count();
  rep["m"] = desc.genus_sum();
  const auto d = resolution_deltas(desc);
  rep["deltas"] = json{{"b2", d.b2}, {"b3", d.b3}, {"chi", d.chi}};
  if (doubled) {
    const auto [v, f] = *doubled;
    const BettiVector base = base_betti_of_double();
    const BettiVector res = resolved_betti_of_double(v, f);
    rep["doubled"] = json{
        {"V", v},
        {"F", f},
        {"base", json(base.b)},
        {"resolved", json(res.b)},
        {"base_chi", base.chi()},
        {"resolved_chi", res.chi()},
    };
  }
  return rep;
}

inline json run_coxeter_chain(int k, GluingRule rule = GluingRule::OppositeFacets) {
  const CellComplex4 chain = glue_chain({k, rule});
  const auto fv = chain.f_vector();
  json rep;
  rep["schema_version"] = kSchemaVersion;
  rep["chain_length"] = k;
  rep["gluing"] = rule == GluingRule::OppositeFacets ? "opposite" : "adjacent";
  // Chain combinatorics for k >= 2 depend on the facet-choice convention;
  // flagged so downstream consumers know which one produced the numbers.
  rep["convention_dependent"] = k >= 2;
  rep["V"] = fv[0];
  rep["E"] = fv[1];
  rep["F"] = fv[2];
  rep["C"] = fv[3];
  rep["euler"] = chain.euler();
  rep["b2_of_resolution"] = resolved_betti_of_double(fv[0], fv[2]).b[2];
  return rep;
}

inline json run_coxeter_selftest() {
  const CellComplex4 cube = build_hypercube();
  const auto& facet = cube.faces[3][0];
  std::vector<std::pair<int, int>> iso;
  for (int v : facet) iso.push_back({v, v});
  const auto glued = glue_across(cube, 0, cube, 0, iso).complex;
  json rep;
  rep["schema_version"] = kSchemaVersion;
  rep["glued_f_vector"] = json(glued.f_vector());
  rep["expected"] = json(std::array<long, 4>{16, 32, 24, 8});
  rep["euler"] = glued.euler();
  rep["pass"] = glued.f_vector() == std::array<long, 4>{16, 32, 24, 8} &&
                glued.euler() == 0;
  return rep;
}

// ---------------------------------------------------------------------------
// The one-shot verification suite.
// ---------------------------------------------------------------------------
struct VerifyOptions {
  std::string section;       // run only checks whose section matches
  bool negative_control = false;  // perturb one expectation to prove failure
};

struct VerifyOutcome {
  json report;
  int failures = 0;
};

namespace report_detail {

struct Check {
  std::string id, section;
  std::function<std::pair<std::string, std::string>()> run;  // expected, computed
};

inline Polyhedron model_cone() {
  return Polyhedron::from_halfspaces(
      3, {HalfSpace({Int(1), Int(1), Int(-1)}, Rat(0)),
          HalfSpace({Int(1), Int(-1), Int(1)}, Rat(0)),
          HalfSpace({Int(-1), Int(1), Int(1)}, Rat(0))});
}

inline Polyhedron a1_model() {
  return Polyhedron::from_halfspaces(
      3, {HalfSpace({Int(2), Int(-1), Int(0)}, Rat(0)),
          HalfSpace({Int(0), Int(1), Int(0)}, Rat(0)),
          HalfSpace({Int(0), Int(0), Int(1)}, Rat(0))});
}

inline CutSpec unit_cuts() {
  return CutSpec{{HalfSpace({Int(1), Int(0), Int(0)}, Rat(1)),
                  HalfSpace({Int(0), Int(1), Int(0)}, Rat(1)),
                  HalfSpace({Int(0), Int(0), Int(1)}, Rat(1))}};
}

inline std::string points_str(const std::vector<RatVec>& pts) {
  std::string s;
  for (const auto& p : pts) {
    if (!s.empty()) s += " ";
    s += point_str(p);
  }
  return s;
}

inline std::string vecs_str(const std::vector<Vec>& vs) {
  std::string s;
  for (const auto& v : vs) {
    if (!s.empty()) s += " ";
    s += vec_str(v);
  }
  return s;
}

inline std::vector<Check> verify_checks(bool negative_control) {
  std::vector<Check> checks;
  auto add = [&](std::string id, std::string section, auto fn) {
    checks.push_back({std::move(id), std::move(section), std::move(fn)});
  };

  // --- twistor fiber ---
  add("fiber-homomorphism-64", "2.3", [] {
    const auto group = sign_flip_group();
    int good = 0;
    for (const auto& g : group)
      for (const auto& h : group)
        if (fiber_action(g * h) == fiber_action(g) * fiber_action(h)) ++good;
    return std::pair<std::string, std::string>("64/64 products match",
                                               std::to_string(good) + "/64 products match");
  });
  add("fiber-kernel", "2.3", [] {
    const auto group = sign_flip_group();
    std::vector<std::string> kernel;
    for (const auto& g : group)
      if (fiber_action(g) == FiberRotation::identity()) {
        std::string s;
        for (int x : g.signs) s += x > 0 ? '+' : '-';
        kernel.push_back(s);
      }
    std::string got;
    for (const auto& s : kernel) got += s + " ";
    return std::pair<std::string, std::string>("---- ++++ ", got);
  });
  add("fiber-octahedron-fixed-points", "2.3", [] {
    std::set<std::array<int, 3>> pts;
    for (const auto& g : sign_flip_group()) {
      const auto fp = fixed_points(g);
      if (fp.whole_sphere) continue;
      for (const auto& p : fp.points()) pts.insert(p.dir);
    }
    int axis_pts = 0;
    for (const auto& d : pts) {
      int nz = 0;
      for (int x : d) nz += x != 0;
      if (nz == 1) ++axis_pts;
    }
    return std::pair<std::string, std::string>(
        "6 points, 6 on axes", std::to_string(pts.size()) + " points, " +
                                   std::to_string(axis_pts) + " on axes");
  });
  add("fiber-stabilizer-orders", "2.3", [] {
    bool all4 = true;
    for (const auto& orbit : octahedron_orbits())
      for (const auto& p : orbit)
        if (stabilizer(p).size() != 4) all4 = false;
    const auto generic = stabilizer(FiberPoint({1, 1, 1})).size();
    return std::pair<std::string, std::string>(
        "octahedron order 4, generic order 2",
        std::string(all4 ? "octahedron order 4" : "octahedron order broken") +
            ", generic order " + std::to_string(generic));
  });
  add("fiber-orbit-partition", "2.3", [] {
    const auto orbits = octahedron_orbits();
    int pairs = 0;
    std::set<std::array<int, 3>> seen;
    for (const auto& orbit : orbits) {
      if (orbit.size() == 2 && orbit[0] == orbit[1].antipode()) ++pairs;
      for (const auto& p : orbit) seen.insert(p.dir);
    }
    return std::pair<std::string, std::string>(
        "3 antipodal pairs covering 6 points",
        std::to_string(pairs) + " antipodal pairs covering " +
            std::to_string(seen.size()) + " points");
  });
  add("fiber-plane-lifts", "2.3", [] {
    std::map<std::array<int, 3>, int> hits;
    bool complements_paired = true;
    for (const auto& plane : all_coordinate_planes()) {
      const auto rep = plane_lift_fiber_points(plane);
      if (!(plane_lift_fiber_points(plane.orthogonal()) == rep))
        complements_paired = false;
      ++hits[rep.dir];
      ++hits[rep.antipode().dir];
    }
    bool two_each = true;
    for (const auto& [d, c] : hits)
      if (c != 2) two_each = false;
    return std::pair<std::string, std::string>(
        "12 lifts on 6 points, 2 per point, complements paired",
        "12 lifts on " + std::to_string(hits.size()) + " points, " +
            (two_each ? "2 per point" : "uneven") + ", " +
            (complements_paired ? "complements paired" : "complements split"));
  });

  // --- local toric models ---
  add("model-p-vertex-enumeration", "3.1", [] {
    const Polyhedron p = model_cone();
    const auto& vr = p.vrep();
    return std::pair<std::string, std::string>(
        "vertices (0,0,0) rays (0,1,1) (1,0,1) (1,1,0)",
        "vertices " + points_str(vr.vertices) + " rays " + vecs_str(vr.rays));
  });
  add("model-p-vertex-group", "3.1", [] {
    const auto verdicts = vertex_smoothness(model_cone());
    return std::pair<std::string, std::string>(
        "factors (2,2)", "factors " + factors_str(verdicts.at(0).factors));
  });
  add("model-p-ray-groups", "3.1", [] {
    const Polyhedron p = model_cone();
    const auto fl = face_lattice(p);
    std::string got;
    for (const auto& f : fl.faces(1))
      got += factors_str(face_orbifold_group(p, f)) + " ";
    return std::pair<std::string, std::string>("(2) (2) (2) ", got);
  });
  add("model-r-vertices", "3.1", [negative_control] {
    const auto cut = apply_cut(model_cone(), unit_cuts());
    const std::string expected = negative_control
                                     ? "(1,1,1) (1,1,2) (1,2,1) (2,2,2)"
                                     : "(1,1,1) (1,1,2) (1,2,1) (2,1,1)";
    return std::pair<std::string, std::string>(
        expected, points_str(cut.polytope.vrep().vertices));
  });
  add("model-r-delzant", "3.1", [] {
    const auto cut = apply_cut(model_cone(), unit_cuts());
    const auto verdicts = vertex_smoothness(cut.polytope);
    int smooth = 0;
    for (const auto& v : verdicts)
      if (v.status == VertexVerdict::Status::Smooth) ++smooth;
    return std::pair<std::string, std::string>(
        "4/4 vertices smooth",
        std::to_string(smooth) + "/" + std::to_string(verdicts.size()) +
            " vertices smooth");
  });
  add("model-r-bounded-edges", "3.1", [] {
    const auto cut = apply_cut(model_cone(), unit_cuts());
    const auto fl = face_lattice(cut.polytope);
    std::string got;
    for (const auto& e : fl.faces(1)) {
      if (!e.ray_members.empty()) continue;
      got += point_str(cut.polytope.vrep().vertices[e.vertex_members[0]]) + "-" +
             point_str(cut.polytope.vrep().vertices[e.vertex_members[1]]) + " ";
    }
    return std::pair<std::string, std::string>(
        "(1,1,1)-(1,1,2) (1,1,1)-(1,2,1) (1,1,1)-(2,1,1) ", got);
  });
  add("model-r-face-restriction", "3.1", [] {
    const auto cut = apply_cut(model_cone(), unit_cuts());
    const auto fl = face_lattice(cut.polytope);
    std::string got = "not found";
    for (const auto& facet : fl.faces(2)) {
      if (facet.active.size() != 1) continue;
      const auto& h = cut.polytope.halfspaces()[facet.active[0]];
      if (h.normal != Vec{Int(1), Int(0), Int(0)}) continue;
      const Polyhedron q = restrict_to_face(cut.polytope, facet);
      std::string s;
      for (const auto& hh : q.halfspaces())
        s += vec_str(hh.normal) + ">=" + rat_to_string(hh.level) + " ";
      got = s;
    }
    return std::pair<std::string, std::string>(
        "(-1,1)>=-1/1 (0,1)>=0/1 (1,-1)>=-1/1 (1,0)>=0/1 ", got);
  });
  add("model-r-walls", "3.1", [] {
    const auto cut = apply_cut(model_cone(), unit_cuts());
    const Fan fan = Fan::normal_fan(cut.polytope);
    std::string got;
    for (const auto& [i, j] : interior_walls(fan)) {
      const auto w = curve_normal_bundle(fan, fan.rays[i], fan.rays[j]);
      got += "(" + w.a.get_str() + "," + w.b.get_str() + ") ";
    }
    return std::pair<std::string, std::string>("(-1,-1) (-1,-1) (-1,-1) ", got);
  });
  add("model-r-exceptional-curves", "3.1", [] {
    const auto cut = apply_cut(model_cone(), unit_cuts());
    const auto fl = face_lattice(cut.polytope);
    int faces = 0, good_edges = 0, edges = 0;
    for (const auto& facet : fl.faces(2)) {
      if (facet.active.size() != 1) continue;
      const auto& h = cut.polytope.halfspaces()[facet.active[0]];
      if (h.level != 1) continue;
      ++faces;
      for (const auto& e : surface_face_analysis(cut.polytope, facet)) {
        ++edges;
        if (e.self_intersection == -1 && e.lattice_length == 1) ++good_edges;
      }
    }
    return std::pair<std::string, std::string>(
        "3 faces, 6 edges, all (-1)-curves of length 1",
        std::to_string(faces) + " faces, " + std::to_string(edges) + " edges, " +
            (good_edges == edges ? "all (-1)-curves of length 1" : "mixed"));
  });
  add("model-a1-ray-group", "3.1", [] {
    const Polyhedron p = a1_model();
    const auto fl = face_lattice(p);
    std::string got = "not found";
    for (const auto& f : fl.faces(1)) {
      if (f.ray_members.size() != 1) continue;
      if (p.vrep().rays[f.ray_members[0]] != Vec{Int(0), Int(0), Int(1)}) continue;
      got = factors_str(face_orbifold_group(p, f));
    }
    return std::pair<std::string, std::string>("(2)", got);
  });
  add("model-a1-cut-vertices", "3.1", [] {
    const auto cut =
        apply_cut(a1_model(), CutSpec{{HalfSpace({Int(1), Int(0), Int(0)}, Rat(1))}});
    return std::pair<std::string, std::string>(
        "(1,0,0) (1,2,0)", points_str(cut.polytope.vrep().vertices));
  });
  add("crepancy-p", "3.1", [] {
    const auto c = crepancy_certificate(
        {{Int(1), Int(1), Int(-1)}, {Int(1), Int(-1), Int(1)}, {Int(-1), Int(1), Int(1)}},
        {{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}});
    return std::pair<std::string, std::string>(
        "m=(1,1,1)", c.crepant ? "m=" + vec_str(c.m) : "no certificate");
  });
  add("crepancy-a1", "3.1", [] {
    const auto c = crepancy_certificate({{Int(2), Int(-1), Int(0)}, {Int(0), Int(1), Int(0)}},
                                        {{Int(1), Int(0), Int(0)}});
    return std::pair<std::string, std::string>(
        "m=(1,1,0)", c.crepant ? "m=" + vec_str(c.m) : "no certificate");
  });
  add("crepancy-negative-control", "3.1", [] {
    const auto c = crepancy_certificate(
        {{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}},
        {{Int(1), Int(1), Int(1)}});
    std::string got = "certificate found";
    if (!c.crepant && c.violating_ray && c.pairing)
      got = "fails on " + vec_str(*c.violating_ray) + " with pairing " +
            rat_to_string(*c.pairing);
    return std::pair<std::string, std::string>(
        "fails on (1,1,1) with pairing 3/1", got);
  });

  // --- cutting compatibility ---
  add("compat-reduction-boundary-contact", "3.2", [] {
    const auto cut = apply_cut(model_cone(), unit_cuts());
    const CutSpec spec{{HalfSpace({Int(1), Int(0), Int(0)}, Rat(1))}};
    const auto red = compatibility_reduction(cut.polytope, spec);
    return std::pair<std::string, std::string>(
        "1 halfspace retained",
        std::to_string(red.halfspaces.size()) + " halfspace retained");
  });
  add("compat-reduction-strict", "3.2", [] {
    const auto cube = Polyhedron::from_halfspaces(
        3, {HalfSpace({Int(1), Int(0), Int(0)}, Rat(0)),
            HalfSpace({Int(-1), Int(0), Int(0)}, Rat(-1)),
            HalfSpace({Int(0), Int(1), Int(0)}, Rat(0)),
            HalfSpace({Int(0), Int(-1), Int(0)}, Rat(-1)),
            HalfSpace({Int(0), Int(0), Int(1)}, Rat(0)),
            HalfSpace({Int(0), Int(0), Int(-1)}, Rat(-1))});
    const CutSpec spec{{HalfSpace({Int(1), Int(0), Int(0)}, Rat(-3)),
                        HalfSpace({Int(0), Int(1), Int(0)}, make_rat(Int(1), Int(2)))}};
    const auto red = compatibility_reduction(cube, spec);
    std::string got;
    for (const auto& h : red.halfspaces)
      got += vec_str(h.normal) + ">=" + rat_to_string(h.level) + " ";
    return std::pair<std::string, std::string>("(0,1,0)>=1/2 ", got);
  });
  add("semilocal-normalized-cover", "3.2", [] {
    const CuttingChart corner{
        "corner",
        {{"x", {Int(1), Int(0), Int(0)}},
         {"y", {Int(0), Int(1), Int(0)}},
         {"z", {Int(0), Int(0), Int(1)}}},
        {Rat(1), Rat(1), Rat(1)}};
    const CuttingChart edge{"edge", {{"x", {Int(1), Int(0), Int(0)}}}, {Rat(1)}};
    std::vector<HalfSpace> hs = model_cone().halfspaces();
    hs.emplace_back(Vec{Int(0), Int(1), Int(0)}, Rat(2));
    hs.emplace_back(Vec{Int(0), Int(0), Int(1)}, Rat(2));
    const SemilocalCover cover{
        3, {corner, edge},
        {{"corner", "edge", Polyhedron::from_halfspaces(3, hs)}}};
    const auto rep = validate_semilocal_cover(cover);
    return std::pair<std::string, std::string>(
        "valid", rep.valid ? "valid" : "violation");
  });

  // --- exceptional sphere of the A1 resolution ---
  add("a1-exceptional-wall", "4.1", [] {
    const auto cut =
        apply_cut(a1_model(), CutSpec{{HalfSpace({Int(1), Int(0), Int(0)}, Rat(1))}});
    const Fan fan = Fan::normal_fan(cut.polytope);
    const auto walls = interior_walls(fan);
    std::string got = std::to_string(walls.size()) + " walls";
    if (walls.size() == 1) {
      auto w = curve_normal_bundle(fan, fan.rays[walls[0].first],
                                   fan.rays[walls[0].second]);
      if (w.b < w.a) std::swap(w.a, w.b);
      got = "1 wall (" + w.a.get_str() + "," + w.b.get_str() + ")";
    }
    return std::pair<std::string, std::string>("1 wall (-2,0)", got);
  });

  // --- resolution deltas ---
  add("deltas-three-spheres", "4.3", [] {
    SingularLocusDescription d;
    d.components = {{0, 0}, {0, 0}, {0, 0}};
    const auto r = resolution_deltas(d);
    return std::pair<std::string, std::string>(
        "(3,0,6)", "(" + std::to_string(r.b2) + "," + std::to_string(r.b3) + "," +
                       std::to_string(r.chi) + ")");
  });
  add("deltas-genus-two", "4.3", [] {
    SingularLocusDescription d;
    d.components = {{2, 0}};
    const auto r = resolution_deltas(d);
    return std::pair<std::string, std::string>(
        "(1,4,-2)", "(" + std::to_string(r.b2) + "," + std::to_string(r.b3) + "," +
                        std::to_string(r.chi) + ")");
  });

  // --- doubled polytope ---
  add("betti-base-of-double", "4.4", [] {
    const auto b = base_betti_of_double();
    std::string got;
    for (long x : b.b) got += std::to_string(x) + " ";
    got += "chi " + std::to_string(b.chi());
    return std::pair<std::string, std::string>("1 0 1 0 1 0 1 chi 4", got);
  });
  add("betti-resolved-120-cell", "4.4", [] {
    const auto b = resolved_betti_of_double(600, 720);
    return std::pair<std::string, std::string>(
        "b2 2041 b3 0",
        "b2 " + std::to_string(b.b[2]) + " b3 " + std::to_string(b.b[3]));
  });
  add("cell600-f-vector", "4.4", [] {
    const auto fv = build_600_cell().f_vector();
    std::string got;
    for (long x : fv) got += std::to_string(x) + " ";
    return std::pair<std::string, std::string>("120 720 1200 600 ", got);
  });
  add("cell120-f-vector", "4.4", [] {
    const auto fv = dualize(build_600_cell()).f_vector();
    std::string got;
    for (long x : fv) got += std::to_string(x) + " ";
    return std::pair<std::string, std::string>("600 1200 720 120 ", got);
  });
  add("doubled-120-cell-locus", "4.4", [] {
    const auto d = double_to_singular_locus(600, 720);
    return std::pair<std::string, std::string>(
        "2040 components, genus sum 0",
        std::to_string(d.component_count()) + " components, genus sum " +
            std::to_string(d.genus_sum()));
  });

  return checks;
}

}  // namespace report_detail

inline VerifyOutcome run_verify(const VerifyOptions& opt) {
  VerifyOutcome out;
  out.report["schema_version"] = kSchemaVersion;
  out.report["section_filter"] = opt.section.empty() ? "all" : opt.section;
  out.report["negative_control"] = opt.negative_control;
  out.report["checks"] = json::array();
  int total = 0;
  for (const auto& check : report_detail::verify_checks(opt.negative_control)) {
    if (!opt.section.empty() && check.section != opt.section) continue;
    ++total;
    json e;
    e["id"] = check.id;
    e["section"] = check.section;
    try {
      const auto [expected, computed] = check.run();
      e["expected"] = expected;
      e["computed"] = computed;
      e["pass"] = expected == computed;
    } catch (const std::exception& ex) {
      e["expected"] = "no exception";
      e["computed"] = std::string("exception: ") + ex.what();
      e["pass"] = false;
    }
    if (!e["pass"].get<bool>()) ++out.failures;
    out.report["checks"].push_back(std::move(e));
  }
  out.report["total"] = total;
  out.report["failures"] = out.failures;
  return out;
}

// Plain-text rendering of a report: verification suites become one line per
// check, anything else a flat key listing.
inline std::string render_table(const json& rep) {
  std::ostringstream os;
  if (rep.contains("checks")) {
    for (const auto& c : rep.at("checks")) {
      os << (c.at("pass").get<bool>() ? "PASS" : "FAIL") << "  "
         << c.at("section").get<std::string>() << "  "
         << c.at("id").get<std::string>();
      if (!c.at("pass").get<bool>())
        os << "\n      expected: " << c.at("expected").get<std::string>()
           << "\n      computed: " << c.at("computed").get<std::string>();
      os << "\n";
    }
    os << rep.at("total").get<int>() - rep.at("failures").get<int>() << "/"
       << rep.at("total").get<int>() << " checks passed\n";
    return os.str();
  }
  std::function<void(const json&, const std::string&)> walk =
      [&](const json& j, const std::string& prefix) {
        if (j.is_object()) {
          for (const auto& [k, v] : j.items())
            walk(v, prefix.empty() ? k : prefix + "." + k);
        } else {
          os << prefix << ": " << j.dump() << "\n";
        }
      };
  walk(rep, "");
  return os.str();
}

}  // namespace crepant
