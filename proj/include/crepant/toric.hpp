#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crepant/exact.hpp"
#include "crepant/linalg.hpp"
#include "crepant/polytope.hpp"

namespace crepant {

// Toric layer on top of the polyhedral kernel: normal fans, smoothness and
// orbifold-group audits, hyperplane cuts, crepancy certificates, wall
// relations, and validation of semilocal cutting data.

struct Cone {
  std::vector<Vec> rays;
  int dim = 0;

  bool simplicial() const { return static_cast<int>(rays.size()) == dim; }
};

struct Fan {
  int rank = 0;
  std::vector<Vec> rays;                     // primitive, canonical order
  std::vector<std::vector<int>> max_cones;   // sorted ray indices per cone

  static Fan normal_fan(const Polyhedron& p);
  static Fan from_cones(int rank, const std::vector<std::vector<Vec>>& cones);

  int ray_index(const Vec& r) const {
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (rays[i] == r) return static_cast<int>(i);
    return -1;
  }

  Cone cone(std::size_t idx) const {
    Cone c;
    for (int i : max_cones.at(idx)) c.rays.push_back(rays[i]);
    c.dim = rank_of_int(c.rays);
    return c;
  }
};

// Inner-normal fan; maximal cones are the normal cones at the vertices.
inline Fan Fan::normal_fan(const Polyhedron& p) {
  if (p.is_empty() || !p.is_full_dimensional())
    throw std::domain_error("normal_fan: needs a nonempty full-dimensional input");
  Fan f;
  f.rank = p.ambient_dim();
  for (const auto& h : p.halfspaces()) f.rays.push_back(h.normal);
  for (const auto& v : p.vrep().vertices) {
    std::vector<int> cone;
    for (std::size_t i = 0; i < p.halfspaces().size(); ++i)
      if (dot_rat(p.halfspaces()[i].normal, v) == p.halfspaces()[i].level)
        cone.push_back(static_cast<int>(i));
    f.max_cones.push_back(std::move(cone));
  }
  return f;
}

inline Fan Fan::from_cones(int rank, const std::vector<std::vector<Vec>>& cones) {
  Fan f;
  f.rank = rank;
  std::map<Vec, int, bool (*)(const Vec&, const Vec&)> index(vec_less);
  for (const auto& cone : cones) {
    std::vector<int> ids;
    for (const auto& r : cone) {
      const Vec pr = primitive(r);
      auto it = index.find(pr);
      if (it == index.end()) {
        it = index.emplace(pr, static_cast<int>(f.rays.size())).first;
        f.rays.push_back(pr);
      }
      ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
    f.max_cones.push_back(std::move(ids));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Vertex smoothness and face orbifold groups.
// ---------------------------------------------------------------------------
struct VertexVerdict {
  enum class Status { Smooth, Orbifold, NonSimple };
  RatVec vertex;
  Status status = Status::Smooth;
  std::vector<Int> factors;  // invariant factors > 1, empty when smooth
};

inline std::vector<Int> nonunit_factors(const IntMat& normals) {
  std::vector<Int> out;
  for (const auto& d : smith_normal_form(normals).diagonal()) {
    if (d == 0)
      throw std::domain_error("orbifold group: dependent facet normals");
    if (d != 1) out.push_back(d);
  }
  return out;
}

// Per-vertex audit: smooth when the active primitive normals form a lattice
// basis, otherwise the invariant factors of the quotient they span.
inline std::vector<VertexVerdict> vertex_smoothness(const Polyhedron& p) {
  if (p.is_empty() || !p.is_full_dimensional())
    throw std::domain_error("vertex_smoothness: needs a full-dimensional input");
  const int d = p.ambient_dim();
  std::vector<VertexVerdict> out;
  for (const auto& v : p.vrep().vertices) {
    VertexVerdict verdict;
    verdict.vertex = v;
    std::vector<Vec> active;
    for (const auto& h : p.halfspaces())
      if (dot_rat(h.normal, v) == h.level) active.push_back(h.normal);
    if (static_cast<int>(active.size()) != d) {
      verdict.status = VertexVerdict::Status::NonSimple;
    } else {
      verdict.factors = nonunit_factors(IntMat::from_rows(active));
      verdict.status = verdict.factors.empty() ? VertexVerdict::Status::Smooth
                                               : VertexVerdict::Status::Orbifold;
    }
    out.push_back(std::move(verdict));
  }
  return out;
}

inline bool is_delzant(const std::vector<VertexVerdict>& verdicts) {
  for (const auto& v : verdicts)
    if (v.status != VertexVerdict::Status::Smooth) return false;
  return true;
}

// Invariant factors of the quotient (saturation of the normal span)/(span)
// for a face of codimension c carried by exactly c facets.
inline std::vector<Int> face_orbifold_group(const Polyhedron& p, const Face& face) {
  const int codim = p.ambient_dim() - face.dim;
  if (static_cast<int>(face.active.size()) != codim)
    throw std::domain_error("face_orbifold_group: face is not simple (" +
                            std::to_string(face.active.size()) + " facets through a codimension-" +
                            std::to_string(codim) + " face)");
  if (codim == 0) return {};
  std::vector<Vec> normals;
  for (int i : face.active) normals.push_back(p.halfspaces()[i].normal);
  return nonunit_factors(IntMat::from_rows(normals));
}

// ---------------------------------------------------------------------------
// Cuts.
// ---------------------------------------------------------------------------
struct CutSpec {
  std::vector<HalfSpace> halfspaces;

  // Cut levels are positive in the intended use; spec validation is split
  // from the polytopal operations so that arbitrary halfspaces can still be
  // intersected and reduced.
  std::vector<std::size_t> nonpositive_levels() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < halfspaces.size(); ++i)
      if (halfspaces[i].level <= 0) out.push_back(i);
    return out;
  }
};

struct CutResult {
  Polyhedron polytope;
  std::vector<std::size_t> vacuous;  // spec indices whose boundary misses int(P)
};

// Intersect P with the cut halfspaces.  A halfspace whose boundary fails to
// meet the interior of P is reported as vacuous; a halfspace that empties
// the region (or flattens it) is an error.
inline CutResult apply_cut(const Polyhedron& p, const CutSpec& spec) {
  if (p.is_empty() || !p.is_full_dimensional())
    throw std::domain_error("apply_cut: needs a nonempty full-dimensional input");
  CutResult out;
  for (std::size_t i = 0; i < spec.halfspaces.size(); ++i) {
    const auto& h = spec.halfspaces[i];
    const ValueRange r = range_over(p, h.normal);
    const bool below = !r.min.has_value() || *r.min < h.level;
    const bool above = !r.max.has_value() || *r.max > h.level;
    if (r.max.has_value() && *r.max < h.level)
      throw std::domain_error("apply_cut: halfspace " + std::to_string(i) +
                              " makes the region empty");
    if (r.max.has_value() && *r.max == h.level)
      throw std::domain_error("apply_cut: halfspace " + std::to_string(i) +
                              " flattens the region to a face");
    if (!(below && above)) out.vacuous.push_back(i);
  }
  std::vector<HalfSpace> all = p.halfspaces();
  for (const auto& h : spec.halfspaces) all.push_back(h);
  out.polytope = Polyhedron::from_halfspaces(p.ambient_dim(), std::move(all));
  if (out.polytope.is_empty() || !out.polytope.is_full_dimensional())
    throw std::domain_error("apply_cut: cut region empty or lower-dimensional");
  return out;
}

// Drop every halfspace strictly satisfied on all of P; cutting with the
// reduced spec gives the same region.  Constraints met with equality
// somewhere are retained.
inline CutSpec compatibility_reduction(const Polyhedron& p, const CutSpec& spec) {
  CutSpec out;
  for (const auto& h : spec.halfspaces) {
    const ValueRange r = range_over(p, h.normal);
    const bool strict = !r.empty && r.min.has_value() && *r.min > h.level;
    if (!strict) out.halfspaces.push_back(h);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Crepancy certificates.
// ---------------------------------------------------------------------------
struct CrepancyCertificate {
  bool crepant = false;
  Vec m;                            // certifying covector when crepant
  std::optional<Vec> violating_ray;
  std::optional<Rat> pairing;       // <m, violating_ray>
  std::string reason;
};

// Searches for an integer covector pairing to 1 with every old and new ray.
// The rational solve canonicalizes free coordinates to zero; if that misses
// an integral point of the solution set, an integer solve over the same
// system is used instead.
inline CrepancyCertificate crepancy_certificate(const std::vector<Vec>& old_rays,
                                                const std::vector<Vec>& new_rays) {
  if (old_rays.empty())
    throw std::invalid_argument("crepancy_certificate: no cone rays given");
  std::vector<Vec> all = old_rays;
  all.insert(all.end(), new_rays.begin(), new_rays.end());
  const std::size_t n = all[0].size();
  for (const auto& r : all)
    if (r.size() != n)
      throw std::invalid_argument("crepancy_certificate: ray dimension mismatch");

  CrepancyCertificate out;
  const auto sol = solve_free_zero(rat_rows_of(all), RatVec(all.size(), Rat(1)));
  if (!sol.consistent) {
    out.crepant = false;
    out.violating_ray = all[sol.bad_row];
    // Pairing of the canonical solution with the first inconsistent ray.
    Rat pr = 0;
    for (std::size_t j = 0; j < n; ++j) pr += Rat(all[sol.bad_row][j]) * sol.x[j];
    out.pairing = pr;
    out.reason = "no dual hyperplane contains all rays at height 1";
    return out;
  }
  bool integral = true;
  for (const auto& q : sol.x)
    if (q.get_den() != 1) integral = false;
  Vec m(n);
  if (integral) {
    for (std::size_t j = 0; j < n; ++j) m[j] = sol.x[j].get_num();
  } else {
    const auto im = solve_integer(IntMat::from_rows(all), Vec(all.size(), Int(1)));
    if (!im) {
      out.crepant = false;
      out.reason = "dual hyperplane exists over the rationals but not the integers";
      return out;
    }
    m = *im;
  }
  for (const auto& r : all)
    if (dot(m, r) != 1)
      throw std::logic_error("crepancy_certificate: internal pairing check failed");
  out.crepant = true;
  out.m = std::move(m);
  return out;
}

// ---------------------------------------------------------------------------
// Wall relations.
// ---------------------------------------------------------------------------
struct WallRelation {
  Vec u1, u2;  // the wall, in caller order
  Vec u3, u4;  // flanking rays of the two maximal cones
  Int a, b;    // u3 + u4 + a*u1 + b*u2 = 0
};

// Relation across an interior wall of a simplicial smooth 3-dimensional fan.
// The coefficient pair (a, b) is the splitting type of the curve the wall
// represents; the conifold wall pins the sign convention at (-1,-1).
inline WallRelation curve_normal_bundle(const Fan& fan, const Vec& u1, const Vec& u2) {
  if (fan.rank != 3)
    throw std::domain_error("curve_normal_bundle: fan rank must be 3");
  const int i1 = fan.ray_index(primitive(u1));
  const int i2 = fan.ray_index(primitive(u2));
  if (i1 < 0 || i2 < 0 || i1 == i2)
    throw std::invalid_argument("curve_normal_bundle: wall rays not in the fan");
  std::vector<int> owners;
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto& cone = fan.max_cones[c];
    if (std::binary_search(cone.begin(), cone.end(), i1) &&
        std::binary_search(cone.begin(), cone.end(), i2))
      owners.push_back(static_cast<int>(c));
  }
  if (owners.size() != 2)
    throw std::domain_error("curve_normal_bundle: wall lies in " +
                            std::to_string(owners.size()) +
                            " maximal cones, not 2 (boundary or degenerate)");
  Vec u3, u4;
  for (int k = 0; k < 2; ++k) {
    const Cone cone = fan.cone(owners[k]);
    if (!cone.simplicial() || cone.dim != 3)
      throw std::domain_error("curve_normal_bundle: non-simplicial flanking cone");
    const Int dm = det(IntMat::from_rows(cone.rays));
    if (dm != 1 && dm != -1)
      throw std::domain_error("curve_normal_bundle: flanking cone is not smooth");
    int extra = -1;
    for (int j : fan.max_cones[owners[k]])
      if (j != i1 && j != i2) extra = j;
    (k == 0 ? u3 : u4) = fan.rays[extra];
  }
  // Solve a*u1 + b*u2 + c*u3 = -u4; adjacency across the wall forces c = 1.
  std::vector<RatVec> rows(3, RatVec(3));
  RatVec rhs(3);
  const Vec& r1 = fan.rays[i1];
  const Vec& r2 = fan.rays[i2];
  for (int j = 0; j < 3; ++j) {
    rows[j][0] = Rat(r1[j]);
    rows[j][1] = Rat(r2[j]);
    rows[j][2] = Rat(u3[j]);
    rhs[j] = Rat(-u4[j]);
  }
  const auto sol = solve_square(rows, rhs);
  if (!sol)
    throw std::domain_error("curve_normal_bundle: wall rays are degenerate");
  if ((*sol)[2] != 1)
    throw std::domain_error("curve_normal_bundle: cones do not flank the wall");
  WallRelation out;
  out.u1 = r1;
  out.u2 = r2;
  out.u3 = u3;
  out.u4 = u4;
  out.a = (*sol)[0].get_num();
  out.b = (*sol)[1].get_num();
  if ((*sol)[0].get_den() != 1 || (*sol)[1].get_den() != 1)
    throw std::logic_error("curve_normal_bundle: non-integral wall relation");
  return out;
}

// Interior walls of a simplicial 3-fan as canonical ray-index pairs.
inline std::vector<std::pair<int, int>> interior_walls(const Fan& fan) {
  std::map<std::pair<int, int>, int> count;
  for (const auto& cone : fan.max_cones)
    for (std::size_t a = 0; a < cone.size(); ++a)
      for (std::size_t b = a + 1; b < cone.size(); ++b)
        ++count[{cone[a], cone[b]}];
  std::vector<std::pair<int, int>> out;
  for (const auto& [wall, c] : count)
    if (c == 2) out.push_back(wall);
  return out;
}

// ---------------------------------------------------------------------------
// Toric surface data of a 2-face.
// ---------------------------------------------------------------------------
struct EdgeInvariant {
  RatVec from, to;          // endpoints in the face's own coordinates
  Int self_intersection;    // s with v_prev + v_next + s*v = 0
  Rat lattice_length;
};

// Bounded-edge invariants of a smooth 2-dimensional polyhedron: for the edge
// with inward normal v, the neighbouring edge normals satisfy
// v_prev + v_next + s*v = 0 and s is the self-intersection number.
inline std::vector<EdgeInvariant> polygon_edge_invariants(const Polyhedron& q) {
  if (q.ambient_dim() != 2)
    throw std::domain_error("polygon_edge_invariants: input must be 2-dimensional");
  const auto verdicts = vertex_smoothness(q);
  for (const auto& v : verdicts)
    if (v.status != VertexVerdict::Status::Smooth)
      throw std::domain_error("polygon_edge_invariants: face normal data is not smooth");

  const auto fl = face_lattice(q);
  const auto& vr = q.vrep();
  std::vector<EdgeInvariant> out;
  for (const auto& edge : fl.faces(1)) {
    if (!edge.ray_members.empty()) continue;  // unbounded edge
    if (edge.active.size() != 1)
      throw std::domain_error("polygon_edge_invariants: edge without unique facet");
    const Vec v = q.halfspaces()[edge.active[0]].normal;
    const RatVec& p0 = vr.vertices[edge.vertex_members[0]];
    const RatVec& p1 = vr.vertices[edge.vertex_members[1]];
    Vec flank_sum(2, Int(0));
    for (int end : edge.vertex_members) {
      const RatVec& pt = vr.vertices[end];
      int found = 0;
      for (const auto& h : q.halfspaces()) {
        if (h.normal == v) continue;
        if (dot_rat(h.normal, pt) == h.level) {
          flank_sum[0] += h.normal[0];
          flank_sum[1] += h.normal[1];
          ++found;
        }
      }
      if (found != 1)
        throw std::domain_error("polygon_edge_invariants: vertex is not simple");
    }
    // v_prev + v_next = -s * v componentwise; consistency is forced by
    // smoothness of the two corners.
    Int s;
    if (v[0] != 0) {
      if (flank_sum[0] % v[0] != 0)
        throw std::logic_error("polygon_edge_invariants: non-integral relation");
      s = -flank_sum[0] / v[0];
    } else {
      if (flank_sum[1] % v[1] != 0)
        throw std::logic_error("polygon_edge_invariants: non-integral relation");
      s = -flank_sum[1] / v[1];
    }
    if (flank_sum[0] + s * v[0] != 0 || flank_sum[1] + s * v[1] != 0)
      throw std::logic_error("polygon_edge_invariants: wall relation failed");

    EdgeInvariant inv;
    inv.from = p0;
    inv.to = p1;
    inv.self_intersection = s;
    RatVec diff(2);
    diff[0] = p1[0] - p0[0];
    diff[1] = p1[1] - p0[1];
    const Vec dir = primitive_of_rational(diff);
    const Rat len = dir[0] != 0 ? diff[0] / Rat(dir[0]) : diff[1] / Rat(dir[1]);
    inv.lattice_length = abs(len);
    out.push_back(std::move(inv));
  }
  return out;
}

// Restrict a facet of a 3-polyhedron to its own plane and read off the edge
// invariants there.
inline std::vector<EdgeInvariant> surface_face_analysis(const Polyhedron& p,
                                                        const Face& facet) {
  if (facet.dim != 2)
    throw std::invalid_argument("surface_face_analysis: face must be 2-dimensional");
  return polygon_edge_invariants(restrict_to_face(p, facet));
}

// ---------------------------------------------------------------------------
// Semilocal cutting data.
// ---------------------------------------------------------------------------
struct Hamiltonian {
  std::string label;  // shared coordinate label identifying the functional
  Vec functional;
};

struct CuttingChart {
  std::string id;
  std::vector<Hamiltonian> hamiltonians;
  std::vector<Rat> levels;
};

struct ChartOverlap {
  std::string chart_a, chart_b;
  Polyhedron region;
};

struct SemilocalCover {
  int ambient_dim = 0;
  std::vector<CuttingChart> charts;
  std::vector<ChartOverlap> overlaps;
};

struct CoverViolation {
  enum class Kind { Matching, LevelMismatch, Strictness };
  Kind kind = Kind::Matching;
  std::string chart_a, chart_b;  // chart_a has the larger Hamiltonian count
  std::string hamiltonian;
  std::string detail;
  std::optional<RatVec> witness;       // point where strictness fails
  std::optional<Vec> witness_direction;  // recession direction, when unbounded
};

struct CoverReport {
  bool valid = true;
  std::optional<CoverViolation> violation;
};

// Checks, for every overlapping chart pair with k_a >= k_b: the smaller
// chart's Hamiltonians match a subset of the larger one's by label, matched
// levels agree, and every unmatched Hamiltonian stays strictly above its
// level on the overlap region.  The first violated condition is reported
// with a witness.
inline CoverReport validate_semilocal_cover(const SemilocalCover& cover) {
  std::map<std::string, const CuttingChart*> by_id;
  for (const auto& c : cover.charts) {
    if (c.hamiltonians.size() != c.levels.size())
      throw std::invalid_argument("semilocal cover: level count mismatch in chart '" +
                                  c.id + "'");
    std::set<std::string> labels;
    for (const auto& h : c.hamiltonians) {
      if (static_cast<int>(h.functional.size()) != cover.ambient_dim)
        throw std::invalid_argument("semilocal cover: functional dimension mismatch");
      if (!labels.insert(h.label).second)
        throw std::invalid_argument("semilocal cover: duplicate label '" + h.label +
                                    "' in chart '" + c.id + "'");
    }
    if (!by_id.emplace(c.id, &c).second)
      throw std::invalid_argument("semilocal cover: duplicate chart id '" + c.id + "'");
  }

  CoverReport report;
  for (const auto& ov : cover.overlaps) {
    const auto ita = by_id.find(ov.chart_a);
    const auto itb = by_id.find(ov.chart_b);
    if (ita == by_id.end() || itb == by_id.end())
      throw std::invalid_argument("semilocal cover: overlap names unknown chart");
    const CuttingChart* big = ita->second;
    const CuttingChart* small = itb->second;
    if (big->hamiltonians.size() < small->hamiltonians.size())
      std::swap(big, small);

    auto fail = [&](CoverViolation v) {
      v.chart_a = big->id;
      v.chart_b = small->id;
      report.valid = false;
      report.violation = std::move(v);
    };

    // (i) reordering must match every Hamiltonian of the smaller chart
    for (std::size_t i = 0; i < small->hamiltonians.size() && report.valid; ++i) {
      const auto& hs = small->hamiltonians[i];
      const Hamiltonian* match = nullptr;
      for (const auto& hb : big->hamiltonians)
        if (hb.label == hs.label) match = &hb;
      if (!match || match->functional != hs.functional) {
        CoverViolation v;
        v.kind = CoverViolation::Kind::Matching;
        v.hamiltonian = hs.label;
        v.detail = match ? "label matches but functionals differ"
                         : "no matching Hamiltonian in the larger chart";
        fail(std::move(v));
        break;
      }
      // (ii) matched levels agree
      std::size_t bi = 0;
      while (big->hamiltonians[bi].label != hs.label) ++bi;
      if (big->levels[bi] != small->levels[i]) {
        CoverViolation v;
        v.kind = CoverViolation::Kind::LevelMismatch;
        v.hamiltonian = hs.label;
        v.detail = "levels " + rat_to_string(big->levels[bi]) + " vs " +
                   rat_to_string(small->levels[i]);
        fail(std::move(v));
        break;
      }
    }
    if (!report.valid) return report;

    // (iii) unmatched Hamiltonians strictly exceed their levels on the overlap
    if (ov.region.is_empty()) continue;
    for (std::size_t i = 0; i < big->hamiltonians.size(); ++i) {
      const auto& hb = big->hamiltonians[i];
      bool matched = false;
      for (const auto& hs : small->hamiltonians)
        if (hs.label == hb.label) matched = true;
      if (matched) continue;
      const ValueRange r = range_over(ov.region, hb.functional);
      if (!r.min.has_value()) {
        CoverViolation v;
        v.kind = CoverViolation::Kind::Strictness;
        v.hamiltonian = hb.label;
        v.detail = "unbounded below on the overlap";
        for (const auto& ray : ov.region.vrep().rays)
          if (dot(hb.functional, ray) < 0) {
            v.witness_direction = ray;
            break;
          }
        fail(std::move(v));
        return report;
      }
      if (*r.min <= big->levels[i]) {
        CoverViolation v;
        v.kind = CoverViolation::Kind::Strictness;
        v.hamiltonian = hb.label;
        v.detail = "minimum " + rat_to_string(*r.min) + " does not exceed level " +
                   rat_to_string(big->levels[i]);
        for (const auto& vert : ov.region.vrep().vertices)
          if (dot_rat(hb.functional, vert) == *r.min) {
            v.witness = vert;
            break;
          }
        fail(std::move(v));
        return report;
      }
    }
  }
  return report;
}

}  // namespace crepant
