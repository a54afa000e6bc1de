#pragma once

#include <algorithm>
#include <cstdlib>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "crepant/exact.hpp"
#include "crepant/linalg.hpp"

namespace crepant {

// Rational convex polyhedra in ambient dimension <= 4, possibly unbounded,
// with exact H- and V-representations.  Enumeration solves facet subsets
// directly, which is fine at this scale (<= 64 facets).
//
// Polyhedra containing an affine line have no vertex description of the form
// conv(vertices) + cone(rays); nonempty inputs of that kind are rejected.

constexpr int kMaxAmbientDim = 4;
constexpr int kMaxHalfspaces = 64;

// The closed set { x : <normal, x> >= level }, with inward primitive normal.
struct HalfSpace {
  Vec normal;
  Rat level;

  HalfSpace() = default;
  HalfSpace(Vec n, Rat c) : normal(std::move(n)), level(std::move(c)) {
    if (is_zero(normal)) throw std::invalid_argument("HalfSpace: zero normal");
    Int g = 0;
    for (const auto& x : normal) g = gcd(g, x);
    if (g != 1) {
      for (auto& x : normal) x /= g;
      level /= Rat(g);
    }
  }

  friend bool operator==(const HalfSpace& a, const HalfSpace& b) {
    return a.normal == b.normal && a.level == b.level;
  }
  friend bool operator<(const HalfSpace& a, const HalfSpace& b) {
    if (a.normal != b.normal) return vec_less(a.normal, b.normal);
    return a.level < b.level;
  }
};

struct VRepresentation {
  std::vector<RatVec> vertices;
  std::vector<Vec> rays;
};

namespace detail {

inline int worker_count() {
  if (const char* s = std::getenv("CREPANT_WORKERS")) {
    const int n = std::atoi(s);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 4u));
}

inline void subsets_rec(int from, int size, int choose, std::vector<int>& cur,
                        std::vector<std::vector<int>>& out) {
  if (choose == 0) {
    out.push_back(cur);
    return;
  }
  for (int i = from; i + choose <= size; ++i) {
    cur.push_back(i);
    subsets_rec(i + 1, size, choose - 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> subsets(int size, int choose) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  if (choose >= 0 && choose <= size) subsets_rec(0, size, choose, cur, out);
  return out;
}

}  // namespace detail

class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron from_halfspaces(int dim, std::vector<HalfSpace> hs) {
    if (dim < 1 || dim > kMaxAmbientDim)
      throw std::invalid_argument("Polyhedron: ambient dimension " +
                                  std::to_string(dim) + " out of range [1, 4]");
    for (const auto& h : hs)
      if (static_cast<int>(h.normal.size()) != dim)
        throw std::invalid_argument("Polyhedron: halfspace dimension mismatch");

    // Keep only the strongest constraint per normal direction.
    std::map<Vec, Rat, bool (*)(const Vec&, const Vec&)> strongest(vec_less);
    for (auto& h : hs) {
      auto it = strongest.find(h.normal);
      if (it == strongest.end())
        strongest.emplace(h.normal, h.level);
      else if (h.level > it->second)
        it->second = h.level;
    }
    std::vector<HalfSpace> canon;
    for (auto& [n, c] : strongest) canon.emplace_back(n, c);
    if (static_cast<int>(canon.size()) > kMaxHalfspaces)
      throw std::invalid_argument("Polyhedron: facet count exceeds capacity (64)");

    Polyhedron p;
    p.dim_ = dim;
    p.hs_ = std::move(canon);

    std::vector<Vec> normals;
    for (const auto& h : p.hs_) normals.push_back(h.normal);
    if (rank_of_int(normals) < dim) {
      // Nontrivial lineality: project onto pivot coordinates to test
      // emptiness, since a line-free description does not exist.
      if (!lineality_feasible(p.hs_)) {
        p.empty_ = true;
        return p;
      }
      throw std::domain_error(
          "Polyhedron: nonempty with an affine line; no vertex/ray form exists");
    }

    p.vrep_ = enumerate(dim, p.hs_);
    if (p.vrep_.vertices.empty()) {
      p.empty_ = true;
      return p;
    }
    p.full_dim_ = affine_rank(p.vrep_) == dim;
    if (p.full_dim_) p.prune_redundant();
    return p;
  }

  int ambient_dim() const { return dim_; }
  bool is_empty() const { return empty_; }
  bool is_full_dimensional() const { return full_dim_; }
  const std::vector<HalfSpace>& halfspaces() const { return hs_; }
  const VRepresentation& vrep() const { return vrep_; }

  bool contains(const RatVec& x) const {
    if (empty_) return false;
    for (const auto& h : hs_)
      if (dot_rat(h.normal, x) < h.level) return false;
    return true;
  }

  // Canonical-form equality; two empty polyhedra are equal regardless of the
  // inequalities they were built from.
  friend bool operator==(const Polyhedron& a, const Polyhedron& b) {
    if (a.dim_ != b.dim_) return false;
    if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
    return a.hs_ == b.hs_;
  }
  friend bool operator!=(const Polyhedron& a, const Polyhedron& b) {
    return !(a == b);
  }

 private:
  static int affine_rank(const VRepresentation& vr) {
    std::vector<RatVec> dirs;
    const RatVec& base = vr.vertices[0];
    for (std::size_t i = 1; i < vr.vertices.size(); ++i) {
      RatVec d(base.size());
      for (std::size_t j = 0; j < base.size(); ++j)
        d[j] = vr.vertices[i][j] - base[j];
      dirs.push_back(std::move(d));
    }
    for (const auto& r : vr.rays) {
      RatVec d(r.size());
      for (std::size_t j = 0; j < r.size(); ++j) d[j] = Rat(r[j]);
      dirs.push_back(std::move(d));
    }
    return rank_of(dirs);
  }

  static bool lineality_feasible(const std::vector<HalfSpace>& hs) {
    std::vector<RatVec> rows;
    for (const auto& h : hs) rows.push_back(rat_rows_of({h.normal})[0]);
    // Pivot columns of the normal matrix give complement coordinates; the
    // substituted system is line-free and equi-feasible.
    std::vector<int> pivots;
    {
      std::vector<RatVec> work = rows;
      std::vector<RatVec> red;
      for (auto& w : work) {
        for (std::size_t p = 0; p < red.size(); ++p) {
          const Rat f = w[pivots[p]];
          if (f == 0) continue;
          for (std::size_t j = 0; j < w.size(); ++j) w[j] -= f * red[p][j];
        }
        int pc = -1;
        for (std::size_t j = 0; j < w.size(); ++j)
          if (w[j] != 0) {
            pc = static_cast<int>(j);
            break;
          }
        if (pc < 0) continue;
        const Rat inv = w[pc];
        for (auto& x : w) x /= inv;
        red.push_back(w);
        pivots.push_back(pc);
      }
    }
    std::sort(pivots.begin(), pivots.end());
    std::vector<HalfSpace> proj;
    for (const auto& h : hs) {
      Vec n(pivots.size());
      for (std::size_t k = 0; k < pivots.size(); ++k) n[k] = h.normal[pivots[k]];
      if (is_zero(n)) {
        if (h.level > 0) return false;  // 0 >= positive level: infeasible
        continue;
      }
      proj.emplace_back(std::move(n), h.level);
    }
    if (proj.empty()) return true;
    return !from_halfspaces(static_cast<int>(pivots.size()), proj).is_empty();
  }

  static bool satisfies_all(const std::vector<HalfSpace>& hs, const RatVec& x) {
    for (const auto& h : hs)
      if (dot_rat(h.normal, x) < h.level) return false;
    return true;
  }

  static VRepresentation enumerate(int dim, const std::vector<HalfSpace>& hs) {
    VRepresentation vr;
    const int m = static_cast<int>(hs.size());

    const auto vertex_subsets = detail::subsets(m, dim);
    std::set<RatVec, bool (*)(const RatVec&, const RatVec&)> verts(ratvec_less);
    auto scan_vertices = [&](std::size_t lo, std::size_t hi,
                             std::vector<RatVec>& local) {
      for (std::size_t s = lo; s < hi; ++s) {
        std::vector<RatVec> rows;
        RatVec rhs;
        for (int i : vertex_subsets[s]) {
          rows.push_back(rat_rows_of({hs[i].normal})[0]);
          rhs.push_back(hs[i].level);
        }
        const auto x = solve_square(rows, rhs);
        if (x && satisfies_all(hs, *x)) local.push_back(*x);
      }
    };
    const int workers = detail::worker_count();
    if (workers > 1 && vertex_subsets.size() >= 4096) {
      std::vector<std::future<std::vector<RatVec>>> futs;
      const std::size_t chunk = (vertex_subsets.size() + workers - 1) / workers;
      for (int w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(vertex_subsets.size(), lo + chunk);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, [&, lo, hi] {
          std::vector<RatVec> local;
          scan_vertices(lo, hi, local);
          return local;
        }));
      }
      for (auto& f : futs)
        for (auto& v : f.get()) verts.insert(std::move(v));
    } else {
      std::vector<RatVec> local;
      scan_vertices(0, vertex_subsets.size(), local);
      for (auto& v : local) verts.insert(std::move(v));
    }
    vr.vertices.assign(verts.begin(), verts.end());
    if (vr.vertices.empty()) return vr;

    // Extreme rays of the recession cone { d : <n_i, d> >= 0 }.
    std::set<Vec, bool (*)(const Vec&, const Vec&)> rays(vec_less);
    auto consider_ray = [&](const Vec& cand) {
      Vec d = primitive(cand);
      bool ok = true;
      for (const auto& h : hs)
        if (dot(h.normal, d) < 0) {
          ok = false;
          break;
        }
      if (!ok) {
        d = negated(d);
        ok = true;
        for (const auto& h : hs)
          if (dot(h.normal, d) < 0) {
            ok = false;
            break;
          }
      }
      if (!ok) return;
      std::vector<Vec> active;
      for (const auto& h : hs)
        if (dot(h.normal, d) == 0) active.push_back(h.normal);
      if (rank_of_int(active) == dim - 1) rays.insert(d);
    };
    if (dim == 1) {
      consider_ray(Vec{Int(1)});
      consider_ray(Vec{Int(-1)});
    } else {
      for (const auto& sub : detail::subsets(m, dim - 1)) {
        IntMat a(dim - 1, dim);
        for (int i = 0; i < dim - 1; ++i)
          for (int j = 0; j < dim; ++j) a.at(i, j) = hs[sub[i]].normal[j];
        const IntMat k = kernel_lattice_basis(a);
        if (k.cols != 1) continue;
        consider_ray(k.col(0));
      }
    }
    vr.rays.assign(rays.begin(), rays.end());
    return vr;
  }

  // A halfspace of a full-dimensional polyhedron is facet-defining exactly
  // when its contact face has dimension dim-1; anything else is implied by
  // the rest and dropped.
  void prune_redundant() {
    std::vector<HalfSpace> kept;
    for (const auto& h : hs_) {
      std::vector<RatVec> av;
      std::vector<Vec> ar;
      for (const auto& v : vrep_.vertices)
        if (dot_rat(h.normal, v) == h.level) av.push_back(v);
      for (const auto& r : vrep_.rays)
        if (dot(h.normal, r) == 0) ar.push_back(r);
      if (av.empty()) continue;
      std::vector<RatVec> dirs;
      for (std::size_t i = 1; i < av.size(); ++i) {
        RatVec d(av[0].size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = av[i][j] - av[0][j];
        dirs.push_back(std::move(d));
      }
      for (const auto& r : ar) dirs.push_back(rat_rows_of({r})[0]);
      if (rank_of(dirs) == dim_ - 1) kept.push_back(h);
    }
    hs_ = std::move(kept);
  }

  int dim_ = 0;
  bool empty_ = false;
  bool full_dim_ = false;
  std::vector<HalfSpace> hs_;
  VRepresentation vrep_;
};

inline const VRepresentation& v_representation(const Polyhedron& p) {
  return p.vrep();
}

// ---------------------------------------------------------------------------
// Face lattice.  A face is identified by the vertices and rays it contains;
// the active set lists the facets passing through it.
// ---------------------------------------------------------------------------
struct Face {
  int dim = 0;
  std::vector<int> active;          // halfspace indices tight on the face
  std::vector<int> vertex_members;  // indices into vrep().vertices
  std::vector<int> ray_members;     // indices into vrep().rays
};

struct FaceLattice {
  std::vector<std::vector<Face>> by_dim;  // by_dim[d] sorted canonically

  const std::vector<Face>& faces(int d) const { return by_dim.at(d); }
  std::size_t count(int d) const {
    return d < static_cast<int>(by_dim.size()) ? by_dim[d].size() : 0;
  }
  // Incidence is containment of member sets.
  static bool incident(const Face& sub, const Face& sup) {
    return std::includes(sup.vertex_members.begin(), sup.vertex_members.end(),
                         sub.vertex_members.begin(), sub.vertex_members.end()) &&
           std::includes(sup.ray_members.begin(), sup.ray_members.end(),
                         sub.ray_members.begin(), sub.ray_members.end());
  }
};

inline FaceLattice face_lattice(const Polyhedron& p) {
  FaceLattice fl;
  fl.by_dim.assign(p.ambient_dim() + 1, {});
  if (p.is_empty()) return fl;
  const auto& vr = p.vrep();
  const auto& hs = p.halfspaces();

  using Members = std::pair<std::vector<int>, std::vector<int>>;
  std::vector<Members> facet_members(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = 0; j < vr.vertices.size(); ++j)
      if (dot_rat(hs[i].normal, vr.vertices[j]) == hs[i].level)
        facet_members[i].first.push_back(static_cast<int>(j));
    for (std::size_t j = 0; j < vr.rays.size(); ++j)
      if (dot(hs[i].normal, vr.rays[j]) == 0)
        facet_members[i].second.push_back(static_cast<int>(j));
  }

  Members top;
  for (std::size_t j = 0; j < vr.vertices.size(); ++j)
    top.first.push_back(static_cast<int>(j));
  for (std::size_t j = 0; j < vr.rays.size(); ++j)
    top.second.push_back(static_cast<int>(j));

  std::set<Members> seen;
  std::vector<Members> queue{top};
  seen.insert(top);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Members cur = queue[q];
    for (std::size_t i = 0; i < hs.size(); ++i) {
      Members next;
      std::set_intersection(cur.first.begin(), cur.first.end(),
                            facet_members[i].first.begin(),
                            facet_members[i].first.end(),
                            std::back_inserter(next.first));
      std::set_intersection(cur.second.begin(), cur.second.end(),
                            facet_members[i].second.begin(),
                            facet_members[i].second.end(),
                            std::back_inserter(next.second));
      // A candidate without a vertex is an empty geometric face.
      if (next.first.empty()) continue;
      if (seen.insert(next).second) queue.push_back(next);
    }
  }

  for (const auto& mem : seen) {
    Face f;
    f.vertex_members = mem.first;
    f.ray_members = mem.second;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const bool sub_v = std::includes(
          facet_members[i].first.begin(), facet_members[i].first.end(),
          mem.first.begin(), mem.first.end());
      const bool sub_r = std::includes(
          facet_members[i].second.begin(), facet_members[i].second.end(),
          mem.second.begin(), mem.second.end());
      if (sub_v && sub_r) f.active.push_back(static_cast<int>(i));
    }
    std::vector<RatVec> dirs;
    const RatVec& base = vr.vertices[mem.first[0]];
    for (std::size_t k = 1; k < mem.first.size(); ++k) {
      RatVec d(base.size());
      for (std::size_t j = 0; j < base.size(); ++j)
        d[j] = vr.vertices[mem.first[k]][j] - base[j];
      dirs.push_back(std::move(d));
    }
    for (int rk : mem.second) dirs.push_back(rat_rows_of({vr.rays[rk]})[0]);
    f.dim = rank_of(dirs);
    fl.by_dim[f.dim].push_back(std::move(f));
  }
  for (auto& level : fl.by_dim)
    std::sort(level.begin(), level.end(), [](const Face& a, const Face& b) {
      if (a.vertex_members != b.vertex_members)
        return a.vertex_members < b.vertex_members;
      return a.ray_members < b.ray_members;
    });
  return fl;
}

// The face as a polyhedron in its own lattice-affine coordinates: a canonical
// lattice basis of the face's direction space, based at the lexicographically
// smallest vertex of the face.
inline Polyhedron restrict_to_face(const Polyhedron& p, const Face& face) {
  if (face.dim < 1)
    throw std::invalid_argument("restrict_to_face: face must have dimension >= 1");
  const auto& vr = p.vrep();
  const auto& hs = p.halfspaces();

  std::vector<Vec> active_normals;
  for (int i : face.active) active_normals.push_back(hs[i].normal);
  IntMat basis;
  if (active_normals.empty()) {
    basis = IntMat::identity(p.ambient_dim());
  } else {
    basis = column_canonical_basis(
        kernel_lattice_basis(IntMat::from_rows(active_normals)));
  }
  if (basis.cols != face.dim)
    throw std::domain_error("restrict_to_face: direction space mismatch");

  const RatVec& base = vr.vertices[face.vertex_members[0]];

  std::vector<HalfSpace> out;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (std::binary_search(face.active.begin(), face.active.end(),
                           static_cast<int>(i)))
      continue;
    Vec n(basis.cols, Int(0));
    for (int k = 0; k < basis.cols; ++k)
      for (int j = 0; j < basis.rows; ++j) n[k] += hs[i].normal[j] * basis.at(j, k);
    if (is_zero(n)) continue;  // constant on the face's span, never violated
    out.emplace_back(std::move(n), hs[i].level - dot_rat(hs[i].normal, base));
  }
  if (out.empty()) {
    // The face is an affine subspace slice with no constraints, which cannot
    // happen for faces of a pointed polyhedron of dimension >= 1.
    throw std::domain_error("restrict_to_face: unconstrained face");
  }
  return Polyhedron::from_halfspaces(face.dim, std::move(out));
}

// Exact range of a linear functional over the polyhedron, from the vertex
// and ray description.  A missing bound means unbounded on that side.
struct ValueRange {
  bool empty = false;
  std::optional<Rat> min, max;
};

inline ValueRange range_over(const Polyhedron& p, const Vec& functional) {
  ValueRange out;
  if (p.is_empty()) {
    out.empty = true;
    return out;
  }
  const auto& vr = p.vrep();
  bool lo_unbounded = false, hi_unbounded = false;
  for (const auto& r : vr.rays) {
    const Int d = dot(functional, r);
    if (d < 0) lo_unbounded = true;
    if (d > 0) hi_unbounded = true;
  }
  Rat lo, hi;
  bool first = true;
  for (const auto& v : vr.vertices) {
    const Rat val = dot_rat(functional, v);
    if (first || val < lo) lo = val;
    if (first || val > hi) hi = val;
    first = false;
  }
  if (!lo_unbounded) out.min = lo;
  if (!hi_unbounded) out.max = hi;
  return out;
}

}  // namespace crepant
