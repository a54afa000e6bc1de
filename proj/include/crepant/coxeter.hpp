#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <bitset>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crepant/betti.hpp"
#include "crepant/exact.hpp"

namespace crepant {

// Combinatorics of the 600-cell / 120-cell pair, chains of 120-cells glued
// across disjoint facets, and the singular data of the doubled polytope.
//
// Vertices of the 600-cell are unit quaternions in the golden ring; the
// vertex set is closed under quaternion multiplication, which supplies exact
// automorphisms used to glue facets onto each other.

struct GoldenPoint {
  std::array<Golden, 4> x;

  friend bool operator==(const GoldenPoint& p, const GoldenPoint& q) {
    return p.x == q.x;
  }
  friend bool operator<(const GoldenPoint& p, const GoldenPoint& q) {
    for (int i = 0; i < 4; ++i) {
      if (p.x[i] < q.x[i]) return true;
      if (q.x[i] < p.x[i]) return false;
    }
    return false;
  }

  GoldenPoint negated() const { return {{-x[0], -x[1], -x[2], -x[3]}}; }
  GoldenPoint conj() const { return {{x[0], -x[1], -x[2], -x[3]}}; }

  Golden inner(const GoldenPoint& q) const {
    Golden s;
    for (int i = 0; i < 4; ++i) s = s + x[i] * q.x[i];
    return s;
  }

  friend GoldenPoint operator*(const GoldenPoint& p, const GoldenPoint& q) {
    const auto& [a1, b1, c1, d1] = p.x;
    const auto& [a2, b2, c2, d2] = q.x;
    return {{a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
             a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
             a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
             a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2}};
  }
};

// Boundary complex of a 4-polytope: faces of dimension 0..3 as sorted vertex
// index lists.  The lists are sorted lexicographically, so equal complexes
// compare equal.
struct CellComplex4 {
  std::array<std::vector<std::vector<int>>, 4> faces;

  std::array<long, 4> f_vector() const {
    return {static_cast<long>(faces[0].size()), static_cast<long>(faces[1].size()),
            static_cast<long>(faces[2].size()), static_cast<long>(faces[3].size())};
  }
  long euler() const {
    const auto f = f_vector();
    return f[0] - f[1] + f[2] - f[3];
  }
  static bool incident(const std::vector<int>& sub, const std::vector<int>& sup) {
    return std::includes(sup.begin(), sup.end(), sub.begin(), sub.end());
  }
  friend bool operator==(const CellComplex4& a, const CellComplex4& b) {
    return a.faces == b.faces;
  }
};

struct Cell600 {
  std::vector<GoldenPoint> vertices;  // canonical order
  CellComplex4 complex;
};

namespace detail {

inline Golden half() { return Golden(make_rat(Int(1), Int(2))); }

inline std::vector<GoldenPoint> vertices_600() {
  std::set<GoldenPoint> pts;
  const Golden one(Rat(1)), zero;
  const Golden h = half();                                  // 1/2
  const Golden hphi(Rat(0), make_rat(Int(1), Int(2)));      // phi/2
  const Golden hinv(make_rat(Int(-1), Int(2)),
                    make_rat(Int(1), Int(2)));              // (phi-1)/2

  for (int pos = 0; pos < 4; ++pos)
    for (int s = -1; s <= 1; s += 2) {
      GoldenPoint p{{zero, zero, zero, zero}};
      p.x[pos] = s < 0 ? -one : one;
      pts.insert(p);
    }
  for (int mask = 0; mask < 16; ++mask) {
    GoldenPoint p{{h, h, h, h}};
    for (int i = 0; i < 4; ++i)
      if ((mask >> i) & 1) p.x[i] = -p.x[i];
    pts.insert(p);
  }
  // Even permutations of (phi/2, 1/2, (phi-1)/2, 0) with free signs on the
  // three nonzero slots.
  std::array<int, 4> perm{0, 1, 2, 3};
  const std::array<Golden, 4> pattern{hphi, h, hinv, zero};
  do {
    // parity of perm
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (perm[i] > perm[j]) ++inv;
    if (inv % 2 != 0) continue;
    for (int mask = 0; mask < 8; ++mask) {
      GoldenPoint p{{zero, zero, zero, zero}};
      int bit = 0;
      for (int i = 0; i < 4; ++i) {
        Golden v = pattern[perm[i]];
        if (v.is_zero()) {
          p.x[i] = v;
          continue;
        }
        if ((mask >> bit) & 1) v = -v;
        p.x[i] = v;
        ++bit;
      }
      pts.insert(p);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  return {pts.begin(), pts.end()};
}

}  // namespace detail

// The 600-cell: 120 golden-ring vertices; edges join vertex pairs at the
// largest inner product below one; triangles and tetrahedra are the cliques
// of the edge graph.
inline Cell600 build_600_cell_geometry() {
  Cell600 out;
  out.vertices = detail::vertices_600();
  const int n = static_cast<int>(out.vertices.size());
  if (n != 120)
    throw std::logic_error("build_600_cell_geometry: expected 120 vertices, got " +
                           std::to_string(n));

  Golden threshold;
  bool have = false;
  std::vector<std::vector<Golden>> ip(n);
  for (int i = 0; i < n; ++i) {
    ip[i].resize(n);
    for (int j = 0; j < i; ++j) {
      ip[i][j] = out.vertices[i].inner(out.vertices[j]);
      if (!have || threshold < ip[i][j]) {
        threshold = ip[i][j];
        have = true;
      }
    }
  }

  std::vector<std::bitset<128>> adj(n);
  auto& faces = out.complex.faces;
  for (int i = 0; i < n; ++i) faces[0].push_back({i});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (ip[j][i] == threshold) {
        adj[i].set(j);
        adj[j].set(i);
        faces[1].push_back({i, j});
      }
  for (const auto& e : faces[1]) {
    const auto common = adj[e[0]] & adj[e[1]];
    for (int k = e[1] + 1; k < n; ++k)
      if (common.test(k)) faces[2].push_back({e[0], e[1], k});
  }
  for (const auto& t : faces[2]) {
    const auto common = adj[t[0]] & adj[t[1]] & adj[t[2]];
    for (int l = t[2] + 1; l < n; ++l)
      if (common.test(l)) faces[3].push_back({t[0], t[1], t[2], l});
  }
  return out;
}

inline CellComplex4 build_600_cell() { return build_600_cell_geometry().complex; }

// Order-reversing dual.  Index correspondence is preserved: the dual k-face
// with index i is the dual of faces[3-k][i], so dualizing twice returns the
// original arrays exactly.
inline CellComplex4 dualize(const CellComplex4& c) {
  CellComplex4 d;
  for (int k = 0; k < 4; ++k) {
    for (const auto& f : c.faces[3 - k]) {
      std::vector<int> members;
      for (std::size_t j = 0; j < c.faces[3].size(); ++j)
        if (CellComplex4::incident(f, c.faces[3][j]))
          members.push_back(static_cast<int>(j));
      d.faces[k].push_back(std::move(members));
    }
  }
  return d;
}

// Boundary complex of the 4-cube on vertex masks 0..15.
inline CellComplex4 build_hypercube() {
  CellComplex4 c;
  for (int k = 0; k <= 3; ++k) {
    std::vector<std::vector<int>> level;
    for (int free = 0; free < 16; ++free) {
      if (std::popcount(static_cast<unsigned>(free)) != k) continue;
      for (int fixed = 0; fixed < 16; ++fixed) {
        if (fixed & free) continue;
        std::vector<int> verts;
        for (int v = 0; v < 16; ++v)
          if ((v & ~free) == fixed) verts.push_back(v);
        level.push_back(std::move(verts));
      }
    }
    std::sort(level.begin(), level.end());
    c.faces[k] = std::move(level);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Gluing two complexes across a shared facet.
// ---------------------------------------------------------------------------
struct GlueResult {
  CellComplex4 complex;
  std::vector<int> a_vertex_map, b_vertex_map;  // old id -> new id, -1 if gone
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int x, int y) { parent[find(x)] = find(y); }
};

inline std::map<std::vector<int>, int> face_index(const CellComplex4& c, int dim) {
  std::map<std::vector<int>, int> out;
  for (std::size_t i = 0; i < c.faces[dim].size(); ++i)
    out.emplace(c.faces[dim][i], static_cast<int>(i));
  return out;
}

}  // namespace detail

// Glue complex B onto complex A across the given facets, identifying the
// facets through the vertex bijection `iso` (pairs of a-id, b-id).  The
// shared facet and all its faces disappear; faces flanking it merge in
// pairs: facets across its 2-faces, 2-faces across its edges, and edges
// across its vertices.  This encodes the flattening of two right angles
// into a straight dihedral angle.
inline GlueResult glue_across(const CellComplex4& a, int a_facet,
                              const CellComplex4& b, int b_facet,
                              const std::vector<std::pair<int, int>>& iso) {
  const std::vector<int>& fa = a.faces[3].at(a_facet);
  const std::vector<int>& fb = b.faces[3].at(b_facet);
  if (iso.size() != fa.size() || fa.size() != fb.size())
    throw std::invalid_argument("glue_across: iso does not match the facet size");
  std::map<int, int> b2a, a2b;
  for (const auto& [av, bv] : iso) {
    if (!std::binary_search(fa.begin(), fa.end(), av) ||
        !std::binary_search(fb.begin(), fb.end(), bv) ||
        !b2a.emplace(bv, av).second || !a2b.emplace(av, bv).second)
      throw std::invalid_argument("glue_across: iso is not a facet vertex bijection");
  }

  std::array<std::map<std::vector<int>, int>, 4> a_index, b_index;
  for (int d = 0; d < 4; ++d) {
    a_index[d] = detail::face_index(a, d);
    b_index[d] = detail::face_index(b, d);
  }

  // Faces inside the shared facet, per side and dimension.
  std::array<std::vector<int>, 4> inside_a, inside_b;
  for (int d = 0; d < 4; ++d) {
    for (std::size_t i = 0; i < a.faces[d].size(); ++i)
      if (CellComplex4::incident(a.faces[d][i], fa))
        inside_a[d].push_back(static_cast<int>(i));
    for (std::size_t i = 0; i < b.faces[d].size(); ++i)
      if (CellComplex4::incident(b.faces[d][i], fb))
        inside_b[d].push_back(static_cast<int>(i));
    if (inside_a[d].size() != inside_b[d].size())
      throw std::invalid_argument("glue_across: facets are not isomorphic");
  }
  // The iso must carry boundary faces of one facet to boundary faces of the
  // other.
  for (int d = 0; d < 3; ++d)
    for (int bi : inside_b[d]) {
      std::vector<int> image;
      for (int v : b.faces[d][bi]) image.push_back(b2a.at(v));
      std::sort(image.begin(), image.end());
      if (!a_index[d].count(image))
        throw std::invalid_argument("glue_across: iso does not preserve incidence");
    }

  // Global ids: A faces first, then B faces, per dimension.
  std::array<int, 4> a_count{}, total{};
  int gid_base = 0;
  std::array<int, 4> offset_a{}, offset_b{};
  for (int d = 0; d < 4; ++d) {
    a_count[d] = static_cast<int>(a.faces[d].size());
    offset_a[d] = gid_base;
    offset_b[d] = gid_base + a_count[d];
    total[d] = a_count[d] + static_cast<int>(b.faces[d].size());
    gid_base += total[d];
  }
  detail::UnionFind uf(gid_base);
  std::vector<bool> removed(gid_base, false);
  for (int d = 0; d < 4; ++d) {
    for (int i : inside_a[d]) removed[offset_a[d] + i] = true;
    for (int i : inside_b[d]) removed[offset_b[d] + i] = true;
  }

  // One merge site per face of the shared facet of dimension 0, 1, 2: the
  // unique transverse face on each side, one dimension up.
  auto transverse = [](const CellComplex4& c, const std::vector<int>& site,
                       const std::vector<int>& shared_facet, int dim_up) {
    std::vector<int> found;
    for (std::size_t i = 0; i < c.faces[dim_up].size(); ++i) {
      const auto& cand = c.faces[dim_up][i];
      if (!CellComplex4::incident(site, cand)) continue;
      if (CellComplex4::incident(cand, shared_facet)) continue;
      found.push_back(static_cast<int>(i));
    }
    return found;
  };
  for (int d = 0; d <= 2; ++d) {
    for (int ai : inside_a[d]) {
      const auto& site_a = a.faces[d][ai];
      std::vector<int> site_b;
      for (int v : site_a) site_b.push_back(a2b.at(v));
      std::sort(site_b.begin(), site_b.end());

      const auto ta = transverse(a, site_a, fa, d + 1);
      const auto tb = transverse(b, site_b, fb, d + 1);
      if (ta.size() != 1 || tb.size() != 1)
        throw std::domain_error(
            "glue_across: junction is not simple (expected one transverse face "
            "per side at dimension " + std::to_string(d) + ")");
      uf.unite(offset_a[d + 1] + ta[0], offset_b[d + 1] + tb[0]);
    }
  }

  // Relabel surviving vertices: A's first, then B's.
  GlueResult out;
  out.a_vertex_map.assign(a.faces[0].size(), -1);
  out.b_vertex_map.assign(b.faces[0].size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < a.faces[0].size(); ++i)
    if (!removed[offset_a[0] + i]) out.a_vertex_map[i] = next++;
  for (std::size_t i = 0; i < b.faces[0].size(); ++i)
    if (!removed[offset_b[0] + i]) out.b_vertex_map[i] = next++;

  for (int d = 0; d < 4; ++d) {
    std::map<int, std::set<int>> classes;  // uf root -> merged vertex set
    auto absorb = [&](int gid, const std::vector<int>& verts, bool from_a) {
      if (removed[gid]) return;
      auto& dst = classes[uf.find(gid)];
      for (int v : verts) {
        const int nv = from_a ? out.a_vertex_map[v] : out.b_vertex_map[v];
        if (nv >= 0) dst.insert(nv);
      }
    };
    for (int i = 0; i < a_count[d]; ++i)
      absorb(offset_a[d] + i, a.faces[d][i], true);
    for (std::size_t i = 0; i < b.faces[d].size(); ++i)
      absorb(offset_b[d] + static_cast<int>(i), b.faces[d][i], false);
    for (auto& entry : classes)
      out.complex.faces[d].push_back({entry.second.begin(), entry.second.end()});
    std::sort(out.complex.faces[d].begin(), out.complex.faces[d].end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chains of 120-cells.
// ---------------------------------------------------------------------------
enum class GluingRule {
  OppositeFacets,  // each cell glues in across one dodecahedron and out
                   // across the antipodal one
  AdjacentFacets,  // out-facet shares a pentagon with the in-facet; only
                   // legal while no cell needs both
};

struct ChainSpec {
  int length = 1;
  GluingRule rule = GluingRule::OppositeFacets;
};

// Face counts of a chain of 120-cells, each glued to the previous across a
// single dodecahedral facet.
inline CellComplex4 glue_chain(const ChainSpec& spec) {
  if (spec.length < 1)
    throw std::invalid_argument("glue_chain: chain length must be at least 1");
  const Cell600 g = build_600_cell_geometry();
  const CellComplex4 base = dualize(g.complex);

  // Facet i of the 120-cell is dual to vertex i of the 600-cell.
  const int v_in = 0;
  const GoldenPoint& qin = g.vertices[v_in];
  int v_out = -1;
  if (spec.rule == GluingRule::OppositeFacets) {
    const GoldenPoint opp = qin.negated();
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
      if (g.vertices[i] == opp) v_out = static_cast<int>(i);
  } else {
    // first neighbour in canonical order
    Golden best;
    bool have = false;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
      if (static_cast<int>(i) == v_in) continue;
      const Golden ip = qin.inner(g.vertices[i]);
      if (!have || best < ip) {
        best = ip;
        have = true;
      }
    }
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
      if (static_cast<int>(i) != v_in && qin.inner(g.vertices[i]) == best) {
        v_out = static_cast<int>(i);
        break;
      }
  }
  if (v_out < 0) throw std::logic_error("glue_chain: out-facet not found");
  if (spec.length == 1) return base;

  // Middle cells carry both gluing facets, which must be disjoint.
  const auto& fin = base.faces[3][v_in];
  const auto& fout = base.faces[3][v_out];
  if (spec.length >= 3) {
    std::vector<int> common;
    std::set_intersection(fin.begin(), fin.end(), fout.begin(), fout.end(),
                          std::back_inserter(common));
    if (!common.empty())
      throw std::domain_error(
          "glue_chain: gluing facets meet inside a middle cell; pick disjoint "
          "facets (opposite rule)");
  }

  // sigma: the automorphism from left multiplication carrying facet(v_in)
  // to facet(v_out), as a permutation of 120-cell vertex ids (tetrahedra).
  const GoldenPoint q = g.vertices[v_out] * qin.conj();
  std::map<GoldenPoint, int> vert_index;
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    vert_index.emplace(g.vertices[i], static_cast<int>(i));
  std::vector<int> perm600(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const auto it = vert_index.find(q * g.vertices[i]);
    if (it == vert_index.end())
      throw std::logic_error("glue_chain: vertex set not closed under rotation");
    perm600[i] = it->second;
  }
  const auto tet_index = detail::face_index(g.complex, 3);
  std::vector<int> sigma(g.complex.faces[3].size());
  for (std::size_t t = 0; t < g.complex.faces[3].size(); ++t) {
    std::vector<int> image;
    for (int v : g.complex.faces[3][t]) image.push_back(perm600[v]);
    std::sort(image.begin(), image.end());
    const auto it = tet_index.find(image);
    if (it == tet_index.end())
      throw std::logic_error("glue_chain: rotation does not preserve the complex");
    sigma[t] = it->second;
  }

  CellComplex4 chain = base;
  // chain ids of the out-facet vertices of the last copy, indexed by the
  // in-facet vertex they will glue to
  std::map<int, int> cur_out;
  for (int t : fin) cur_out[t] = sigma[t];

  for (int step = 2; step <= spec.length; ++step) {
    std::vector<int> a_facet_verts;
    for (const auto& [t, id] : cur_out) a_facet_verts.push_back(id);
    std::sort(a_facet_verts.begin(), a_facet_verts.end());
    const auto idx = detail::face_index(chain, 3);
    const auto it = idx.find(a_facet_verts);
    if (it == idx.end())
      throw std::logic_error("glue_chain: out-facet lost during gluing");

    std::vector<std::pair<int, int>> iso;
    for (const auto& [t, id] : cur_out) iso.push_back({id, t});
    GlueResult res = glue_across(chain, it->second, base, v_in, iso);
    chain = std::move(res.complex);
    std::map<int, int> next_out;
    for (int t : fin) next_out[t] = res.b_vertex_map[sigma[t]];
    cur_out = std::move(next_out);
  }
  return chain;
}

// Doubling a right-angled polytope with V vertices and F two-faces produces
// V + 2F singular two-spheres in the resulting twistor space.
inline SingularLocusDescription double_to_singular_locus(long vertices,
                                                         long two_faces) {
  if (vertices < 0 || two_faces < 0)
    throw std::invalid_argument("double_to_singular_locus: negative counts");
  SingularLocusDescription d;
  d.components.assign(static_cast<std::size_t>(vertices + 2 * two_faces),
                      SingularComponent{0, 0});
  return d;
}

}  // namespace crepant
