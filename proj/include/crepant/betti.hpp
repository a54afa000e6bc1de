#pragma once

#include <array>
#include <stdexcept>
#include <vector>

namespace crepant {

// Betti and Euler bookkeeping for orbifold twistor spaces and their crepant
// resolutions.

struct SingularComponent {
  long genus = 0;
  long z2z2_count = 0;  // order-four points on the component; not used by the
                        // delta formulas, carried for cross-validation
};

struct SingularLocusDescription {
  std::vector<SingularComponent> components;

  long component_count() const { return static_cast<long>(components.size()); }
  long genus_sum() const {
    long m = 0;
    for (const auto& c : components) m += c.genus;
    return m;
  }
  void validate() const {
    for (const auto& c : components)
      if (c.genus < 0 || c.z2z2_count < 0)
        throw std::invalid_argument("SingularLocusDescription: negative counts");
  }
};

struct ResolutionDeltas {
  long b2 = 0, b3 = 0, chi = 0;
};

// Blowing up n singular components of total genus m changes the Betti
// numbers by (n, 2m) and the Euler characteristic by 2(n - m).
inline ResolutionDeltas resolution_deltas(const SingularLocusDescription& desc) {
  desc.validate();
  const long n = desc.component_count();
  const long m = desc.genus_sum();
  return {n, 2 * m, 2 * (n - m)};
}

struct BettiVector {
  std::array<long, 7> b{};
  bool closed_oriented = true;

  long chi() const {
    long s = 0;
    for (int i = 0; i < 7; ++i) s += (i % 2 == 0 ? b[i] : -b[i]);
    return s;
  }
  bool poincare_duality_ok() const {
    if (!closed_oriented) return true;
    return b[0] == b[6] && b[1] == b[5] && b[2] == b[4];
  }
};

// Betti numbers of the twistor space of a doubled right-angled polytope:
// one in each even degree, zero in each odd degree.
inline BettiVector base_betti_of_double() {
  return {{1, 0, 1, 0, 1, 0, 1}, true};
}

// After resolving the V + 2F singular spheres of the double, b2 and b4 grow
// to 1 + V + 2F while the odd Betti numbers stay zero.
inline BettiVector resolved_betti_of_double(long vertices, long two_faces) {
  if (vertices < 0 || two_faces < 0)
    throw std::invalid_argument("resolved_betti_of_double: negative counts");
  const long b2 = 1 + vertices + 2 * two_faces;
  return {{1, 0, b2, 0, b2, 0, 1}, true};
}

// A locus with exactly `count` components of genus `genus`.
inline SingularLocusDescription uniform_locus_description(long count, long genus) {
  if (count < 1)
    throw std::invalid_argument("uniform_locus_description: need at least one component");
  if (genus < 0)
    throw std::invalid_argument("uniform_locus_description: negative genus");
  SingularLocusDescription d;
  d.components.assign(static_cast<std::size_t>(count), SingularComponent{genus, 0});
  return d;
}

}  // namespace crepant
