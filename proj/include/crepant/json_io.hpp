#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "crepant/betti.hpp"
#include "crepant/exact.hpp"
#include "crepant/polytope.hpp"
#include "crepant/toric.hpp"

namespace crepant {

using nlohmann::json;

// JSON conventions: integer vector entries are JSON numbers (strings only if
// they overflow 64 bits); rationals are always "p/q" strings so nothing is
// ever rounded.

inline json int_to_json(const Int& x) {
  if (x.fits_slong_p()) return json(static_cast<long>(x.get_si()));
  return json(x.get_str());
}

inline Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::invalid_argument("expected an integer or integer string");
}

inline json vec_to_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(int_to_json(x));
  return a;
}

inline Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an integer array");
  Vec v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

inline json rat_to_json(const Rat& q) { return json(rat_to_string(q)); }

inline Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>())));
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw std::invalid_argument("expected a rational \"p/q\" string");
}

inline json ratvec_to_json(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rat_to_json(x));
  return a;
}

inline json halfspace_to_json(const HalfSpace& h) {
  return json{{"normal", vec_to_json(h.normal)}, {"level", rat_to_json(h.level)}};
}

inline HalfSpace halfspace_from_json(const json& j) {
  if (!j.is_object() || !j.contains("normal") || !j.contains("level"))
    throw std::invalid_argument("halfspace needs \"normal\" and \"level\"");
  return HalfSpace(vec_from_json(j.at("normal")), rat_from_json(j.at("level")));
}

inline json polyhedron_to_json(const Polyhedron& p) {
  json hs = json::array();
  for (const auto& h : p.halfspaces()) hs.push_back(halfspace_to_json(h));
  return json{{"dim", p.ambient_dim()}, {"halfspaces", hs}};
}

inline Polyhedron polyhedron_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("halfspaces"))
    throw std::invalid_argument("polyhedron needs \"dim\" and \"halfspaces\"");
  std::vector<HalfSpace> hs;
  for (const auto& h : j.at("halfspaces")) hs.push_back(halfspace_from_json(h));
  return Polyhedron::from_halfspaces(j.at("dim").get<int>(), std::move(hs));
}

inline json cutspec_to_json(const CutSpec& spec) {
  json hs = json::array();
  for (const auto& h : spec.halfspaces) hs.push_back(halfspace_to_json(h));
  return json{{"halfspaces", hs}};
}

inline CutSpec cutspec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("halfspaces"))
    throw std::invalid_argument("cut spec needs \"halfspaces\"");
  CutSpec out;
  for (const auto& h : j.at("halfspaces")) out.halfspaces.push_back(halfspace_from_json(h));
  return out;
}

inline json locus_to_json(const SingularLocusDescription& d) {
  json comps = json::array();
  for (const auto& c : d.components)
    comps.push_back(json{{"genus", c.genus}, {"z2z2", c.z2z2_count}});
  return json{{"components", comps}};
}

inline SingularLocusDescription locus_from_json(const json& j) {
  if (!j.is_object() || !j.contains("components"))
    throw std::invalid_argument("singular locus needs \"components\"");
  SingularLocusDescription d;
  for (const auto& c : j.at("components")) {
    SingularComponent comp;
    comp.genus = c.at("genus").get<long>();
    if (c.contains("z2z2")) comp.z2z2_count = c.at("z2z2").get<long>();
    d.components.push_back(comp);
  }
  d.validate();
  return d;
}

}  // namespace crepant
