#pragma once

// JSON wire formats. Rationals travel as "p/q" strings so that exactness
// survives the trip; every emitted document re-parses to an identical value
// and key order is fixed (ordered_json) so output is byte-stable.
//
// Error split: anything wrong with the *shape* of the input (bad JSON, bad
// types, missing fields, out-of-range indices, non-permutations) throws
// schema_error; inputs that are well-formed but mathematically invalid
// (disconnected origami, 0/0 certificate, ...) surface as the library's
// invalid_argument / domain_error.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "teich/decomposition.hpp"
#include "teich/origami.hpp"
#include "teich/pair_asymptotics.hpp"
#include "teich/ray_limits.hpp"

namespace teich {

using Json = nlohmann::ordered_json;

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw schema_error(std::string("invalid JSON: ") + e.what());
  }
}

namespace detail {

inline const Json& require_field(const Json& j, const char* key, const char* what) {
  if (!j.is_object())
    throw schema_error(std::string(what) + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end())
    throw schema_error(std::string(what) + ": missing \"" + key + "\"");
  return *it;
}

inline Rat rational_from_json(const Json& j, const std::string& what) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer() || j.is_number_unsigned())
    return Rat(mpz_class(j.dump()));  // decimal digits, exact at any size
  throw schema_error(what + ": expected a rational as a \"p/q\" string");
}

inline std::vector<Rat> rational_vector(const Json& j, std::size_t n,
                                        const std::string& what,
                                        bool nonnegative) {
  if (!j.is_array())
    throw schema_error(what + ": expected an array of rationals");
  if (j.size() != n)
    throw schema_error(what + ": expected " + std::to_string(n) + " entries, got " +
                       std::to_string(j.size()));
  std::vector<Rat> out;
  out.reserve(n);
  for (const Json& e : j) {
    Rat r = rational_from_json(e, what);
    if (nonnegative && r < 0)
      throw schema_error(what + ": entries must be nonnegative");
    out.push_back(std::move(r));
  }
  return out;
}

inline long integer_from_json(const Json& j, const std::string& what) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw schema_error(what + ": expected an integer");
  return j.get<long>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Ray decompositions: {"components":[{"id","kind","a","h"},...],
//                      "normalized": bool}

inline RayDecomposition decomposition_from_json(const Json& j) {
  const Json& comps = detail::require_field(j, "components", "ray decomposition");
  if (!comps.is_array() || comps.empty())
    throw schema_error("ray decomposition: \"components\" must be a nonempty array");
  if (j.contains("normalized") && !j.at("normalized").is_boolean())
    throw schema_error("ray decomposition: \"normalized\" must be a boolean");
  std::vector<Component> cs;
  cs.reserve(comps.size());
  for (const Json& c : comps) {
    const Json& id = detail::require_field(c, "id", "component");
    if (!id.is_string() || id.get<std::string>().empty())
      throw schema_error("component: \"id\" must be a nonempty string");
    const Json& kind = detail::require_field(c, "kind", "component");
    if (!kind.is_string())
      throw schema_error("component: \"kind\" must be a string");
    const auto parsed_kind = parse_component_kind(kind.get<std::string>());
    if (!parsed_kind)
      throw schema_error("component: \"kind\" must be \"cylinder\" or \"minimal\"");
    Rat a = detail::rational_from_json(detail::require_field(c, "a", "component"),
                                       "component \"a\"");
    Rat h = detail::rational_from_json(detail::require_field(c, "h", "component"),
                                       "component \"h\"");
    if (a <= 0 || h <= 0)
      throw schema_error("component: \"a\" and \"h\" must be positive");
    cs.push_back({id.get<std::string>(), *parsed_kind, std::move(a), std::move(h)});
  }
  try {
    return RayDecomposition(std::move(cs));
  } catch (const std::invalid_argument& e) {
    throw schema_error(e.what());  // duplicate ids
  }
}

inline Json to_json(const RayDecomposition& d) {
  Json comps = Json::array();
  for (const Component& c : d.components()) {
    Json jc;
    jc["id"] = c.id;
    jc["kind"] = to_string(c.kind);
    jc["a"] = to_string(c.a);
    jc["h"] = to_string(c.h);
    comps.push_back(std::move(jc));
  }
  Json out;
  out["components"] = std::move(comps);
  out["normalized"] = d.is_normalized();
  return out;
}

// {"ray1": <decomposition>, "ray2": <decomposition>}
inline std::pair<RayDecomposition, RayDecomposition> pair_from_json(const Json& j) {
  return {decomposition_from_json(detail::require_field(j, "ray1", "ray pair")),
          decomposition_from_json(detail::require_field(j, "ray2", "ray pair"))};
}

// ---------------------------------------------------------------------------
// Foliations: {"basis": [c_j]} or
//             {"pairings": [u_j],
//              "certificates": [{"pairing": p, "witness": [w_j]}]}

inline FoliationSpec foliation_from_json(const Json& j, std::size_t n) {
  if (!j.is_object()) throw schema_error("foliation: expected an object");
  const bool has_basis = j.contains("basis");
  const bool has_pairings = j.contains("pairings");
  if (has_basis == has_pairings)
    throw schema_error(
        "foliation: provide exactly one of \"basis\" or \"pairings\"");
  if (has_basis) {
    if (j.contains("certificates"))
      throw schema_error("foliation: \"certificates\" require the \"pairings\" form");
    return BasisFoliation{
        detail::rational_vector(j.at("basis"), n, "foliation \"basis\"", true)};
  }
  GeneralFoliation g;
  g.u.u = detail::rational_vector(j.at("pairings"), n, "foliation \"pairings\"", true);
  if (j.contains("certificates")) {
    const Json& certs = j.at("certificates");
    if (!certs.is_array())
      throw schema_error("foliation: \"certificates\" must be an array");
    for (const Json& c : certs) {
      Rat pairing = detail::rational_from_json(
          detail::require_field(c, "pairing", "certificate"), "certificate \"pairing\"");
      if (pairing < 0)
        throw schema_error("certificate: \"pairing\" must be nonnegative");
      g.certificates.push_back(
          {std::move(pairing),
           {detail::rational_vector(detail::require_field(c, "witness", "certificate"),
                                    n, "certificate \"witness\"", true)}});
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Origamis: {"n": 3, "r": [2,1,3], "u": [3,2,1]} — one-indexed images.

inline Origami origami_from_json(const Json& j) {
  const long n = detail::integer_from_json(detail::require_field(j, "n", "origami"),
                                           "origami \"n\"");
  if (n < 1) throw schema_error("origami: \"n\" must be at least 1");
  auto perm = [n, &j](const char* key) {
    const Json& arr = detail::require_field(j, key, "origami");
    if (!arr.is_array() || arr.size() != static_cast<std::size_t>(n))
      throw schema_error(std::string("origami: \"") + key + "\" must be an array of " +
                         std::to_string(n) + " integers");
    std::vector<int> images(static_cast<std::size_t>(n));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (std::size_t i = 0; i < images.size(); ++i) {
      const long v =
          detail::integer_from_json(arr[i], std::string("origami \"") + key + "\"");
      if (v < 1 || v > n)
        throw schema_error(std::string("origami: \"") + key +
                           "\" entries must lie in [1, n]");
      if (seen[static_cast<std::size_t>(v - 1)])
        throw schema_error(std::string("origami: \"") + key +
                           "\" is not a permutation");
      seen[static_cast<std::size_t>(v - 1)] = true;
      images[i] = static_cast<int>(v - 1);
    }
    return images;
  };
  return Origami(perm("r"), perm("u"));  // connectivity is checked by the ctor
}

inline Json to_json(const Origami& o) {
  Json r = Json::array(), u = Json::array();
  for (int i = 0; i < o.size(); ++i) {
    r.push_back(o.right(i) + 1);
    u.push_back(o.up(i) + 1);
  }
  Json out;
  out["n"] = o.size();
  out["r"] = std::move(r);
  out["u"] = std::move(u);
  return out;
}

// ---------------------------------------------------------------------------
// Results. Distances carry the floating value plus the exact arguments:
// log_argument is e^{2d} when that is rational (null when it is not),
// quarter_log_argument is e^{4d} and is always rational for finite values.

inline Json to_json(const LogDistance& d) {
  Json out;
  if (d.is_infinite()) {
    out["value"] = "+inf";
    out["log_argument"] = "+inf";
    out["quarter_log_argument"] = "+inf";
    return out;
  }
  if (d.is_zero())
    out["value"] = 0;
  else
    out["value"] = d.value();
  const auto half = d.half_log_argument();
  if (half)
    out["log_argument"] = to_string(*half);
  else
    out["log_argument"] = nullptr;
  out["quarter_log_argument"] = to_string(d.quarter_log_argument());
  return out;
}

inline Json to_json(const ExtendedValue& v) {
  Json out;
  if (v.is_infinite()) {
    out["value"] = "+inf";
    out["exact"] = "+inf";
  } else {
    out["value"] = v.as_double();
    out["exact"] = to_string(v.value());
  }
  out["exactness"] =
      v.exactness() == Exactness::exact ? "exact" : "certificate-lower-bound";
  return out;
}

}  // namespace teich
