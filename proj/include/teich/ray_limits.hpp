#pragma once

// Single-ray extremal-length asymptotics.
//
// Along the ray X_t of a decomposition d, the extremal length of a measured
// foliation F either decays like e^{2t} or grows like e^{2t}, and both
// renormalized limits have closed forms in the component data:
//
//   shrink:  lim e^{-2t} Ext_{X_t}(F) = Σ_j a_j u_j² / h_j,   u_j = i(G_j, F)
//   grow:    lim e^{+2t} Ext_{X_t}(F) = Σ_j c_j² h_j / a_j    for F = Σ_j c_j G_j
//
// For an F supported in the components' complement that is not given in the
// basis, the grow limit is only bounded below, by Cauchy–Schwarz against any
// competitor F': lim ≥ i(F,F')² / (Σ_j a_j i(G_j,F')²/h_j). Both closed
// forms are invariant under the symbolic area scale of RayDecomposition, so
// everything here is exact.

#include "teich/decomposition.hpp"
#include "teich/rational.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace teich {

// F = Σ_j c_j G_j, spanned by the ray's own components. c_j ≥ 0, not all 0.
struct BasisFoliation {
  std::vector<Rat> c;
};

// Pairings u_j = i(G_j, F) of an arbitrary measured foliation F.
struct IntersectionVector {
  std::vector<Rat> u;
};

namespace detail {

inline void check_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(want) + " entries, got " +
                                std::to_string(got));
}

inline void check_nonnegative(const std::vector<Rat>& v, const char* what) {
  for (const Rat& x : v)
    if (x < 0) throw std::invalid_argument(std::string(what) + ": negative entry");
}

}  // namespace detail

// lim e^{-2t} Ext_{X_t}(F) = Σ_j a_j u_j² / h_j.
inline Rat shrink_limit(const RayDecomposition& d, const IntersectionVector& u) {
  detail::check_size(u.u.size(), d.size(), "shrink_limit");
  detail::check_nonnegative(u.u, "shrink_limit");
  Rat total = 0;
  for (std::size_t j = 0; j < d.size(); ++j)
    total += d[j].a * u.u[j] * u.u[j] / d[j].h;
  return total;
}

// lim e^{-t} √Ext_{X_t}(F): the 1-homogeneous version, returned as its exact
// square together with the real root.
struct ShrinkRoot {
  Rat square;
  double root;
};

inline ShrinkRoot shrink_limit_root(const RayDecomposition& d,
                                    const IntersectionVector& u) {
  Rat square = shrink_limit(d, u);
  const double root = std::sqrt(as_double(square));
  return {std::move(square), root};
}

// lim e^{2t} Ext_{X_t}(F) = Σ_j c_j² h_j / a_j for F = Σ c_j G_j.
inline Rat grow_limit_basis(const RayDecomposition& d, const BasisFoliation& f) {
  detail::check_size(f.c.size(), d.size(), "grow_limit_basis");
  detail::check_nonnegative(f.c, "grow_limit_basis");
  bool any_positive = false;
  Rat total = 0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (f.c[j] > 0) any_positive = true;
    total += f.c[j] * f.c[j] * d[j].h / d[j].a;
  }
  if (!any_positive)
    throw std::invalid_argument("grow_limit_basis: zero foliation");
  return total;
}

// The competitor pairings that turn the Cauchy–Schwarz bound into equality
// for a basis foliation: u'_j = c_j h_j / a_j.
inline IntersectionVector optimal_witness(const RayDecomposition& d,
                                          const BasisFoliation& f) {
  detail::check_size(f.c.size(), d.size(), "optimal_witness");
  detail::check_nonnegative(f.c, "optimal_witness");
  bool any_positive = false;
  IntersectionVector out;
  out.u.reserve(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (f.c[j] > 0) any_positive = true;
    out.u.push_back(f.c[j] * d[j].h / d[j].a);
  }
  if (!any_positive)
    throw std::invalid_argument("optimal_witness: zero foliation");
  return out;
}

enum class Exactness { exact, certificate_only };

// Outcome of a grow-limit computation: the exact value (finite or +∞), or,
// when only certificates are available, the best finite lower bound they
// establish. A lower bound is never +∞ — that case is promoted to the exact
// infinite value.
class ExtendedValue {
 public:
  static ExtendedValue finite(Rat v) {
    return ExtendedValue(Kind::finite, std::move(v), Exactness::exact);
  }
  static ExtendedValue infinite() {
    return ExtendedValue(Kind::infinite, Rat(0), Exactness::exact);
  }
  static ExtendedValue lower_bound(Rat v) {
    return ExtendedValue(Kind::lower_bound, std::move(v),
                         Exactness::certificate_only);
  }

  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_infinite() const { return kind_ == Kind::infinite; }
  bool is_lower_bound() const { return kind_ == Kind::lower_bound; }
  Exactness exactness() const { return exactness_; }

  const Rat& value() const {
    if (kind_ == Kind::infinite)
      throw std::domain_error("extended value: +inf carries no rational value");
    return value_;
  }

  double as_double() const {
    if (kind_ == Kind::infinite) return std::numeric_limits<double>::infinity();
    return teich::as_double(value_);
  }

  friend bool operator==(const ExtendedValue& x, const ExtendedValue& y) {
    if (x.kind_ != y.kind_) return false;
    if (x.kind_ == Kind::infinite) return true;
    return x.value_ == y.value_;
  }

 private:
  enum class Kind { finite, infinite, lower_bound };
  ExtendedValue(Kind kind, Rat value, Exactness exactness)
      : kind_(kind), value_(std::move(value)), exactness_(exactness) {}
  Kind kind_;
  Rat value_;
  Exactness exactness_;
};

// One Cauchy–Schwarz certificate: a competitor F' with i(F, F') = pairing
// and i(G_j, F') = witness_j gives
//
//   lim e^{2t} Ext_{X_t}(F) ≥ pairing² / (Σ_j a_j witness_j² / h_j).
//
// A zero denominator with positive pairing certifies +∞; 0/0 certifies
// nothing and is rejected.
inline ExtendedValue grow_certificate(const RayDecomposition& d, const Rat& pairing,
                                      const IntersectionVector& witness) {
  detail::check_size(witness.u.size(), d.size(), "grow_certificate");
  detail::check_nonnegative(witness.u, "grow_certificate");
  if (pairing < 0)
    throw std::invalid_argument("grow_certificate: negative pairing");
  const Rat denom = shrink_limit(d, witness);
  if (denom == 0) {
    if (pairing == 0)
      throw std::domain_error("grow_certificate: 0/0 is uninformative");
    return ExtendedValue::infinite();
  }
  return ExtendedValue::lower_bound(pairing * pairing / denom);
}

struct Certificate {
  Rat pairing;                  // i(F, F') for the competitor F'
  IntersectionVector witness;   // i(G_j, F')
};

// A foliation outside the component basis, described operationally: its
// pairings with the components plus whatever certificates are known for it.
struct GeneralFoliation {
  IntersectionVector u;
  std::vector<Certificate> certificates;
};

using FoliationSpec = std::variant<BasisFoliation, GeneralFoliation>;

// lim e^{2t} Ext_{X_t}(F).
//  * basis F: exact and finite.
//  * general F crossing some component (u_j > 0): exactly +∞.
//  * general F with u ≡ 0: finite, but not determined by the pairing data
//    alone — the best provided certificate gives a lower bound.
inline ExtendedValue grow_limit(const RayDecomposition& d, const FoliationSpec& f) {
  if (const auto* basis = std::get_if<BasisFoliation>(&f))
    return ExtendedValue::finite(grow_limit_basis(d, *basis));

  const auto& gen = std::get<GeneralFoliation>(f);
  detail::check_size(gen.u.u.size(), d.size(), "grow_limit");
  detail::check_nonnegative(gen.u.u, "grow_limit");
  for (const Rat& uj : gen.u.u)
    if (uj > 0) return ExtendedValue::infinite();
  if (gen.certificates.empty())
    throw std::invalid_argument(
        "grow_limit: foliation disjoint from every component needs at least "
        "one certificate");
  bool have = false;
  Rat best = 0;
  for (const Certificate& cert : gen.certificates) {
    const ExtendedValue v = grow_certificate(d, cert.pairing, cert.witness);
    if (v.is_infinite()) return ExtendedValue::infinite();
    if (!have || v.value() > best) {
      best = v.value();
      have = true;
    }
  }
  return ExtendedValue::lower_bound(std::move(best));
}

}  // namespace teich
