#pragma once

// Two-ray asymptotics: limiting Teichmüller distance, modular equivalence,
// asymptoticity, detour distance, optimal shift, minimal shifted distance,
// Busemann equality.
//
// Everything reduces to the per-component modulus ratios p_j = m_j / m'_j
// of an id-aligned pair. Writing s_j = ½ log p_j, the limiting distance of
// the pair shifted by σ is max_j |s_j − σ|, a piecewise-linear function of
// σ; its two one-sided maxima r₁ = max_j p_j and r₂ = max_j 1/p_j determine
// every quantity in this header:
//
//   limiting distance      ½ log max(r₁, r₂)
//   detour distance δ      ½ log r₁ + ½ log r₂ = ½ log(r₁ r₂)
//   optimal shift σ*       ¼ log(r₁ / r₂)
//   min over shifts        ½ δ = ¼ log(r₁ r₂)
//   asymptotic / Busemann  r₁ r₂ = 1  (⇔ all p_j equal)
//
// Distances are stored through e^{4d}, which is rational in every case
// above, so zero-tests, σ*-attainment, and triangle inequalities are exact.

#include "teich/decomposition.hpp"
#include "teich/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace teich {

enum class AlignmentStatus { absolutely_continuous, not_comparable };

// Correspondence between two rays' component lists, keyed by id. The
// vertical foliations are mutually absolutely continuous exactly when the
// id sets coincide; ids are the caller's assertion of topological equality
// of pieces, never inferred from numerics.
struct PairAlignment {
  AlignmentStatus status = AlignmentStatus::not_comparable;
  std::vector<std::pair<std::size_t, std::size_t>> matched;  // (d1 idx, d2 idx)

  bool comparable() const {
    return status == AlignmentStatus::absolutely_continuous;
  }
};

inline PairAlignment align(const RayDecomposition& d1, const RayDecomposition& d2) {
  PairAlignment out;
  if (d1.size() != d2.size()) return out;
  out.matched.reserve(d1.size());
  for (std::size_t j = 0; j < d1.size(); ++j) {
    const auto k = d2.index_of(d1[j].id);
    if (!k) {
      out.matched.clear();
      return out;
    }
    out.matched.emplace_back(j, *k);
  }
  out.status = AlignmentStatus::absolutely_continuous;
  return out;
}

// p_j = m_j / m'_j along the alignment; nullopt when not comparable.
inline std::optional<std::vector<Rat>> modulus_ratios(const RayDecomposition& d1,
                                                      const RayDecomposition& d2) {
  const PairAlignment al = align(d1, d2);
  if (!al.comparable()) return std::nullopt;
  std::vector<Rat> p;
  p.reserve(al.matched.size());
  for (const auto& [j, k] : al.matched)
    p.push_back(d1.modulus(j) / d2.modulus(k));
  return p;
}

// A distance on the Teichmüller scale, stored exactly as ¼ log(arg) with
// arg ≥ 1 rational, or +∞. Half-logs of rationals embed by squaring the
// argument; quarter-logs (optimal shifts, minima) are native.
class LogDistance {
 public:
  static LogDistance zero() { return from_quarter_log(Rat(1)); }
  static LogDistance from_quarter_log(Rat arg) {
    if (arg < 1)
      throw std::invalid_argument("log distance: argument below 1");
    return LogDistance(std::move(arg), false);
  }
  static LogDistance from_half_log(const Rat& arg) {
    return from_quarter_log(arg * arg);
  }
  static LogDistance infinite() { return LogDistance(Rat(0), true); }

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && arg4_ == 1; }

  // e^{4d} as an exact rational.
  const Rat& quarter_log_argument() const {
    if (infinite_)
      throw std::domain_error("log distance: +inf carries no argument");
    return arg4_;
  }

  // e^{2d} when it happens to be rational (always, for limiting and detour
  // distances; generally not for shifted ones).
  std::optional<Rat> half_log_argument() const {
    if (infinite_) return std::nullopt;
    return exact_sqrt(arg4_);
  }

  double value() const {
    if (infinite_) return std::numeric_limits<double>::infinity();
    return 0.25 * log_as_double(arg4_);
  }

  friend bool operator==(const LogDistance& x, const LogDistance& y) {
    if (x.infinite_ != y.infinite_) return false;
    return x.infinite_ || x.arg4_ == y.arg4_;
  }
  friend bool operator<(const LogDistance& x, const LogDistance& y) {
    if (x.infinite_) return false;
    if (y.infinite_) return true;
    return x.arg4_ < y.arg4_;
  }
  friend bool operator<=(const LogDistance& x, const LogDistance& y) {
    return !(y < x);
  }
  // d1 + d2, for triangle-inequality checks: arguments multiply.
  friend LogDistance operator+(const LogDistance& x, const LogDistance& y) {
    if (x.infinite_ || y.infinite_) return infinite();
    return from_quarter_log(x.arg4_ * y.arg4_);
  }

 private:
  LogDistance(Rat arg, bool infinite) : arg4_(std::move(arg)), infinite_(infinite) {}
  Rat arg4_;
  bool infinite_;
};

namespace detail {

// The two one-sided maxima of the modulus ratios, with the smallest index
// attaining each (diagnostics; the values are index-independent).
struct RatioExtremes {
  Rat r1, r2;
  std::size_t argmax1 = 0, argmax2 = 0;
};

inline std::optional<RatioExtremes> ratio_extremes(const RayDecomposition& d1,
                                                   const RayDecomposition& d2) {
  const auto p = modulus_ratios(d1, d2);
  if (!p) return std::nullopt;
  RatioExtremes out{(*p)[0], 1 / (*p)[0], 0, 0};
  for (std::size_t j = 1; j < p->size(); ++j) {
    if ((*p)[j] > out.r1) {
      out.r1 = (*p)[j];
      out.argmax1 = j;
    }
    const Rat inv = 1 / (*p)[j];
    if (inv > out.r2) {
      out.r2 = std::move(inv);
      out.argmax2 = j;
    }
  }
  return out;
}

}  // namespace detail

// lim_t d_T(X_t, Y_t) = ½ log max_j max(p_j, 1/p_j); +∞ across the
// absolute-continuity case split.
inline LogDistance limiting_distance(const RayDecomposition& d1,
                                     const RayDecomposition& d2) {
  const auto ext = detail::ratio_extremes(d1, d2);
  if (!ext) return LogDistance::infinite();
  return LogDistance::from_half_log(std::max(ext->r1, ext->r2));
}

// The constant C with m_j = C·m'_j for all j, when it exists.
inline std::optional<Rat> modular_equivalence(const RayDecomposition& d1,
                                              const RayDecomposition& d2) {
  const auto p = modulus_ratios(d1, d2);
  if (!p) return std::nullopt;
  for (std::size_t j = 1; j < p->size(); ++j)
    if ((*p)[j] != (*p)[0]) return std::nullopt;
  return (*p)[0];
}

inline bool is_asymptotic(const RayDecomposition& d1, const RayDecomposition& d2) {
  return modular_equivalence(d1, d2).has_value();
}

// Busemann points of the two rays agree exactly when the rays are
// asymptotic, i.e. modularly equivalent.
inline bool busemann_equal(const RayDecomposition& d1, const RayDecomposition& d2) {
  return modular_equivalence(d1, d2).has_value();
}

// δ = ½ log r₁ + ½ log r₂, kept as the exact factor pair. Each factor can
// dip below 1, but r₁ r₂ ≥ 1 always, with equality iff asymptotic.
class DetourDistance {
 public:
  static DetourDistance infinite() { return DetourDistance(); }
  DetourDistance(Rat r1, Rat r2, std::size_t argmax1, std::size_t argmax2)
      : ratios_(std::in_place, std::move(r1), std::move(r2)),
        argmax1_(argmax1),
        argmax2_(argmax2) {}

  bool is_infinite() const { return !ratios_.has_value(); }
  bool is_zero() const { return ratios_ && ratios_->first * ratios_->second == 1; }

  const Rat& r1() const { return require().first; }
  const Rat& r2() const { return require().second; }
  std::size_t argmax1() const { return argmax1_; }
  std::size_t argmax2() const { return argmax2_; }

  double value() const {
    if (!ratios_) return std::numeric_limits<double>::infinity();
    return 0.5 * log_as_double(ratios_->first * ratios_->second);
  }

  // δ as a LogDistance: half-log argument r₁ r₂ (≥ 1, rational).
  LogDistance as_log_distance() const {
    if (!ratios_) return LogDistance::infinite();
    return LogDistance::from_half_log(ratios_->first * ratios_->second);
  }

 private:
  DetourDistance() = default;
  const std::pair<Rat, Rat>& require() const {
    if (!ratios_) throw std::domain_error("detour distance: +inf carries no ratios");
    return *ratios_;
  }
  std::optional<std::pair<Rat, Rat>> ratios_;
  std::size_t argmax1_ = 0, argmax2_ = 0;
};

inline DetourDistance detour_distance(const RayDecomposition& d1,
                                      const RayDecomposition& d2) {
  const auto ext = detail::ratio_extremes(d1, d2);
  if (!ext) return DetourDistance::infinite();
  return DetourDistance(ext->r1, ext->r2, ext->argmax1, ext->argmax2);
}

// Shift σ of the second ray's time parameter, carried as the exact value of
// e^{4σ}. real(σ) snaps e^{4σ} to its dyadic double; the exact factories
// accept σ = ½ log r or ¼ log r for rational r > 0.
class ShiftParam {
 public:
  static ShiftParam real(double sigma) {
    if (!std::isfinite(sigma))
      throw std::invalid_argument("shift: sigma must be finite");
    const double e4 = std::exp(4 * sigma);
    if (e4 == 0 || !std::isfinite(e4))
      throw std::invalid_argument("shift: e^{4 sigma} out of range");
    return ShiftParam(rat_of(e4), sigma);
  }
  static ShiftParam quarter_log(const Rat& arg) {
    if (arg <= 0) throw std::invalid_argument("shift: argument must be positive");
    return ShiftParam(arg, 0.25 * log_as_double(arg));
  }
  static ShiftParam half_log(const Rat& arg) {
    if (arg <= 0) throw std::invalid_argument("shift: argument must be positive");
    return ShiftParam(arg * arg, 0.5 * log_as_double(arg));
  }

  const Rat& exp4() const { return e4_; }  // e^{4σ}
  double sigma() const { return sigma_; }

 private:
  ShiftParam(Rat e4, double sigma) : e4_(std::move(e4)), sigma_(sigma) {}
  Rat e4_;
  double sigma_;
};

// lim_t d_T(X_t, Y_{t+σ}): the shift scales m'_j by e^{2σ}, so
// e^{4d} = max_j max(p_j²/w, w/p_j²) with w = e^{4σ} — rational whenever w
// is, i.e. always under ShiftParam's representation.
inline LogDistance shifted_limiting_distance(const RayDecomposition& d1,
                                             const RayDecomposition& d2,
                                             const ShiftParam& sigma) {
  const auto p = modulus_ratios(d1, d2);
  if (!p) return LogDistance::infinite();
  const Rat& w = sigma.exp4();
  Rat arg4 = 1;
  for (const Rat& pj : *p) {
    Rat t = pj * pj / w;
    if (t < 1) t = 1 / t;
    if (t > arg4) arg4 = std::move(t);
  }
  return LogDistance::from_quarter_log(std::move(arg4));
}

// argmin_σ of the shifted limiting distance: σ* = ¼ log(r₁/r₂), the
// midpoint of the s_j = ½ log p_j. nullopt when not comparable.
inline std::optional<ShiftParam> optimal_shift(const RayDecomposition& d1,
                                               const RayDecomposition& d2) {
  const auto ext = detail::ratio_extremes(d1, d2);
  if (!ext) return std::nullopt;
  return ShiftParam::quarter_log(ext->r1 / ext->r2);
}

// inf_σ of the shifted limiting distance = ½ δ = ¼ log(r₁ r₂); attained at
// optimal_shift, exactly on quarter-log arguments.
inline LogDistance min_limiting_distance(const RayDecomposition& d1,
                                         const RayDecomposition& d2) {
  const auto ext = detail::ratio_extremes(d1, d2);
  if (!ext) return LogDistance::infinite();
  return LogDistance::from_quarter_log(ext->r1 * ext->r2);
}

// Brute-force σ-grid scan of the shifted limiting distance (the cross-check
// the closed forms are validated against). Evaluates max_j |σ − ½ log p_j|
// at σ = lo + k·step.
struct SigmaScan {
  double min_value = std::numeric_limits<double>::infinity();
  double argmin = 0;
  std::size_t evaluations = 0;
};

inline SigmaScan sigma_scan(const RayDecomposition& d1, const RayDecomposition& d2,
                            double lo, double hi, double step) {
  if (!(step > 0) || !(lo <= hi))
    throw std::invalid_argument("sigma_scan: need lo <= hi and step > 0");
  SigmaScan out;
  const auto p = modulus_ratios(d1, d2);
  const std::size_t count =
      static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
  out.evaluations = count;
  out.argmin = lo;
  if (!p) return out;  // every shift gives +inf
  std::vector<double> s;
  s.reserve(p->size());
  for (const Rat& pj : *p) s.push_back(0.5 * log_as_double(pj));
  for (std::size_t k = 0; k < count; ++k) {
    const double sigma = lo + static_cast<double>(k) * step;
    double v = 0;
    for (const double sj : s) v = std::max(v, std::abs(sigma - sj));
    if (v < out.min_value) {
      out.min_value = v;
      out.argmin = sigma;
    }
  }
  return out;
}

// Everything the pair-level CLI surfaces and the origami comparison need,
// in one pass.
struct PairReport {
  PairAlignment alignment;
  LogDistance limiting = LogDistance::infinite();
  DetourDistance detour = DetourDistance::infinite();
  std::optional<Rat> modular_ratio;
  bool asymptotic = false;
  bool busemann = false;
  std::optional<ShiftParam> shift;  // σ*
  LogDistance min_distance = LogDistance::infinite();
};

inline PairReport pair_report(const RayDecomposition& d1, const RayDecomposition& d2) {
  PairReport r;
  r.alignment = align(d1, d2);
  r.limiting = limiting_distance(d1, d2);
  r.detour = detour_distance(d1, d2);
  r.modular_ratio = modular_equivalence(d1, d2);
  r.asymptotic = r.modular_ratio.has_value();
  r.busemann = r.asymptotic;
  r.shift = optimal_shift(d1, d2);
  r.min_distance = min_limiting_distance(d1, d2);
  return r;
}

}  // namespace teich
