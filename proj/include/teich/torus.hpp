#pragma once

// Exact flat-torus oracle. On the torus everything the library computes
// asymptotically has a finite-t closed form:
//
//   Ext_ω(p,q)   = ((p+qx)² + (qy)²) / y          for ω = x + iy
//   vertical ray ω_t = x + i e^{-2t} y
//   d_T(ω, ω')   = ½ arccosh(1 + |ω−ω'|² / (2 y y'))
//
// which makes this module an independent check on every limit formula: the
// vertical decomposition of ω has a single component with (a,h) = (1,y)
// under the normalization i(G,(1,0)) = 1, so e^{-2t}Ext_{ω_t}(p,q) equals
// the shrink limit (p+qx)²/y plus the exact residual e^{-4t} q² y.
//
// Coordinates are binary doubles. For the exact checks a double x is read
// as the rational s/r it was meant to encode whenever the smallest-
// denominator reconstruction (r ≤ 1000, within 1e-9) succeeds, and as its
// exact dyadic value otherwise; y is always taken dyadically.

#include "teich/decomposition.hpp"
#include "teich/rational.hpp"
#include "teich/ray_limits.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace teich {

struct TorusPoint {
  double re;
  double im;
  TorusPoint(double re_, double im_) : re(re_), im(im_) {
    if (!std::isfinite(re) || !std::isfinite(im) || im <= 0)
      throw std::invalid_argument("torus point must lie in the upper half plane");
  }
};

// Primitive class of a simple closed curve with holonomy p + qω, stored
// with q > 0 or (q = 0 and p > 0): classes are unoriented.
struct CurveClass {
  long p;
  long q;
  CurveClass(long p_, long q_) : p(p_), q(q_) {
    if (p == 0 && q == 0)
      throw std::invalid_argument("curve class: (0,0) is not a curve");
    if (std::gcd(std::abs(p), std::abs(q)) != 1)
      throw std::invalid_argument("curve class must be primitive");
    if (q < 0 || (q == 0 && p < 0)) {
      p = -p;
      q = -q;
    }
  }
  friend bool operator==(const CurveClass& x, const CurveClass& y) {
    return x.p == y.p && x.q == y.q;
  }
};

// i((p,q),(r,s)) = |ps − qr|.
inline long intersection(const CurveClass& f, const CurveClass& g) {
  return std::abs(f.p * g.q - f.q * g.p);
}

inline double ext_torus(const TorusPoint& w, const CurveClass& c) {
  const double re = c.p + c.q * w.re;
  const double im = c.q * w.im;
  return (re * re + im * im) / w.im;
}

inline TorusPoint vertical_ray(const TorusPoint& w, double t) {
  return TorusPoint(w.re, std::exp(-2 * t) * w.im);
}

// Smallest-denominator rational s/r with r ≤ max_den and |x − s/r| ≤ tol.
// The first hit in increasing r is automatically in lowest terms.
inline std::optional<std::pair<long, long>> rational_slope(double x,
                                                           long max_den = 1000,
                                                           double tol = 1e-9) {
  for (long r = 1; r <= max_den; ++r) {
    const long s = std::lround(x * static_cast<double>(r));
    if (std::abs(x - static_cast<double>(s) / static_cast<double>(r)) <= tol)
      return std::pair{s, r};
  }
  return std::nullopt;
}

// ω with exact coordinates: re reconstructed when it encodes a rational
// slope, dyadic otherwise; im always dyadic.
struct ExactTorus {
  Rat x;
  Rat y;
};

inline ExactTorus exact_point(const TorusPoint& w) {
  if (const auto slope = rational_slope(w.re))
    return {rat(slope->first, slope->second), rat_of(w.im)};
  return {rat_of(w.re), rat_of(w.im)};
}

inline Rat ext_torus_exact(const ExactTorus& w, const CurveClass& c) {
  const Rat re = c.p + c.q * w.x;
  const Rat im = c.q * w.y;
  return (re * re + im * im) / w.y;
}

// Ext along the vertical ray at the time with e^{-2t} = rho, exactly.
inline Rat ext_torus_exact_flowed(const ExactTorus& w, const CurveClass& c,
                                  const Rat& rho) {
  if (rho <= 0) throw std::invalid_argument("ext flowed: rho must be positive");
  return ext_torus_exact({w.x, rho * w.y}, c);
}

// The class of the vertical direction, (−s, r) for re(ω) = s/r; nullopt
// when the slope is irrational.
inline std::optional<CurveClass> vertical_curve_class(const TorusPoint& w) {
  const auto slope = rational_slope(w.re);
  if (!slope) return std::nullopt;
  return CurveClass(-slope->first, slope->second);
}

// i(G, (p,q)) = |p + q·x| for the vertical component G normalized by
// i(G,(1,0)) = 1; exact in the semantic coordinates.
inline Rat vertical_pairing(const TorusPoint& w, const CurveClass& c) {
  const Rat v = c.p + c.q * exact_point(w).x;
  return v < 0 ? Rat(-v) : v;
}

// Vertical decomposition of the ray from ω: one component, (a,h) = (1,y),
// modulus 1/y, cylinder iff the slope is rational. The id encodes the
// slope so that only equal-slope rays ever align. Horizontal data is the
// vertical data of −1/ω.
inline RayDecomposition ray_data_torus(const TorusPoint& w,
                                       Direction dir = Direction::vertical) {
  if (dir == Direction::horizontal) {
    const double norm = w.re * w.re + w.im * w.im;
    return ray_data_torus(TorusPoint(-w.re / norm, w.im / norm),
                          Direction::vertical);
  }
  const auto slope = rational_slope(w.re);
  std::string id = "V:";
  if (slope) {
    id += to_string(rat(slope->first, slope->second));
  } else {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), w.re,
                                   std::chars_format::hex);
    id.append(buf, res.ptr);
  }
  const ComponentKind kind =
      slope ? ComponentKind::cylinder : ComponentKind::minimal_ergodic;
  return RayDecomposition({{std::move(id), kind, rat(1), rat_of(w.im)}});
}

inline double teich_dist_exact(const TorusPoint& a, const TorusPoint& b) {
  const double dx = a.re - b.re;
  const double dy = a.im - b.im;
  const double cosh_dh = 1 + (dx * dx + dy * dy) / (2 * a.im * b.im);
  return 0.5 * std::acosh(cosh_dh);
}

// ω ↦ (aω+b)/(cω+d) for an integer matrix with ad − bc = 1, together with
// the matching curve transform: (p,q) ↦ (ap − bq, −cp + dq) preserves
// extremal lengths.
inline TorusPoint apply_mapping_class(const TorusPoint& w, long a, long b, long c,
                                      long d) {
  if (a * d - b * c != 1)
    throw std::invalid_argument("mapping class: determinant must be 1");
  const double denom_re = c * w.re + d;
  const double denom_im = c * w.im;
  const double norm = denom_re * denom_re + denom_im * denom_im;
  const double num_re = a * w.re + b;
  const double num_im = a * w.im;
  return TorusPoint((num_re * denom_re + num_im * denom_im) / norm, w.im / norm);
}

inline CurveClass transform_curve(const CurveClass& g, long a, long b, long c,
                                  long d) {
  if (a * d - b * c != 1)
    throw std::invalid_argument("mapping class: determinant must be 1");
  return CurveClass(a * g.p - b * g.q, -c * g.p + d * g.q);
}

// ½ log max over primitive |p|,|q| ≤ B of Ext_{ω'}/Ext_ω, with the argmax.
// Ratios are compared exactly; ties go to the lexicographically smallest
// (p,q), which the enumeration order realizes with a strict max.
struct KerckhoffResult {
  double value;
  CurveClass argmax;
  Rat ratio;  // the exact maximal Ext ratio, e^{2·value}
};

inline KerckhoffResult kerckhoff_sup(const TorusPoint& w, const TorusPoint& w2,
                                     long bound) {
  if (bound < 1) throw std::invalid_argument("kerckhoff_sup: bound must be >= 1");
  const ExactTorus e1 = exact_point(w);
  const ExactTorus e2 = exact_point(w2);
  std::optional<CurveClass> best;
  Rat best_ratio;
  for (long p = -bound; p <= bound; ++p) {
    for (long q = 0; q <= bound; ++q) {
      if (q == 0 && p <= 0) continue;  // canonical reps only, and skip (0,0)
      if (std::gcd(std::abs(p), q) != 1) continue;
      const CurveClass c(p, q);
      Rat ratio = ext_torus_exact(e2, c) / ext_torus_exact(e1, c);
      if (!best || ratio > best_ratio) {
        best = c;
        best_ratio = std::move(ratio);
      }
    }
  }
  return {0.5 * log_as_double(best_ratio), *best, best_ratio};
}

// One sampled point of the limit verification: the two renormalized
// extremal lengths of a curve at time t, their limits, and the exact
// closed-form residual of the shrink side.
struct TorusLimitEntry {
  CurveClass curve;
  double t;
  double shrink_measured;   // e^{-2t}·Ext_{ω_t}(curve), floating flow
  Rat shrink_limit_exact;   // (p+qx)²/y
  Rat shrink_residual;      // e^{-4t}·q²y at the dyadic snap of e^{-2t}
  double shrink_mismatch;   // |measured − limit − residual|
  bool walsh_ok;            // exact: e^{-2t}Ext ≥ shrink limit, closed forms
  double grow_measured;     // e^{2t}·Ext_{ω_t}(curve)
  ExtendedValue grow_limit; // finite q²y only for the vertical class
};

struct CurvePairCheck {
  CurveClass f, g;
  double t;
  bool holds;     // Ext·Ext ≥ i(f,g)², exact
  bool equality;  // exact equality (vertical/horizontal pairs on x = 0)
};

struct TorusVerifyReport {
  std::vector<TorusLimitEntry> entries;
  std::vector<CurvePairCheck> pair_checks;
  std::vector<std::string> failures;
  double max_shrink_mismatch = 0;
  bool ok() const { return failures.empty(); }
};

// Checks every curve at every grid time against the closed forms: the
// Walsh inequality exactly, the residual identity to `tol` in floating
// point, and the Cauchy–Schwarz bound Ext(f)·Ext(g) ≥ i(f,g)² exactly for
// all curve pairs. Failures are collected, never thrown.
inline TorusVerifyReport verify_limits(const TorusPoint& w,
                                       const std::vector<CurveClass>& curves,
                                       const std::vector<double>& t_grid,
                                       double tol = 1e-9) {
  TorusVerifyReport report;
  const ExactTorus ex = exact_point(w);
  const auto vclass = vertical_curve_class(w);
  const RayDecomposition data = ray_data_torus(w);

  // Exact flowed extremal lengths, shared by the Walsh checks and every
  // pair check below: one evaluation per (curve, time) instead of per pair.
  std::vector<Rat> rhos;
  rhos.reserve(t_grid.size());
  for (const double t : t_grid) rhos.push_back(rat_of(std::exp(-2 * t)));
  std::vector<std::vector<Rat>> ext_at(t_grid.size());
  for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
    ext_at[ti].reserve(curves.size());
    for (const CurveClass& c : curves)
      ext_at[ti].push_back(ext_torus_exact_flowed(ex, c, rhos[ti]));
  }

  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const CurveClass& c = curves[ci];
    const Rat u = vertical_pairing(w, c);
    const Rat limit = shrink_limit(data, {{u}});
    const Rat qq_y = Rat(c.q) * Rat(c.q) * ex.y;
    const bool is_vertical = vclass && c == *vclass;
    const ExtendedValue grow =
        is_vertical ? ExtendedValue::finite(qq_y) : ExtendedValue::infinite();

    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
      const double t = t_grid[ti];
      const Rat& rho = rhos[ti];
      const TorusPoint flowed = vertical_ray(w, t);

      TorusLimitEntry e{c,
                        t,
                        std::exp(-2 * t) * ext_torus(flowed, c),
                        limit,
                        rho * rho * qq_y,
                        0.0,
                        true,
                        std::exp(2 * t) * ext_torus(flowed, c),
                        grow};
      e.shrink_mismatch =
          std::abs(e.shrink_measured - as_double(limit + e.shrink_residual));
      report.max_shrink_mismatch =
          std::max(report.max_shrink_mismatch, e.shrink_mismatch);

      // Walsh inequality on the exact closed forms: e^{-2t}Ext − limit is
      // the residual, a square times q²y, so ≥ must hold identically.
      e.walsh_ok = rho * ext_at[ti][ci] >= limit;

      if (!e.walsh_ok)
        report.failures.push_back("walsh violated at t=" + std::to_string(t));
      if (e.shrink_mismatch > tol)
        report.failures.push_back("shrink residual mismatch " +
                                  std::to_string(e.shrink_mismatch) + " at t=" +
                                  std::to_string(t));
      if (grow.is_finite() &&
          std::abs(e.grow_measured - grow.as_double()) > tol)
        report.failures.push_back("grow limit drift at t=" + std::to_string(t));
      report.entries.push_back(std::move(e));
    }
  }

  for (std::size_t i = 0; i < curves.size(); ++i)
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      const Rat isq = Rat(intersection(curves[i], curves[j])) *
                      Rat(intersection(curves[i], curves[j]));
      for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
        const Rat product = ext_at[ti][i] * ext_at[ti][j];
        CurvePairCheck chk{curves[i], curves[j], t_grid[ti], product >= isq,
                           product == isq};
        if (!chk.holds)
          report.failures.push_back("extremal-length product below i² at t=" +
                                    std::to_string(t_grid[ti]));
        report.pair_checks.push_back(chk);
      }
    }

  return report;
}

}  // namespace teich
