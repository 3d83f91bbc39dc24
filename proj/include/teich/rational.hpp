#pragma once

// Exact rational scalars shared by every module. GMP's mpq_class does the
// arithmetic; the helpers here pin down the conventions the rest of the
// library relies on: canonical form everywhere, "p/q" strings with nonzero
// denominator, exact conversion from binary doubles, and a log that works
// far outside double range.

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace teich {

using Rat = mpq_class;

// Malformed serialized input (bad rational strings, bad JSON shapes).
// Distinct from std::invalid_argument so the CLI can map the two to
// different exit codes.
struct schema_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Every finite double is a dyadic rational; this conversion is exact.
inline Rat rat_of(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rat_of: non-finite double");
  return Rat(x);
}

inline double as_double(const Rat& r) { return r.get_d(); }

// "p" or "p/q" with optional signs and q != 0; nothing else.
inline Rat parse_rat(std::string_view text) {
  const auto integer_token = [](std::string_view s) {
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char ch : s)
      if (ch < '0' || ch > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num_part =
      slash == std::string_view::npos ? text : text.substr(0, slash);
  const std::string_view den_part =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!integer_token(num_part) || !integer_token(den_part))
    throw schema_error("not a rational: '" + std::string(text) + "'");
  const auto drop_plus = [](std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return std::string(s);
  };
  const mpz_class num{drop_plus(num_part)};
  const mpz_class den{drop_plus(den_part)};
  if (den == 0) throw schema_error("zero denominator: '" + std::string(text) + "'");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Canonical "p/q" (or "p" when q = 1); parse_rat round-trips it.
inline std::string to_string(const Rat& r) { return r.get_str(); }

// Exact square root when numerator and denominator of the canonical form
// are both perfect squares.
inline std::optional<Rat> exact_sqrt(const Rat& r) {
  if (r < 0) return std::nullopt;
  if (!mpz_perfect_square_p(r.get_num_mpz_t()) ||
      !mpz_perfect_square_p(r.get_den_mpz_t()))
    return std::nullopt;
  mpz_class num_root, den_root;
  mpz_sqrt(num_root.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(den_root.get_mpz_t(), r.get_den_mpz_t());
  return Rat(num_root, den_root);
}

// log of a positive rational, stable even when the value itself would
// overflow or underflow a double.
inline double log_as_double(const Rat& r) {
  if (r <= 0) throw std::invalid_argument("log_as_double: nonpositive argument");
  signed long num_exp = 0, den_exp = 0;
  const double num_mant = mpz_get_d_2exp(&num_exp, r.get_num_mpz_t());
  const double den_mant = mpz_get_d_2exp(&den_exp, r.get_den_mpz_t());
  constexpr double ln2 = 0.69314718055994530941723212145818;
  return (std::log(num_mant) - std::log(den_mant)) +
         static_cast<double>(num_exp - den_exp) * ln2;
}

}  // namespace teich
