#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "clusterbench/errors.hpp"

namespace clusterbench {

/// Exact rational coefficient. mpq_class keeps numerator and denominator
/// coprime with a positive denominator after canonicalize().
using Coef = mpq_class;

inline Coef make_coef(long num, long den = 1) {
  if (den == 0) throw DivisionByZero("zero denominator");
  Coef c(num, den);
  c.canonicalize();
  return c;
}

/// Parses "p" or "p/q" with optional sign.
inline Coef parse_coef(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  Coef c;
  if (s.empty() || c.set_str(s, 10) != 0) throw ParseError("bad rational '" + std::string(text) + "'");
  if (c.get_den() == 0) throw DivisionByZero("zero denominator in '" + std::string(text) + "'");
  c.canonicalize();
  return c;
}

inline std::string to_string(const Coef& c) { return c.get_str(10); }

/// c^e for any integer e; c must be nonzero when e < 0.
inline Coef pow(const Coef& c, long e) {
  if (e == 0) return Coef(1);
  if (e < 0) {
    if (c == 0) throw EvalDomainError("zero raised to a negative power");
    return pow(Coef(1) / c, -e);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), c.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), c.get_den_mpz_t(), static_cast<unsigned long>(e));
  Coef out(num, den);
  out.canonicalize();
  return out;
}

inline bool is_integer(const Coef& c) { return c.get_den() == 1; }

}  // namespace clusterbench
