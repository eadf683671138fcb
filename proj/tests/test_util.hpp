#pragma once

#include <random>
#include <vector>

#include "clusterbench/exactalg.hpp"

namespace clusterbench::testing {

/// Random Laurent polynomial: up to max_terms terms, exponents in
/// [min_exp, max_exp], small rational coefficients.
inline LaurentPoly random_poly(std::mt19937& rng, const VarSet& vars, int max_terms = 4, int min_exp = -2,
                               int max_exp = 2) {
  std::uniform_int_distribution<int> terms(0, max_terms);
  std::uniform_int_distribution<int> exps(min_exp, max_exp);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  LaurentPoly p(vars);
  const int t = terms(rng);
  for (int k = 0; k < t; ++k) {
    Exponent e(vars.size());
    for (auto& x : e) x = exps(rng);
    p.add_term(e, make_coef(num(rng), den(rng)));
  }
  return p;
}

inline LaurentPoly random_nonzero_poly(std::mt19937& rng, const VarSet& vars, int max_terms = 4, int min_exp = -2,
                                       int max_exp = 2) {
  while (true) {
    auto p = random_poly(rng, vars, max_terms, min_exp, max_exp);
    if (!p.is_zero()) return p;
  }
}

inline std::vector<Coef> random_point(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(1, 9);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<Coef> pt;
  for (std::size_t i = 0; i < n; ++i) pt.push_back(make_coef(sign(rng) ? num(rng) : -num(rng), den(rng)));
  return pt;
}

}  // namespace clusterbench::testing
