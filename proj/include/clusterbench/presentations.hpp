#pragma once

#include <string>
#include <vector>

#include "clusterbench/exactalg.hpp"
#include "clusterbench/seeds.hpp"

namespace clusterbench {

/// Generators written in the initial cluster variables together with one
/// relation among them, written in the generator symbols.
struct Presentation {
  std::string name;
  VarSet cluster_vars;          // x_1..x_n
  VarSet symbols;               // generator names used by the relation
  std::vector<RationalFn> generators;  // one per symbol, over cluster_vars
  LaurentPoly relation;         // over symbols
  int projective_degree = 0;
  std::string closure_note;
  std::string completeness = "relation verified; ideal completeness not checked";
};

inline Presentation a2_presentation() {
  Presentation p;
  p.name = "A2";
  p.cluster_vars = VarSet({"x_1", "x_2"});
  p.symbols = VarSet({"u", "v", "w"});
  const auto& x = p.cluster_vars;
  p.generators = {RationalFn(parse_laurent(x, "x_1")),
                  RationalFn(parse_laurent(x, "1 + x_1"), parse_laurent(x, "x_2")),
                  RationalFn(parse_laurent(x, "1 + x_2"), parse_laurent(x, "x_1"))};
  p.relation = parse_laurent(p.symbols, "u*v*w - u - v - 1");
  p.projective_degree = 3;
  p.closure_note = "projective closure is a cubic surface (described as a cubic in P^3)";
  return p;
}

inline Presentation a3_presentation() {
  Presentation p;
  p.name = "A3";
  p.cluster_vars = VarSet({"x_1", "x_2", "x_3"});
  p.symbols = VarSet({"t", "w", "x_1", "x_3"});
  const auto& x = p.cluster_vars;
  p.generators = {RationalFn(parse_laurent(x, "1 + x_2 + x_1*x_3"), parse_laurent(x, "x_2*x_3")),
                  RationalFn(parse_laurent(x, "1 + x_2"), parse_laurent(x, "x_1")),
                  RationalFn(parse_laurent(x, "x_1")), RationalFn(parse_laurent(x, "x_3"))};
  p.relation = parse_laurent(p.symbols, "t*w*x_1*x_3 - t*x_3 - w*x_1 - x_1*x_3");
  p.projective_degree = 4;
  p.closure_note = "projective closure is a quartic hypersurface in P^4";
  return p;
}

/// The relation with every generator symbol replaced by its expression.
inline RationalFn substituted_relation(const Presentation& p) {
  std::map<std::string, RationalFn> images;
  for (std::size_t i = 0; i < p.symbols.size(); ++i) images.emplace(p.symbols.name(i), p.generators.at(i));
  return substitute(p.relation, images, p.cluster_vars);
}

inline bool verify_presentation(const Presentation& p) {
  return rf_equal(substituted_relation(p), RationalFn(LaurentPoly(p.cluster_vars)));
}

/// Human-readable substitution trace.
inline std::vector<std::string> verification_trace(const Presentation& p) {
  std::vector<std::string> lines;
  lines.push_back("relation: " + to_string(p.relation));
  for (std::size_t i = 0; i < p.symbols.size(); ++i)
    lines.push_back(p.symbols.name(i) + " = " + to_string(p.generators[i]));
  const RationalFn r = substituted_relation(p);
  lines.push_back("substituted: " + to_string(r));
  lines.push_back(std::string("result: ") + (verify_presentation(p) ? "0" : "nonzero"));
  return lines;
}

/// Homogenization with a new variable (default z): each term is multiplied
/// by z^(d - deg), d the total degree.
inline LaurentPoly homogenize(const LaurentPoly& p, const std::string& z = "z") {
  if (!p.is_polynomial()) throw Error("homogenize needs a polynomial");
  std::vector<std::string> names = p.vars().names();
  names.push_back(z);
  VarSet vars(names);
  long d = 0;
  for (const auto& [e, c] : p.terms()) d = std::max(d, total_degree(e));
  LaurentPoly out(vars);
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    f.push_back(static_cast<int>(d - total_degree(e)));
    out += LaurentPoly::monomial(vars, std::move(f), c);
  }
  return out;
}

inline long total_degree(const LaurentPoly& p) {
  long d = 0;
  for (const auto& [e, c] : p.terms()) d = std::max(d, total_degree(e));
  return d;
}

/// For every generator, the census index of a matching cluster variable, or
/// -1. Frozen generators are not part of the census and are matched by the
/// caller.
inline std::vector<int> census_matches(const Presentation& p, const Census& c) {
  std::vector<int> out;
  for (const auto& g : p.generators) {
    int hit = -1;
    for (std::size_t j = 0; j < c.variables.size() && hit < 0; ++j)
      if (c.variables[j].vars() == p.cluster_vars && rf_equal(g, RationalFn(c.variables[j])))
        hit = static_cast<int>(j);
    out.push_back(hit);
  }
  return out;
}

}  // namespace clusterbench
