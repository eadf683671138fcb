#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "clusterbench/autpoly.hpp"
#include "clusterbench/clusterauto.hpp"
#include "clusterbench/exactalg.hpp"
#include "clusterbench/presentations.hpp"
#include "clusterbench/quiver.hpp"
#include "clusterbench/seeds.hpp"

namespace clusterbench {

using json = nlohmann::json;

// Laurent polynomials: {"vars": [...], "terms": [{"exp": [...], "num": "3", "den": "2"}]},
// terms in grlex-descending order. Big rationals travel as decimal strings.

inline json to_json(const LaurentPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back({{"exp", e}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  return {{"vars", p.vars().names()}, {"terms", terms}, {"text", to_string(p)}};
}

inline LaurentPoly laurent_from_json(const json& j, const VarSet* vars = nullptr) {
  VarSet own = vars ? *vars : VarSet(j.at("vars").get<std::vector<std::string>>());
  if (vars && j.contains("vars") && j.at("vars").get<std::vector<std::string>>() != vars->names())
    throw VarSetError("polynomial JSON over a different varset");
  LaurentPoly p(own);
  for (const auto& t : j.at("terms")) {
    Exponent e = t.at("exp").get<Exponent>();
    const Coef c = parse_coef(t.at("num").get<std::string>() + "/" + t.value("den", std::string("1")));
    p += LaurentPoly::monomial(own, std::move(e), c);
  }
  return p;
}

inline json to_json(const RationalFn& f) {
  return {{"num", to_json(f.num())}, {"den", to_json(f.den())}, {"text", to_string(f)}};
}

// Quivers: {"n_mut", "n_frozen", "labels", "b"} with b the (n_mut+n_frozen) x n_mut
// exchange matrix; "arrows" is informational.

inline json to_json(const Quiver& q) {
  json arrows = json::array();
  for (const auto& a : q.arrows())
    arrows.push_back({{"src", a.src}, {"dst", a.dst}, {"mult", a.mult}});
  return {{"n_mut", q.n_mut()}, {"n_frozen", q.n_frozen()}, {"labels", q.labels()},
          {"b", q.matrix()},    {"arrows", arrows}};
}

inline Quiver quiver_from_json(const json& j) {
  return Quiver(j.at("n_mut").get<int>(), j.at("n_frozen").get<int>(), j.at("b").get<std::vector<std::vector<int>>>(),
                j.value("labels", std::vector<std::string>{}));
}

inline json to_json(const Seed& s) {
  json cluster = json::array();
  for (int v = 0; v < s.quiver().size(); ++v) {
    json c = to_json(s.certificate(v));
    c["vertex"] = v;
    c["label"] = s.quiver().label(v);
    c["frozen"] = s.quiver().is_frozen(v);
    cluster.push_back(std::move(c));
  }
  return {{"quiver", to_json(s.quiver())}, {"vars", s.vars().names()}, {"cluster", cluster}};
}

inline Seed seed_from_json(const json& j) {
  Quiver q = quiver_from_json(j.at("quiver"));
  VarSet vars(j.at("vars").get<std::vector<std::string>>());
  std::vector<LaurentPoly> cluster;
  for (const auto& c : j.at("cluster")) cluster.push_back(laurent_from_json(c, &vars));
  return Seed(std::move(q), vars, std::move(cluster));
}

inline json to_json(const Census& c) {
  json vars = json::array();
  for (const auto& v : c.variables) vars.push_back(to_json(v));
  return {{"clusters", c.cluster_count}, {"variables", c.variable_count}, {"variable_list", vars}};
}

inline json to_json(const ExchangeGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({{"from", e.from}, {"to", e.to}, {"vertex", e.vertex}});
  return {{"nodes", g.size()}, {"complete", g.complete()}, {"edges", edges}};
}

inline std::string kind_text(unsigned kind) {
  if (kind == (kDirect | kInverse)) return "direct+inverse";
  if (kind == kDirect) return "direct";
  if (kind == kInverse) return "inverse";
  return "none";
}

inline json to_json(const PermGroup& g, const GroupExpr& identified) {
  json gens = json::array();
  for (auto i : g.generators) gens.push_back(g.elements[i].perm);
  json elems = json::array();
  for (const auto& e : g.elements) elems.push_back({{"perm", e.perm}, {"kind", kind_text(e.kind)}});
  return {{"order", g.order()},
          {"identified", to_string(identified)},
          {"structure", to_json(identified)},
          {"generators", gens},
          {"elements", elems}};
}

inline json to_json(const PolyEndo& f) {
  json images = json::array();
  for (const auto& p : f.images()) images.push_back(to_json(p));
  return {{"vars", f.vars().names()}, {"images", images}, {"tameness", to_string(f.tameness())}};
}

inline PolyEndo endo_from_json(const json& j) {
  VarSet vars(j.at("vars").get<std::vector<std::string>>());
  std::vector<LaurentPoly> images;
  for (const auto& p : j.at("images")) images.push_back(laurent_from_json(p, &vars));
  return PolyEndo(vars, std::move(images));
}

inline json to_json(const Presentation& p) {
  json gens = json::array();
  for (std::size_t i = 0; i < p.symbols.size(); ++i)
    gens.push_back({{"symbol", p.symbols.name(i)}, {"expression", to_json(p.generators[i])}});
  return {{"name", p.name},
          {"cluster_vars", p.cluster_vars.names()},
          {"generators", gens},
          {"relation", to_json(p.relation)},
          {"projective_degree", p.projective_degree},
          {"homogenized", to_string(homogenize(p.relation))},
          {"closure_note", p.closure_note},
          {"completeness", p.completeness}};
}

}  // namespace clusterbench
