#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "clusterbench/group_expr.hpp"
#include "clusterbench/seeds.hpp"

namespace clusterbench {

enum CandidateKind : unsigned { kDirect = 1, kInverse = 2 };

/// Kind bits of a product: direct*direct and inverse*inverse are direct,
/// mixed products are inverse.
inline unsigned compose_kind(unsigned a, unsigned b) {
  unsigned out = 0;
  if ((a & kDirect) && (b & kDirect)) out |= kDirect;
  if ((a & kInverse) && (b & kInverse)) out |= kDirect;
  if ((a & kDirect) && (b & kInverse)) out |= kInverse;
  if ((a & kInverse) && (b & kDirect)) out |= kInverse;
  return out;
}

/// Permutation of the census variables induced by a cluster automorphism.
/// perm[j] is the census index of the image of variable j.
struct ClusterPerm {
  std::vector<int> perm;
  int seed = -1;         // exchange-graph node holding the images of the initial cluster
  std::vector<int> iso;  // initial mutable vertex -> vertex of that seed
  unsigned kind = 0;
};

struct PermGroup {
  std::vector<ClusterPerm> elements;     // sorted by perm; identity first
  std::vector<std::size_t> generators;  // indices into elements
  std::size_t order() const { return elements.size(); }
};

inline constexpr std::size_t kClosureLimit = 1000000;

/// Same shape as g with every seed specialized (frozen variables set to 1).
inline ExchangeGraph specialize(const ExchangeGraph& g) {
  ExchangeGraph out = g;
  if (g.seeds.empty() || g.seeds[0].quiver().n_frozen() == 0) return out;
  for (std::size_t u = 0; u < g.size(); ++u) {
    out.seeds[u] = specialize(g.seeds[u]);
    out.keys[u] = join_key(out.seeds[u].cluster_key());
  }
  return out;
}

/// Census variables of each cluster, as sorted index sets.
inline std::vector<std::vector<int>> cluster_index_sets(const ExchangeGraph& principal, const Census& c) {
  std::vector<std::vector<int>> out;
  for (const auto& s : principal.seeds) {
    std::vector<int> set;
    for (int v = 0; v < s.quiver().n_mut(); ++v) set.push_back(census_index(c, s.certificate(v)));
    std::sort(set.begin(), set.end());
    out.push_back(std::move(set));
  }
  return out;
}

namespace detail {

inline std::vector<Coef> screening_point(std::size_t n) {
  std::mt19937 rng(0x5eed);
  std::uniform_int_distribution<int> num(1, 997), den(1, 991);
  std::vector<Coef> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(make_coef(num(rng), den(rng)));
  return p;
}

/// Exact check that x_i -> census[images[i]] sends census[j] to census[perm[j]].
inline bool confirm_extension(const Census& c, const std::vector<int>& perm, const std::vector<int>& images) {
  const VarSet& vars = c.variables.front().vars();
  std::vector<RationalFn> img;
  for (int idx : images) img.emplace_back(c.variables[idx]);
  std::vector<const RationalFn*> ptrs;
  for (const auto& f : img) ptrs.push_back(&f);
  for (std::size_t j = 0; j < perm.size(); ++j) {
    RationalFn got = substitute(c.variables[j], std::span<const RationalFn* const>(ptrs), vars);
    if (!rf_equal(got, RationalFn(c.variables[perm[j]]))) return false;
  }
  return true;
}

}  // namespace detail

/// Candidate cluster automorphisms: for every seed S whose quiver is
/// isomorphic (direct) or anti-isomorphic (inverse) to the initial one, the
/// map x_i -> S-variable at iso(i), extended to the census. Maps that are
/// not bijections of the census are discarded; duplicates are merged.
///
/// `g` is the full exchange graph, `principal_census` the census of
/// specialize(g). With frozen_aware the quiver comparison keeps the frozen
/// vertices (permuted setwise), giving the automorphisms that extend to the
/// algebra with coefficients.
inline std::vector<ClusterPerm> candidate_maps(const ExchangeGraph& g, const Census& principal_census,
                                               bool frozen_aware = false) {
  if (!g.complete()) throw IncompleteError("candidate maps need a complete exchange graph");
  const ExchangeGraph pg = specialize(g);
  const Census& c = principal_census;
  const int m = g.seeds[0].quiver().n_mut();
  const std::size_t nv = c.variables.size();

  const auto point = detail::screening_point(static_cast<std::size_t>(m));
  std::vector<Coef> values(nv);
  std::map<Coef, std::vector<int>> by_value;
  for (std::size_t j = 0; j < nv; ++j) {
    values[j] = eval(c.variables[j], point);
    by_value[values[j]].push_back(static_cast<int>(j));
  }
  std::vector<std::vector<int>> at(g.size());
  for (std::size_t u = 0; u < g.size(); ++u)
    for (int v = 0; v < m; ++v) at[u].push_back(census_index(c, pg.seeds[u].certificate(v)));

  const Quiver q0 = frozen_aware ? g.seeds[0].quiver() : pg.seeds[0].quiver();
  std::map<std::vector<int>, ClusterPerm> found;
  std::set<std::vector<int>> rejected;

  for (std::size_t u = 0; u < g.size(); ++u) {
    const Quiver qs = frozen_aware ? g.seeds[u].quiver() : pg.seeds[u].quiver();
    for (unsigned kind : {kDirect, kInverse}) {
      const Quiver target = kind == kDirect ? qs : qs.opposite();
      for (auto sigma : isomorphisms(q0, target, true)) {
        sigma.resize(static_cast<std::size_t>(m));
        std::vector<int> images;
        std::vector<Coef> ys;
        for (int i = 0; i < m; ++i) {
          images.push_back(at[u][sigma[i]]);
          ys.push_back(values[images.back()]);
        }
        // Fast screen at a rational point, then one exact confirmation per
        // distinct permutation.
        std::vector<int> perm(nv, -1);
        bool ok = true;
        std::vector<bool> hit(nv, false);
        for (std::size_t j = 0; j < nv && ok; ++j) {
          auto it = by_value.find(eval(c.variables[j], ys));
          if (it == by_value.end() || it->second.size() != 1 || hit[it->second[0]]) {
            ok = false;
            break;
          }
          perm[j] = it->second[0];
          hit[perm[j]] = true;
        }
        if (!ok) continue;
        if (auto f = found.find(perm); f != found.end()) {
          f->second.kind |= kind;
          continue;
        }
        if (rejected.count(perm)) continue;
        if (!detail::confirm_extension(c, perm, images)) {
          rejected.insert(perm);
          continue;
        }
        found.emplace(perm, ClusterPerm{perm, static_cast<int>(u), sigma, kind});
      }
    }
  }
  std::vector<ClusterPerm> out;
  for (auto& [p, cp] : found) out.push_back(std::move(cp));
  return out;
}

/// (a * b)[j] = a[b[j]]: apply b first.
inline std::vector<int> compose_perm(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) out[j] = a[b[j]];
  return out;
}

inline std::vector<int> inverse_perm(const std::vector<int>& a) {
  std::vector<int> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[a[j]] = static_cast<int>(j);
  return out;
}

inline bool is_identity_perm(const std::vector<int>& a) {
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] != static_cast<int>(j)) return false;
  return true;
}

namespace detail {

inline std::set<std::vector<int>> generated(const std::vector<std::vector<int>>& gens, std::size_t n,
                                            std::size_t limit) {
  std::vector<int> id(n);
  for (std::size_t j = 0; j < n; ++j) id[j] = static_cast<int>(j);
  std::set<std::vector<int>> seen{id};
  std::deque<std::vector<int>> todo{id};
  while (!todo.empty()) {
    auto e = std::move(todo.front());
    todo.pop_front();
    for (const auto& s : gens) {
      auto h = compose_perm(e, s);
      if (seen.insert(h).second) {
        if (seen.size() > limit) throw ClosureBudgetError("group closure exceeded " + std::to_string(limit));
        todo.push_back(std::move(h));
      }
    }
  }
  return seen;
}

}  // namespace detail

/// Closure of the candidates under composition, with a small generating set
/// picked greedily from the candidates.
inline PermGroup close_group(const std::vector<ClusterPerm>& candidates, std::size_t limit = kClosureLimit) {
  if (candidates.empty()) throw Error("no candidate maps");
  const std::size_t n = candidates[0].perm.size();
  std::map<std::vector<int>, ClusterPerm> elems;
  std::vector<int> id(n);
  for (std::size_t j = 0; j < n; ++j) id[j] = static_cast<int>(j);
  elems[id] = ClusterPerm{id, 0, {}, kDirect};
  for (const auto& c : candidates) {
    if (c.perm.size() != n) throw Error("candidate permutations of different sizes");
    auto [it, fresh] = elems.try_emplace(c.perm, c);
    if (!fresh) it->second.kind |= c.kind;
  }
  std::deque<std::vector<int>> todo;
  for (const auto& [p, e] : elems) todo.push_back(p);
  // Kind bits are propagated until they stop changing.
  while (!todo.empty()) {
    const ClusterPerm e = elems.at(todo.front());
    todo.pop_front();
    for (const auto& s : candidates) {
      ClusterPerm h{compose_perm(e.perm, s.perm), -1, {}, compose_kind(e.kind, s.kind)};
      auto it = elems.find(h.perm);
      if (it == elems.end()) {
        if (elems.size() >= limit) throw ClosureBudgetError("group closure exceeded " + std::to_string(limit));
        todo.push_back(h.perm);
        elems.emplace(h.perm, std::move(h));
      } else if ((it->second.kind | h.kind) != it->second.kind) {
        it->second.kind |= h.kind;
        todo.push_back(h.perm);
      }
    }
  }
  PermGroup g;
  for (auto& [p, e] : elems) g.elements.push_back(std::move(e));
  std::stable_partition(g.elements.begin(), g.elements.end(),
                        [](const ClusterPerm& e) { return is_identity_perm(e.perm); });

  std::vector<std::vector<int>> gens;
  std::size_t reached = 1;
  for (const auto& c : candidates) {
    if (reached == g.order()) break;
    auto trial = gens;
    trial.push_back(c.perm);
    const std::size_t size = detail::generated(trial, n, limit).size();
    if (size > reached) {
      gens = std::move(trial);
      reached = size;
      for (std::size_t i = 0; i < g.elements.size(); ++i)
        if (g.elements[i].perm == c.perm) g.generators.push_back(i);
    }
  }
  return g;
}

/// Every element sends clusters to clusters.
inline bool preserves_clusters(const PermGroup& g, const std::vector<std::vector<int>>& clusters) {
  std::set<std::vector<int>> all(clusters.begin(), clusters.end());
  for (const auto& e : g.elements)
    for (const auto& cl : clusters) {
      std::vector<int> img;
      for (int j : cl) img.push_back(e.perm[j]);
      std::sort(img.begin(), img.end());
      if (!all.count(img)) return false;
    }
  return true;
}

/// Closure, identity, inverses.
inline bool satisfies_group_axioms(const PermGroup& g) {
  std::set<std::vector<int>> all;
  for (const auto& e : g.elements) all.insert(e.perm);
  if (all.size() != g.order() || g.elements.empty() || !is_identity_perm(g.elements[0].perm)) return false;
  for (const auto& a : g.elements) {
    if (!all.count(inverse_perm(a.perm))) return false;
    for (const auto& b : g.elements)
      if (!all.count(compose_perm(a.perm, b.perm))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Structure identification

namespace detail {

class GroupTable {
 public:
  explicit GroupTable(const PermGroup& g) {
    for (std::size_t i = 0; i < g.order(); ++i) {
      perms_.push_back(g.elements[i].perm);
      index_.emplace(g.elements[i].perm, static_cast<int>(i));
    }
  }
  int size() const { return static_cast<int>(perms_.size()); }
  int mul(int a, int b) const { return index_.at(compose_perm(perms_[a], perms_[b])); }
  int inv(int a) const { return index_.at(inverse_perm(perms_[a])); }
  int identity() const { return 0; }
  int order_of(int a) const {
    int k = 1;
    for (int x = a; x != 0; x = mul(x, a)) ++k;
    return k;
  }
  std::set<int> cyclic(int a) const {
    std::set<int> s{0};
    for (int x = a; x != 0; x = mul(x, a)) s.insert(x);
    return s;
  }

 private:
  std::vector<std::vector<int>> perms_;
  std::map<std::vector<int>, int> index_;
};

/// All subgroups isomorphic to the dihedral group of order 2m (m = 1 gives
/// the subgroups of order two).
inline std::vector<std::set<int>> dihedral_subgroups(const GroupTable& t, int m) {
  std::set<std::set<int>> out;
  for (int r = 0; r < t.size(); ++r) {
    if (t.order_of(r) != m) continue;
    const auto rot = t.cyclic(r);
    for (int s = 1; s < t.size(); ++s) {
      if (rot.count(s) || t.order_of(s) != 2) continue;
      if (t.mul(t.mul(s, r), s) != t.inv(r)) continue;
      std::set<int> h = rot;
      for (int x : rot) h.insert(t.mul(x, s));
      out.insert(std::move(h));
    }
  }
  return {out.begin(), out.end()};
}

/// Internal direct product H x K with H dihedral of order 2a, K of order 2b.
inline bool is_dihedral_product(const GroupTable& t, int a, int b) {
  if (static_cast<long long>(4) * a * b != t.size()) return false;
  const auto hs = dihedral_subgroups(t, a);
  const auto ks = dihedral_subgroups(t, b);
  for (const auto& h : hs)
    for (const auto& k : ks) {
      bool ok = true;
      for (int x : h) {
        if (x != 0 && k.count(x)) ok = false;
        for (int y : k)
          if (ok && t.mul(x, y) != t.mul(y, x)) ok = false;
        if (!ok) break;
      }
      if (ok) return true;
    }
  return false;
}

inline bool is_cyclic(const GroupTable& t) {
  for (int a = 0; a < t.size(); ++a)
    if (t.order_of(a) == t.size()) return true;
  return false;
}

}  // namespace detail

/// Structural match of a concrete group against Trivial, Zn, Dihedral(n) and
/// products of dihedral-type factors (Zn(2) and Sym(3) count as dihedral).
inline bool matches(const PermGroup& g, const GroupExpr& expected) {
  using K = GroupExpr::Kind;
  const detail::GroupTable t(g);
  auto dihedral_param = [](const GroupExpr& e) -> std::optional<int> {
    if (e.kind() == K::Dihedral) return static_cast<int>(e.n());
    if (e.kind() == K::Zn && e.n() == 2) return 1;
    if (e.kind() == K::Sym && e.n() == 3) return 3;
    return std::nullopt;
  };
  switch (expected.kind()) {
    case K::Trivial: return t.size() == 1;
    case K::Zn: return t.size() == expected.n() && detail::is_cyclic(t);
    case K::Product: {
      if (expected.children().size() != 2) return false;
      auto a = dihedral_param(expected.children()[0]);
      auto b = dihedral_param(expected.children()[1]);
      return a && b && detail::is_dihedral_product(t, *a, *b);
    }
    default:
      if (auto a = dihedral_param(expected)) return t.size() == 2 * *a && !detail::dihedral_subgroups(t, *a).empty();
      return false;
  }
}

enum class TableRelation { equal, strictly_contains, differs };

inline std::string to_string(TableRelation r) {
  switch (r) {
    case TableRelation::equal: return "equal";
    case TableRelation::strictly_contains: return "strictly contains";
    case TableRelation::differs: return "differs";
  }
  return "?";
}

/// Whether the computed group is the expected one, or strictly contains a
/// copy of it (checked for cyclic and dihedral expectations only).
inline TableRelation compare_with_table(const PermGroup& g, const GroupExpr& expected) {
  using K = GroupExpr::Kind;
  if (matches(g, expected)) return TableRelation::equal;
  const auto order = finite_order(expected);
  if (!order || g.order() <= *order || g.order() % *order != 0) return TableRelation::differs;
  const detail::GroupTable t(g);
  if (expected.kind() == K::Dihedral && !detail::dihedral_subgroups(t, static_cast<int>(expected.n())).empty())
    return TableRelation::strictly_contains;
  if (expected.kind() == K::Zn)
    for (int a = 0; a < t.size(); ++a)
      if (t.order_of(a) == expected.n()) return TableRelation::strictly_contains;
  return TableRelation::differs;
}

/// Best-effort identification: Trivial, cyclic, dihedral, D4 x S3, Dn x Z2.
inline GroupExpr identify(const PermGroup& g) {
  const detail::GroupTable t(g);
  const int n = t.size();
  if (n == 1) return GroupExpr::trivial();
  if (detail::is_cyclic(t)) return GroupExpr::cyclic(n);
  if (n % 2 == 0 && !detail::dihedral_subgroups(t, n / 2).empty()) return GroupExpr::dihedral(n / 2);
  if (n == 48 && detail::is_dihedral_product(t, 4, 3))
    return GroupExpr::product({GroupExpr::dihedral(4), GroupExpr::sym(3)});
  if (n % 4 == 0 && detail::is_dihedral_product(t, n / 4, 1))
    return GroupExpr::product({GroupExpr::dihedral(n / 4), GroupExpr::cyclic(2)});
  return GroupExpr::unknown("order " + std::to_string(n));
}

/// Known cluster automorphism groups of finite type (Dynkin quivers).
inline GroupExpr aut_cl_table(const DynkinType& t) {
  const long long n = t.rank();
  switch (t.family()) {
    case DynkinFamily::A:
      return n == 1 ? GroupExpr::cyclic(2) : GroupExpr::dihedral(n + 3);
    case DynkinFamily::D:
      if (n == 4) return GroupExpr::product({GroupExpr::dihedral(4), GroupExpr::sym(3)});
      return GroupExpr::product({GroupExpr::dihedral(n), GroupExpr::cyclic(2)});
    case DynkinFamily::E:
      if (n == 6) return GroupExpr::dihedral(14);
      if (n == 7) return GroupExpr::dihedral(10);
      return GroupExpr::dihedral(16);
  }
  return GroupExpr::unknown("type");
}

/// Result of the full pipeline on one initial seed.
struct AutGroupResult {
  ExchangeGraph graph;
  Census census;  // of the specialized graph
  std::vector<ClusterPerm> candidates;
  PermGroup group;
  GroupExpr identified = GroupExpr::trivial();
};

inline AutGroupResult compute_aut_group(const Seed& initial, bool frozen_aware = false,
                                        std::size_t budget = kDefaultBudget) {
  AutGroupResult r;
  r.graph = exchange_graph(initial, budget);
  if (!r.graph.complete()) throw IncompleteError("exchange graph enumeration exceeded its budget");
  r.census = census(specialize(r.graph));
  r.candidates = candidate_maps(r.graph, r.census, frozen_aware);
  r.group = close_group(r.candidates);
  r.identified = identify(r.group);
  return r;
}

}  // namespace clusterbench
