#pragma once

#include <algorithm>
#include <cctype>
#include <deque>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "clusterbench/exactalg.hpp"
#include "clusterbench/quiver.hpp"

namespace clusterbench {

/// Identifier-safe variable name for a vertex label: V_{i,k} -> x_i_k,
/// W_{i,k} -> w_i_k, a bare number i -> x_i.
inline std::string variable_name_for_label(const std::string& label) {
  if (!label.empty() && std::all_of(label.begin(), label.end(), [](unsigned char c) { return std::isdigit(c); }))
    return "x_" + label;
  std::string out;
  for (unsigned char c : label) {
    if (std::isalnum(c)) {
      out += static_cast<char>(c);
    } else if (c == '_' || c == ',') {
      if (out.empty() || out.back() != '_') out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  if (out.size() > 1 && out[1] == '_') {
    if (out[0] == 'V') out[0] = 'x';
    if (out[0] == 'W') out[0] = 'w';
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out = "x_" + out;
  return out;
}

/// A quiver with one Laurent polynomial per vertex, all expressed in the
/// initial variables. The ambient varset lists the initial generators in
/// vertex order, so frozen generators sit at indices n_mut and above.
class Seed {
 public:
  Seed() = default;
  Seed(Quiver quiver, VarSet vars, std::vector<LaurentPoly> cluster)
      : quiver_(std::move(quiver)), vars_(std::move(vars)), cluster_(std::move(cluster)) {
    if (static_cast<int>(cluster_.size()) != quiver_.size()) throw Error("one variable per vertex required");
  }

  const Quiver& quiver() const { return quiver_; }
  const VarSet& vars() const { return vars_; }
  const std::vector<LaurentPoly>& cluster() const { return cluster_; }

  /// Laurent certificate of the variable at vertex v.
  const LaurentPoly& certificate(int v) const { return cluster_.at(v); }
  RationalFn var(int v) const { return RationalFn(cluster_.at(v)); }

  /// Canonical, order-independent serialization of the mutable cluster.
  std::vector<std::string> cluster_key() const {
    std::vector<std::string> k;
    for (int v = 0; v < quiver_.n_mut(); ++v) k.push_back(to_string(cluster_[v]));
    std::sort(k.begin(), k.end());
    return k;
  }

 private:
  Quiver quiver_;
  VarSet vars_;
  std::vector<LaurentPoly> cluster_;
};

inline Seed initial_seed(const Quiver& q) {
  std::vector<std::string> names;
  for (const auto& l : q.labels()) names.push_back(variable_name_for_label(l));
  VarSet vars(names);
  std::vector<LaurentPoly> cluster;
  for (int v = 0; v < q.size(); ++v) cluster.push_back(LaurentPoly::variable(vars, static_cast<std::size_t>(v)));
  return Seed(q, vars, std::move(cluster));
}

/// Pieces of one exchange relation x_k * x_k' = positive + negative.
struct ExchangeStep {
  int vertex = -1;
  LaurentPoly positive;  // product over arrows into k
  LaurentPoly negative;  // product over arrows out of k
  LaurentPoly old_var;
  LaurentPoly new_var;
};

inline std::pair<Seed, ExchangeStep> mutate_seed_detailed(const Seed& s, int k) {
  const Quiver& q = s.quiver();
  if (k < 0 || k >= q.size()) throw MutationError("vertex " + std::to_string(k) + " out of range");
  if (q.is_frozen(k)) throw MutationError("cannot mutate frozen vertex " + q.label(k));
  ExchangeStep step;
  step.vertex = k;
  step.positive = LaurentPoly::constant(s.vars(), Coef(1));
  step.negative = step.positive;
  for (int i = 0; i < q.size(); ++i) {
    const int e = q.b(i, k);
    if (e > 0) step.positive *= s.certificate(i).pow(e);
    if (e < 0) step.negative *= s.certificate(i).pow(-e);
  }
  step.old_var = s.certificate(k);
  try {
    step.new_var = exact_divide(step.positive + step.negative, step.old_var);
  } catch (const NotDivisible&) {
    throw LaurentViolation("exchange at " + q.label(k) + " left the Laurent ring: (" +
                           to_string(step.positive + step.negative) + ") / (" + to_string(step.old_var) + ")");
  }
  std::vector<LaurentPoly> cluster = s.cluster();
  cluster[k] = step.new_var;
  return {Seed(q.mutate(k), s.vars(), std::move(cluster)), std::move(step)};
}

/// Exchange relation at mutable vertex k; the quiver is mutated alongside.
inline Seed mutate_seed(const Seed& s, int k) { return mutate_seed_detailed(s, k).first; }

/// Sets every frozen variable to 1 and drops the frozen vertices.
inline Seed specialize(const Seed& s) {
  const int m = s.quiver().n_mut();
  std::vector<std::string> names(s.vars().names().begin(), s.vars().names().begin() + m);
  VarSet target(names);
  std::vector<LaurentPoly> cluster;
  for (int v = 0; v < m; ++v) cluster.push_back(specialize_to_one(s.certificate(v), target));
  return Seed(s.quiver().principal(), target, std::move(cluster));
}

// ---------------------------------------------------------------------------
// Exchange graph

enum class GraphStatus { complete, budget_exceeded };

inline constexpr std::size_t kDefaultBudget = 10000;

struct ExchangeEdge {
  int from;
  int to;
  int vertex;  // mutated vertex, in the labelling of `from`'s seed
};

/// Nodes are unordered clusters. Node 0 is the starting seed; the rest follow
/// BFS discovery order, which is deterministic for a given start.
struct ExchangeGraph {
  std::vector<Seed> seeds;
  std::vector<std::string> keys;
  std::vector<std::vector<int>> neighbors;  // neighbors[u][k], -1 if unexplored
  GraphStatus status = GraphStatus::complete;

  std::size_t size() const { return seeds.size(); }
  bool complete() const { return status == GraphStatus::complete; }

  /// Undirected edges with from < to, one per pair and mutated vertex.
  std::vector<ExchangeEdge> edges() const {
    std::vector<ExchangeEdge> out;
    for (int u = 0; u < static_cast<int>(neighbors.size()); ++u)
      for (int k = 0; k < static_cast<int>(neighbors[u].size()); ++k)
        if (neighbors[u][k] > u) out.push_back({u, neighbors[u][k], k});
    return out;
  }
};

inline std::string join_key(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) {
    s += p;
    s += '\n';
  }
  return s;
}

/// Breadth-first closure of s under mutation at every mutable vertex.
inline ExchangeGraph exchange_graph(const Seed& s, std::size_t budget = kDefaultBudget) {
  if (budget < 1) throw Error("budget must be >= 1");
  ExchangeGraph g;
  std::unordered_map<std::string, int> index;
  const int m = s.quiver().n_mut();
  auto add = [&](Seed seed) -> int {
    std::string key = join_key(seed.cluster_key());
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (g.seeds.size() >= budget) return -1;
    const int id = static_cast<int>(g.seeds.size());
    index.emplace(key, id);
    g.keys.push_back(std::move(key));
    g.seeds.push_back(std::move(seed));
    g.neighbors.emplace_back(m, -1);
    return id;
  };
  add(s);
  std::deque<int> frontier{0};
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop_front();
    for (int k = 0; k < m; ++k) {
      const std::size_t before = g.seeds.size();
      const int v = add(mutate_seed(g.seeds[u], k));
      if (v < 0) {
        g.status = GraphStatus::budget_exceeded;
        return g;
      }
      g.neighbors[u][k] = v;
      if (g.seeds.size() > before) frontier.push_back(v);
    }
  }
  return g;
}

/// Every node has exactly n_mut distinct neighbours.
inline bool is_regular(const ExchangeGraph& g) {
  for (const auto& nb : g.neighbors) {
    std::unordered_set<int> distinct;
    for (int v : nb) {
      if (v < 0) return false;
      distinct.insert(v);
    }
    if (distinct.size() != nb.size()) return false;
  }
  return true;
}

struct Census {
  std::size_t cluster_count = 0;
  std::size_t variable_count = 0;
  std::vector<LaurentPoly> variables;  // sorted by canonical text
};

inline Census census(const ExchangeGraph& g) {
  if (!g.complete()) throw IncompleteError("exchange graph enumeration exceeded its budget");
  std::unordered_map<std::string, LaurentPoly> seen;
  for (const auto& s : g.seeds)
    for (int v = 0; v < s.quiver().n_mut(); ++v) seen.try_emplace(to_string(s.certificate(v)), s.certificate(v));
  std::vector<std::pair<std::string, LaurentPoly>> sorted(seen.begin(), seen.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Census c;
  c.cluster_count = g.size();
  for (auto& [k, p] : sorted) c.variables.push_back(std::move(p));
  c.variable_count = c.variables.size();
  return c;
}

/// Index of p in the census variable list, or -1.
inline int census_index(const Census& c, const LaurentPoly& p) {
  const std::string key = to_string(p);
  auto it = std::lower_bound(c.variables.begin(), c.variables.end(), key,
                             [](const LaurentPoly& a, const std::string& k) { return to_string(a) < k; });
  if (it == c.variables.end() || to_string(*it) != key) return -1;
  return static_cast<int>(it - c.variables.begin());
}

/// Every mutable cluster variable has positive integer coefficients.
inline bool check_laurent_positive(const ExchangeGraph& g) {
  for (const auto& s : g.seeds)
    for (int v = 0; v < s.quiver().n_mut(); ++v)
      for (const auto& [e, c] : s.certificate(v).terms())
        if (c <= 0 || !is_integer(c)) return false;
  return true;
}

}  // namespace clusterbench
