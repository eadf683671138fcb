#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clusterbench/errors.hpp"

namespace clusterbench {

enum class DynkinFamily { A, D, E };

/// A simply-laced Dynkin type. Nodes are numbered 1..rank in Bourbaki order.
class DynkinType {
 public:
  DynkinType(DynkinFamily family, int rank) : family_(family), rank_(rank) {
    if (rank < 1) throw TypeError("rank must be positive");
    if (family == DynkinFamily::D && rank < 4) throw TypeError("type D needs rank >= 4");
    if (family == DynkinFamily::E && (rank < 6 || rank > 8)) throw TypeError("type E needs rank 6, 7 or 8");
  }

  static DynkinType parse(const std::string& family, int rank) {
    if (family == "A" || family == "a") return {DynkinFamily::A, rank};
    if (family == "D" || family == "d") return {DynkinFamily::D, rank};
    if (family == "E" || family == "e") return {DynkinFamily::E, rank};
    throw TypeError("only simply-laced types A, D, E are supported (got '" + family + "')");
  }

  DynkinFamily family() const { return family_; }
  int rank() const { return rank_; }

  std::string family_name() const {
    switch (family_) {
      case DynkinFamily::A: return "A";
      case DynkinFamily::D: return "D";
      case DynkinFamily::E: return "E";
    }
    return "?";
  }
  std::string name() const { return family_name() + std::to_string(rank_); }

  /// Edges of the Dynkin diagram as unordered pairs of 1-based nodes.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    switch (family_) {
      case DynkinFamily::A:
        for (int i = 1; i < rank_; ++i) e.emplace_back(i, i + 1);
        break;
      case DynkinFamily::D:
        for (int i = 1; i < rank_ - 1; ++i) e.emplace_back(i, i + 1);
        e.emplace_back(rank_ - 2, rank_);
        break;
      case DynkinFamily::E:
        // 1-3-4-5-...-rank with 2 attached to 4.
        e.emplace_back(1, 3);
        e.emplace_back(2, 4);
        for (int i = 3; i < rank_; ++i) e.emplace_back(i, i + 1);
        break;
    }
    return e;
  }

  friend bool operator==(const DynkinType&, const DynkinType&) = default;

 private:
  DynkinFamily family_;
  int rank_;
};

struct Arrow {
  int src;
  int dst;
  int mult;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

/// Exchange matrix with a frozen block. Vertices 0..n_mut-1 are mutable,
/// n_mut..size()-1 frozen. b(i, k) = #(i -> k) - #(k -> i) for every vertex i
/// and mutable k; arrows between frozen vertices are not represented.
class Quiver {
 public:
  Quiver() = default;

  Quiver(int n_mut, int n_frozen, std::vector<std::vector<int>> b, std::vector<std::string> labels)
      : n_mut_(n_mut), n_frozen_(n_frozen), labels_(std::move(labels)) {
    if (n_mut < 0 || n_frozen < 0) throw QuiverError("negative vertex count");
    const int n = n_mut + n_frozen;
    if (static_cast<int>(b.size()) != n) throw QuiverError("b must have n_mut + n_frozen rows");
    if (labels_.empty()) labels_ = default_labels(n);
    if (static_cast<int>(labels_.size()) != n) throw QuiverError("label count mismatch");
    b_.reserve(static_cast<std::size_t>(n) * n_mut);
    for (const auto& row : b) {
      if (static_cast<int>(row.size()) != n_mut) throw QuiverError("b rows must have n_mut entries");
      b_.insert(b_.end(), row.begin(), row.end());
    }
    check_skew();
  }

  /// Builds from an arrow list; frozen-frozen arrows are dropped and opposite
  /// arrows cancel.
  static Quiver from_arrows(int n_mut, int n_frozen, const std::vector<Arrow>& arrows,
                            std::vector<std::string> labels = {}) {
    const int n = n_mut + n_frozen;
    std::vector<std::vector<int>> b(n, std::vector<int>(n_mut, 0));
    for (const auto& a : arrows) {
      if (a.src < 0 || a.dst < 0 || a.src >= n || a.dst >= n) throw QuiverError("arrow endpoint out of range");
      if (a.src == a.dst) throw QuiverError("loops are not allowed");
      if (a.dst < n_mut) b[a.src][a.dst] += a.mult;
      if (a.src < n_mut) b[a.dst][a.src] -= a.mult;
    }
    return Quiver(n_mut, n_frozen, std::move(b), std::move(labels));
  }

  int n_mut() const { return n_mut_; }
  int n_frozen() const { return n_frozen_; }
  int size() const { return n_mut_ + n_frozen_; }
  bool is_frozen(int v) const { return v >= n_mut_; }
  int b(int i, int k) const { return b_[static_cast<std::size_t>(i) * n_mut_ + k]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int v) const { return labels_.at(v); }

  std::optional<int> index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<int>(it - labels_.begin());
  }

  std::vector<std::vector<int>> matrix() const {
    std::vector<std::vector<int>> m(size(), std::vector<int>(n_mut_));
    for (int i = 0; i < size(); ++i)
      for (int k = 0; k < n_mut_; ++k) m[i][k] = b(i, k);
    return m;
  }

  /// Matrix mutation at mutable vertex k.
  Quiver mutate(int k) const {
    if (k < 0 || k >= size()) throw MutationError("vertex " + std::to_string(k) + " out of range");
    if (is_frozen(k)) throw MutationError("cannot mutate frozen vertex " + labels_[k]);
    Quiver out(*this);
    for (int i = 0; i < size(); ++i) {
      for (int j = 0; j < n_mut_; ++j) {
        int& e = out.b_[static_cast<std::size_t>(i) * n_mut_ + j];
        if (i == k || j == k) {
          e = -b(i, j);
        } else {
          const int bik = b(i, k), bkj = b(k, j);
          const int prod = bik * bkj;
          if (prod > 0) e = b(i, j) + (bik > 0 ? prod : -prod);
        }
      }
    }
    out.check_skew();
    return out;
  }

  Quiver opposite() const {
    Quiver out(*this);
    for (int& e : out.b_) e = -e;
    return out;
  }

  /// Mutable part only.
  Quiver principal() const {
    std::vector<std::vector<int>> m(n_mut_, std::vector<int>(n_mut_));
    for (int i = 0; i < n_mut_; ++i)
      for (int k = 0; k < n_mut_; ++k) m[i][k] = b(i, k);
    return Quiver(n_mut_, 0, std::move(m),
                  std::vector<std::string>(labels_.begin(), labels_.begin() + n_mut_));
  }

  /// Arrows with positive multiplicity, ordered by (src, dst).
  std::vector<Arrow> arrows() const {
    std::vector<Arrow> out;
    for (int i = 0; i < size(); ++i) {
      for (int k = 0; k < n_mut_; ++k) {
        if (i < n_mut_ && i >= k) continue;
        const int e = b(i, k);
        if (e > 0) out.push_back({i, k, e});
        if (e < 0) out.push_back({k, i, -e});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// One "src -> dst xM" line per arrow.
  std::string render() const {
    std::string s;
    for (const auto& a : arrows())
      s += labels_[a.src] + " -> " + labels_[a.dst] + " x" + std::to_string(a.mult) + "\n";
    return s;
  }

  friend bool operator==(const Quiver& a, const Quiver& c) {
    return a.n_mut_ == c.n_mut_ && a.n_frozen_ == c.n_frozen_ && a.b_ == c.b_ && a.labels_ == c.labels_;
  }

 private:
  static std::vector<std::string> default_labels(int n) {
    std::vector<std::string> l;
    for (int i = 1; i <= n; ++i) l.push_back(std::to_string(i));
    return l;
  }

  void check_skew() const {
    for (int i = 0; i < n_mut_; ++i) {
      if (b(i, i) != 0) throw QuiverError("nonzero diagonal entry at " + std::to_string(i));
      for (int j = i + 1; j < n_mut_; ++j)
        if (b(i, j) != -b(j, i)) throw QuiverError("mutable block is not skew-symmetric");
    }
  }

  int n_mut_ = 0;
  int n_frozen_ = 0;
  std::vector<int> b_;
  std::vector<std::string> labels_;
};

// ---------------------------------------------------------------------------
// Builders

/// Two-colouring of the Dynkin tree; true = black (xi = 0, arrows leave it).
/// Node 1 is white, i.e. a sink.
inline std::vector<bool> dynkin_black_nodes(const DynkinType& t) {
  const int n = t.rank();
  std::vector<std::vector<int>> adj(n + 1);
  for (auto [a, b] : t.edges()) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> colour(n + 1, -1);
  std::vector<int> stack{1};
  colour[1] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (colour[w] < 0) {
        colour[w] = 1 - colour[v];
        stack.push_back(w);
      }
  }
  std::vector<bool> black(n + 1, false);
  for (int i = 1; i <= n; ++i) black[i] = colour[i] == 0;
  return black;
}

/// Arrows i -> j (1-based) of the bipartite orientation, black to white.
inline std::vector<std::pair<int, int>> dynkin_arrows(const DynkinType& t) {
  const auto black = dynkin_black_nodes(t);
  std::vector<std::pair<int, int>> out;
  for (auto [a, b] : t.edges()) out.push_back(black[a] ? std::pair{a, b} : std::pair{b, a});
  std::sort(out.begin(), out.end());
  return out;
}

inline Quiver dynkin_quiver(const DynkinType& t) {
  std::vector<Arrow> arrows;
  for (auto [i, j] : dynkin_arrows(t)) arrows.push_back({i - 1, j - 1, 1});
  return Quiver::from_arrows(t.rank(), 0, arrows);
}

/// Vertex (i, k) of Q_{g,l}: Dynkin node i, level k in 1..l+1.
struct HlVertex {
  int node;
  int level;
  friend auto operator<=>(const HlVertex&, const HlVertex&) = default;
};

struct HlArrow {
  HlVertex src;
  HlVertex dst;
  int family;  // 1 horizontal, 2 diagonal, 3 vertical
  friend auto operator<=>(const HlArrow&, const HlArrow&) = default;
};

/// Levels 1..l are mutable and stored first, level-major; level l+1 is frozen.
inline int hl_index(const DynkinType& t, int l, HlVertex v) {
  if (v.node < 1 || v.node > t.rank() || v.level < 1 || v.level > l + 1) throw QuiverError("vertex out of range");
  return (v.level - 1) * t.rank() + (v.node - 1);
}

inline std::string hl_label(int l, HlVertex v) {
  return std::string(v.level == l + 1 ? "W" : "V") + "_{" + std::to_string(v.node) + "," + std::to_string(v.level) +
         "}";
}

/// Every arrow of Q_{g,l} by family, including the frozen-row arrows that the
/// exchange matrix does not track.
inline std::vector<HlArrow> hl_arrows(const DynkinType& t, int l) {
  if (l < 1) throw LevelError("level must be >= 1");
  const auto base = dynkin_arrows(t);
  std::vector<HlArrow> out;
  for (auto [i, j] : base)
    for (int k = 1; k <= l + 1; ++k) out.push_back({{i, k}, {j, k}, 1});
  for (auto [i, j] : base)
    for (int k = 1; k <= l; ++k) out.push_back({{j, k}, {i, k + 1}, 2});
  for (int i = 1; i <= t.rank(); ++i)
    for (int k = 1; k <= l; ++k) out.push_back({{i, k + 1}, {i, k}, 3});
  return out;
}

inline Quiver build_hl_quiver(const DynkinType& t, int l) {
  const auto list = hl_arrows(t, l);
  const int n = t.rank();
  std::vector<Arrow> arrows;
  for (const auto& a : list) arrows.push_back({hl_index(t, l, a.src), hl_index(t, l, a.dst), 1});
  std::vector<std::string> labels(static_cast<std::size_t>(n) * (l + 1));
  for (int k = 1; k <= l + 1; ++k)
    for (int i = 1; i <= n; ++i) labels[hl_index(t, l, {i, k})] = hl_label(l, {i, k});
  return Quiver::from_arrows(n * l, n, arrows, std::move(labels));
}

// ---------------------------------------------------------------------------
// Isomorphism search

namespace detail {

// Multiset of incident entries, split by the class of the other endpoint.
inline std::vector<std::pair<int, int>> vertex_signature(const Quiver& q, int v) {
  std::vector<std::pair<int, int>> sig;
  if (!q.is_frozen(v)) {
    for (int u = 0; u < q.size(); ++u)
      if (q.b(u, v) != 0) sig.emplace_back(q.is_frozen(u) ? 1 : 0, q.b(u, v));
  } else {
    for (int k = 0; k < q.n_mut(); ++k)
      if (q.b(v, k) != 0) sig.emplace_back(0, q.b(v, k));
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

class IsoSearch {
 public:
  IsoSearch(const Quiver& a, const Quiver& b, bool frozen_setwise) : a_(a), b_(b), setwise_(frozen_setwise) {
    const int n = a.size();
    sig_a_.resize(n);
    sig_b_.resize(n);
    for (int v = 0; v < n; ++v) {
      sig_a_[v] = vertex_signature(a, v);
      sig_b_[v] = vertex_signature(b, v);
    }
    sigma_.assign(n, -1);
    used_.assign(n, false);
  }

  std::vector<std::vector<int>> run() {
    if (a_.n_mut() != b_.n_mut() || a_.n_frozen() != b_.n_frozen()) return {};
    extend(0);
    return std::move(found_);
  }

 private:
  bool consistent(int v, int img) const {
    for (int u = 0; u < v; ++u) {
      const int su = sigma_[u];
      if (!a_.is_frozen(v) && b_.b(su, img) != a_.b(u, v)) return false;
      if (!a_.is_frozen(u) && b_.b(img, su) != a_.b(v, u)) return false;
    }
    return true;
  }

  void extend(int v) {
    const int n = a_.size();
    if (v == n) {
      found_.push_back(sigma_);
      return;
    }
    int lo = a_.is_frozen(v) ? a_.n_mut() : 0;
    int hi = a_.is_frozen(v) ? n : a_.n_mut();
    if (a_.is_frozen(v) && !setwise_) lo = v, hi = v + 1;
    for (int img = lo; img < hi; ++img) {
      if (used_[img] || sig_a_[v] != sig_b_[img] || !consistent(v, img)) continue;
      sigma_[v] = img;
      used_[img] = true;
      extend(v + 1);
      used_[img] = false;
      sigma_[v] = -1;
    }
  }

  const Quiver& a_;
  const Quiver& b_;
  bool setwise_;
  std::vector<std::vector<std::pair<int, int>>> sig_a_, sig_b_;
  std::vector<int> sigma_;
  std::vector<bool> used_;
  std::vector<std::vector<int>> found_;
};

}  // namespace detail

/// All vertex bijections sigma with b2(sigma(i), sigma(k)) = b1(i, k), mutable
/// to mutable and frozen to frozen (pointwise unless frozen_setwise).
/// Each result maps a vertex of q1 to its image in q2.
inline std::vector<std::vector<int>> isomorphisms(const Quiver& q1, const Quiver& q2, bool frozen_setwise) {
  return detail::IsoSearch(q1, q2, frozen_setwise).run();
}

}  // namespace clusterbench
