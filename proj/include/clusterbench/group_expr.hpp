#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "clusterbench/errors.hpp"

namespace clusterbench {

enum class BaseRing { Q, Z };

inline std::string to_string(BaseRing b) { return b == BaseRing::Q ? "Q" : "Z"; }

/// Symbolic group expression. Dihedral(n) always has order 2n. Power(g, k)
/// is the direct sum of k copies of g.
class GroupExpr {
 public:
  enum class Kind {
    Trivial,
    Z,
    Zn,
    Dihedral,
    Sym,
    Product,
    Semidirect,
    GA,
    Af,
    Jonq,
    Bf,
    Amalgam,
    Power,
    Unknown
  };

  static GroupExpr trivial() { return GroupExpr(Kind::Trivial); }
  static GroupExpr integers() { return GroupExpr(Kind::Z); }
  static GroupExpr cyclic(long long n) { return with_n(Kind::Zn, n); }
  static GroupExpr dihedral(long long n) { return with_n(Kind::Dihedral, n); }
  static GroupExpr sym(long long n) { return with_n(Kind::Sym, n); }
  static GroupExpr ga(long long n, BaseRing b) { return with_base(Kind::GA, n, b); }
  static GroupExpr af(long long n, BaseRing b) { return with_base(Kind::Af, n, b); }
  static GroupExpr jonq(long long n, BaseRing b) { return with_base(Kind::Jonq, n, b); }
  static GroupExpr bf(long long n, BaseRing b) { return with_base(Kind::Bf, n, b); }

  static GroupExpr product(std::vector<GroupExpr> factors) {
    GroupExpr g(Kind::Product);
    g.children_ = std::move(factors);
    return g;
  }
  static GroupExpr semidirect(GroupExpr actor, GroupExpr normal) {
    GroupExpr g(Kind::Semidirect);
    g.children_ = {std::move(actor), std::move(normal)};
    return g;
  }
  static GroupExpr amalgam(GroupExpr left, GroupExpr right, GroupExpr over) {
    GroupExpr g(Kind::Amalgam);
    g.children_ = {std::move(left), std::move(right), std::move(over)};
    return g;
  }
  static GroupExpr power(GroupExpr base, long long copies) {
    GroupExpr g(Kind::Power);
    g.n_ = copies;
    g.children_ = {std::move(base)};
    return g;
  }
  static GroupExpr unknown(std::string tag) {
    GroupExpr g(Kind::Unknown);
    g.tag_ = std::move(tag);
    return g;
  }

  Kind kind() const { return kind_; }
  long long n() const { return n_; }
  BaseRing base() const { return base_; }
  const std::vector<GroupExpr>& children() const { return children_; }
  const std::string& tag() const { return tag_; }

  bool is_trivial() const { return kind_ == Kind::Trivial; }

  friend bool operator==(const GroupExpr&, const GroupExpr&) = default;

 private:
  explicit GroupExpr(Kind k) : kind_(k) {}
  static GroupExpr with_n(Kind k, long long n) {
    if (n < 1) throw Error("group parameter must be positive");
    GroupExpr g(k);
    g.n_ = n;
    return g;
  }
  static GroupExpr with_base(Kind k, long long n, BaseRing b) {
    GroupExpr g = with_n(k, n);
    g.base_ = b;
    return g;
  }

  Kind kind_;
  long long n_ = 0;
  BaseRing base_ = BaseRing::Q;
  std::vector<GroupExpr> children_;
  std::string tag_;
};

/// Bottom-up rewrite: nested products flattened, trivial factors removed,
/// Semidirect with a trivial side collapsed, Power of trivial or with one copy
/// collapsed, Z1 and S1 made trivial.
inline GroupExpr simplify(const GroupExpr& g) {
  using K = GroupExpr::Kind;
  std::vector<GroupExpr> kids;
  for (const auto& c : g.children()) kids.push_back(simplify(c));
  switch (g.kind()) {
    case K::Zn:
    case K::Sym:
      return g.n() == 1 ? GroupExpr::trivial() : g;
    case K::Product: {
      std::vector<GroupExpr> flat;
      for (auto& c : kids) {
        if (c.is_trivial()) continue;
        if (c.kind() == K::Product) {
          for (const auto& cc : c.children()) flat.push_back(cc);
        } else {
          flat.push_back(std::move(c));
        }
      }
      if (flat.empty()) return GroupExpr::trivial();
      if (flat.size() == 1) return flat.front();
      return GroupExpr::product(std::move(flat));
    }
    case K::Semidirect:
      if (kids[1].is_trivial()) return kids[0];
      if (kids[0].is_trivial()) return kids[1];
      return GroupExpr::semidirect(std::move(kids[0]), std::move(kids[1]));
    case K::Power:
      if (kids[0].is_trivial()) return GroupExpr::trivial();
      if (g.n() == 1) return kids[0];
      return GroupExpr::power(std::move(kids[0]), g.n());
    case K::Amalgam:
      return GroupExpr::amalgam(std::move(kids[0]), std::move(kids[1]), std::move(kids[2]));
    default:
      return g;
  }
}

/// Order when finite and known.
inline std::optional<unsigned long long> finite_order(const GroupExpr& g) {
  using K = GroupExpr::Kind;
  switch (g.kind()) {
    case K::Trivial: return 1;
    case K::Zn: return static_cast<unsigned long long>(g.n());
    case K::Dihedral: return 2ULL * static_cast<unsigned long long>(g.n());
    case K::Sym: {
      unsigned long long f = 1;
      for (long long i = 2; i <= g.n(); ++i) f *= static_cast<unsigned long long>(i);
      return f;
    }
    case K::Product:
    case K::Semidirect: {
      unsigned long long o = 1;
      for (const auto& c : g.children()) {
        auto co = finite_order(c);
        if (!co) return std::nullopt;
        o *= *co;
      }
      return o;
    }
    case K::Power: {
      auto co = finite_order(g.children()[0]);
      if (!co) return std::nullopt;
      unsigned long long o = 1;
      for (long long i = 0; i < g.n(); ++i) o *= *co;
      return o;
    }
    default: return std::nullopt;
  }
}

/// Compact name: Z2, D5, S3, D4xS3, GA(2,Q), ...
inline std::string to_string(const GroupExpr& g) {
  using K = GroupExpr::Kind;
  auto paren = [](const GroupExpr& c) {
    std::string s = to_string(c);
    const bool compound = c.kind() == K::Product || c.kind() == K::Semidirect || c.kind() == K::Amalgam;
    return compound ? "(" + s + ")" : s;
  };
  const std::string nb = std::to_string(g.n()) + "," + to_string(g.base());
  switch (g.kind()) {
    case K::Trivial: return "0";
    case K::Z: return "Z";
    case K::Zn: return "Z" + std::to_string(g.n());
    case K::Dihedral: return "D" + std::to_string(g.n());
    case K::Sym: return "S" + std::to_string(g.n());
    case K::GA: return "GA(" + nb + ")";
    case K::Af: return "Af(" + nb + ")";
    case K::Jonq: return "J(" + nb + ")";
    case K::Bf: return "Bf(" + nb + ")";
    case K::Product: {
      std::string s;
      for (const auto& c : g.children()) s += (s.empty() ? "" : "x") + paren(c);
      return s;
    }
    case K::Semidirect: return paren(g.children()[0]) + " |x " + paren(g.children()[1]);
    case K::Amalgam:
      return paren(g.children()[0]) + " *_" + paren(g.children()[2]) + " " + paren(g.children()[1]);
    case K::Power: return paren(g.children()[0]) + "^" + std::to_string(g.n());
    case K::Unknown: return "Unknown(" + g.tag() + ")";
  }
  return "?";
}

inline std::string kind_name(GroupExpr::Kind k) {
  using K = GroupExpr::Kind;
  switch (k) {
    case K::Trivial: return "Trivial";
    case K::Z: return "Z";
    case K::Zn: return "Zn";
    case K::Dihedral: return "Dihedral";
    case K::Sym: return "Sym";
    case K::Product: return "Product";
    case K::Semidirect: return "Semidirect";
    case K::GA: return "GA";
    case K::Af: return "Af";
    case K::Jonq: return "Jonq";
    case K::Bf: return "Bf";
    case K::Amalgam: return "Amalgam";
    case K::Power: return "Power";
    case K::Unknown: return "Unknown";
  }
  return "?";
}

/// Jung-van der Kulk structure attached to GA(2, k).
inline std::optional<GroupExpr> ga2_structure(const GroupExpr& g) {
  if (g.kind() != GroupExpr::Kind::GA || g.n() != 2) return std::nullopt;
  return GroupExpr::amalgam(GroupExpr::af(2, g.base()), GroupExpr::jonq(2, g.base()), GroupExpr::bf(2, g.base()));
}

/// Nested tagged object, e.g. {"type":"Dihedral","n":5}.
inline nlohmann::json to_json(const GroupExpr& g) {
  using K = GroupExpr::Kind;
  nlohmann::json j;
  j["type"] = kind_name(g.kind());
  switch (g.kind()) {
    case K::Zn:
    case K::Dihedral:
    case K::Sym:
      j["n"] = g.n();
      break;
    case K::GA:
    case K::Af:
    case K::Jonq:
    case K::Bf:
      j["n"] = g.n();
      j["base"] = to_string(g.base());
      break;
    case K::Product:
      j["factors"] = nlohmann::json::array();
      for (const auto& c : g.children()) j["factors"].push_back(to_json(c));
      break;
    case K::Semidirect:
      j["actor"] = to_json(g.children()[0]);
      j["normal"] = to_json(g.children()[1]);
      break;
    case K::Amalgam:
      j["left"] = to_json(g.children()[0]);
      j["right"] = to_json(g.children()[1]);
      j["over"] = to_json(g.children()[2]);
      break;
    case K::Power:
      j["base"] = to_json(g.children()[0]);
      j["copies"] = g.n();
      break;
    case K::Unknown:
      j["tag"] = g.tag();
      break;
    default:
      break;
  }
  if (auto s = ga2_structure(g)) j["structure"] = to_json(*s);
  j["text"] = to_string(g);
  return j;
}

inline GroupExpr group_expr_from_json(const nlohmann::json& j) {
  const std::string t = j.at("type").get<std::string>();
  auto base = [&] { return j.at("base").get<std::string>() == "Z" ? BaseRing::Z : BaseRing::Q; };
  if (t == "Trivial") return GroupExpr::trivial();
  if (t == "Z") return GroupExpr::integers();
  if (t == "Zn") return GroupExpr::cyclic(j.at("n").get<long long>());
  if (t == "Dihedral") return GroupExpr::dihedral(j.at("n").get<long long>());
  if (t == "Sym") return GroupExpr::sym(j.at("n").get<long long>());
  if (t == "GA") return GroupExpr::ga(j.at("n").get<long long>(), base());
  if (t == "Af") return GroupExpr::af(j.at("n").get<long long>(), base());
  if (t == "Jonq") return GroupExpr::jonq(j.at("n").get<long long>(), base());
  if (t == "Bf") return GroupExpr::bf(j.at("n").get<long long>(), base());
  if (t == "Product") {
    std::vector<GroupExpr> f;
    for (const auto& c : j.at("factors")) f.push_back(group_expr_from_json(c));
    return GroupExpr::product(std::move(f));
  }
  if (t == "Semidirect")
    return GroupExpr::semidirect(group_expr_from_json(j.at("actor")), group_expr_from_json(j.at("normal")));
  if (t == "Amalgam")
    return GroupExpr::amalgam(group_expr_from_json(j.at("left")), group_expr_from_json(j.at("right")),
                              group_expr_from_json(j.at("over")));
  if (t == "Power") return GroupExpr::power(group_expr_from_json(j.at("base")), j.at("copies").get<long long>());
  if (t == "Unknown") return GroupExpr::unknown(j.at("tag").get<std::string>());
  throw ParseError("unknown group expression type '" + t + "'");
}

}  // namespace clusterbench
