#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "clusterbench/clusterauto.hpp"
#include "clusterbench/group_expr.hpp"
#include "clusterbench/laurent.hpp"
#include "clusterbench/quiver.hpp"

namespace clusterbench {

/// Coarse description of a commutative algebra: base[x_1..x_p, t_1^pm..t_m^pm]
/// modulo optional relations. Unset flags mean "not known".
struct RingDescriptor {
  BaseRing base = BaseRing::Q;
  int n_poly = 0;
  int n_laurent = 0;
  std::vector<LaurentPoly> relations;
  std::optional<bool> seminormal;
  std::optional<bool> ufd;
  std::optional<bool> anodal;
  std::optional<DynkinType> finite_type_tag;
  std::optional<std::pair<int, int>> grassmannian;  // homogeneous coordinate ring of Gr(k, m)

  bool is_free() const { return relations.empty() && !grassmannian; }

  static RingDescriptor polynomial(int n, BaseRing b = BaseRing::Q) {
    RingDescriptor r;
    r.base = b;
    r.n_poly = n;
    r.seminormal = true;
    r.ufd = true;
    return r;
  }
  static RingDescriptor grassmannian_ring(int k, int m) {
    RingDescriptor r;
    r.grassmannian = std::pair{k, m};
    r.ufd = true;
    return r;
  }
};

/// A derived value together with the rule that produced it.
struct Derived {
  GroupExpr value = GroupExpr::trivial();
  std::string rule;
};

namespace rules {
inline const char* const kPolPic = "pic-vanishes-on-free-poly-laurent-over-field";
inline const char* const kCoykendall = "coykendall-seminormal-base";
inline const char* const kWeibel = "weibel-laurent-decomposition";
inline const char* const kNeedsGeometry = "quotient-ring-needs-geometry";
inline const char* const kYekutieli = "yekutieli-bimodule-semidirect";
inline const char* const kPolAut = "free-poly-aut-is-ga";
inline const char* const kAutUnknown = "aut-not-tabulated";
inline const char* const kQuillenSuslin = "quillen-suslin-k0";
inline const char* const kGrassmannianK0 = "grassmannian-coordinate-ring-k0";
inline const char* const kK0Unknown = "k0-not-tabulated";
inline const char* const kAutClTable = "cluster-automorphism-table";
inline const char* const kAutClUntabulated = "principal-part-not-finite-type";
inline const char* const kClusterGeometry = "cluster-variety-geometry";
inline const char* const kUfdClassGroup = "ufd-class-group-trivial";
}  // namespace rules

/// Pic_com by the first matching rule.
inline Derived pic_com(const RingDescriptor& r) {
  if (!r.is_free()) return {GroupExpr::unknown("needs geometry"), rules::kNeedsGeometry};
  if (r.base == BaseRing::Q) return {GroupExpr::trivial(), rules::kPolPic};
  if (r.n_laurent == 0) {
    if (r.seminormal.value_or(true)) return {GroupExpr::trivial(), rules::kCoykendall};
    return {GroupExpr::unknown("Pic"), rules::kCoykendall};
  }
  // A = base[x_1..x_p]; Pic(A[t^pm]) = Pic(A) + m LPic(A) + sum_k 2^k C(m,k) N^k Pic(A).
  const int m = r.n_laurent;
  const GroupExpr pic_a = GroupExpr::trivial();  // Z is seminormal, so Pic(Z[x..]) = Pic(Z) = 0
  std::vector<GroupExpr> parts{pic_a};
  parts.push_back(r.anodal.value_or(false) ? GroupExpr::trivial()
                                           : GroupExpr::power(GroupExpr::unknown("LPic"), m));
  mpz_class binom = 1;
  for (int k = 1; k <= m; ++k) {
    binom = binom * (m - k + 1) / k;
    const mpz_class copies = (mpz_class(1) << k) * binom;
    const GroupExpr leaf = r.seminormal.value_or(false) ? GroupExpr::trivial()
                                                        : GroupExpr::unknown("N^" + std::to_string(k) + "Pic");
    parts.push_back(GroupExpr::power(leaf, copies.get_si()));
  }
  return {simplify(GroupExpr::product(std::move(parts))), rules::kWeibel};
}

inline Derived aut(const RingDescriptor& r) {
  if (r.is_free() && r.n_laurent == 0 && r.n_poly >= 1) return {GroupExpr::ga(r.n_poly, r.base), rules::kPolAut};
  return {GroupExpr::unknown("Aut"), rules::kAutUnknown};
}

/// Invertible bimodules: Aut |x Pic_com.
inline Derived pic_bimodule(const RingDescriptor& r) {
  GroupExpr e = GroupExpr::semidirect(aut(r).value, pic_com(r).value);
  return {simplify(e), rules::kYekutieli};
}

inline Derived k0(const RingDescriptor& r) {
  if (r.grassmannian) {
    const auto [k, m] = *r.grassmannian;
    const std::string x = "Gr(" + std::to_string(k) + "," + std::to_string(m) + ")";
    return {GroupExpr::product({GroupExpr::integers(), GroupExpr::unknown("Pic " + x),
                                GroupExpr::unknown("sum H^p(" + x + ", Omega^p(j)), dim " +
                                                   std::to_string(k * (m - k)))}),
            rules::kGrassmannianK0};
  }
  if (r.is_free() && r.n_laurent == 0 && r.base == BaseRing::Q) return {GroupExpr::integers(), rules::kQuillenSuslin};
  return {GroupExpr::unknown("K0"), rules::kK0Unknown};
}

/// Descriptor of R tensor R.
inline RingDescriptor tensor_square(const RingDescriptor& r) {
  if (!r.is_free()) throw Error("tensor square only for free descriptors");
  RingDescriptor s = r;
  s.n_poly *= 2;
  s.n_laurent *= 2;
  return s;
}

/// Largest finite subgroup of GL_n(Q).
struct FiniteSubgroupBound {
  mpz_class order;
  std::string name;
  mpz_class orthogonal_order;  // 2^n n!
};

inline mpz_class orthogonal_order(int n) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return (mpz_class(1) << n) * f;
}

inline FiniteSubgroupBound max_finite_subgroup_order(int n) {
  if (n < 1) throw Error("dimension must be >= 1");
  const mpz_class base = orthogonal_order(n);
  switch (n) {
    case 2: return {12, "W(G2)", base};
    case 4: return {1152, "W(F4)", base};
    case 6: return {103680, "W(E6)xZ2", base};
    case 7: return {2903040, "W(E7)", base};
    case 8: return {696729600, "W(E8)", base};
    case 9: return {mpz_class("1393459200"), "W(E8)xW(A1)", base};
    case 10: return {mpz_class("8360755200"), "W(E8)xW(G2)", base};
    default: return {base, "orthogonal", base};
  }
}

/// Grassmannian whose coordinate ring realizes the finite type; E7 is not
/// listed.
inline std::optional<std::pair<int, int>> grassmannian_for_type(const DynkinType& t) {
  switch (t.family()) {
    case DynkinFamily::A: return std::pair{2, t.rank() + 3};
    case DynkinFamily::D:
      if (t.rank() == 4) return std::pair{3, 6};
      return std::nullopt;
    case DynkinFamily::E:
      if (t.rank() == 6) return std::pair{3, 7};
      if (t.rank() == 8) return std::pair{3, 8};
      return std::nullopt;
  }
  return std::nullopt;
}

inline std::string grassmannian_name(std::pair<int, int> km) {
  return "Gr(" + std::to_string(km.first) + "," + std::to_string(km.second) + ")";
}

/// Finite type of the principal part of Q_{g,l}, when it is of finite type.
/// The principal part is the grid A_n x A_l for g = A_n, which is of finite
/// type exactly when min(n, l) = 1 or {n, l} is {2,2}, {2,3} or {2,4}.
inline std::optional<DynkinType> principal_part_type(const DynkinType& g, int l) {
  if (l < 1) throw LevelError("level must be >= 1");
  if (l == 1) return g;
  if (g.family() != DynkinFamily::A) return std::nullopt;
  const int n = g.rank();
  if (n == 1) return DynkinType(DynkinFamily::A, l);
  const int lo = std::min(n, l), hi = std::max(n, l);
  if (lo != 2) return std::nullopt;
  if (hi == 2) return DynkinType(DynkinFamily::D, 4);
  if (hi == 3) return DynkinType(DynkinFamily::E, 6);
  if (hi == 4) return DynkinType(DynkinFamily::E, 8);
  return std::nullopt;
}

struct InvariantReport {
  DynkinType type;
  int level;
  int generators;  // n(l+1)
  Derived pic_com_A, aut_A, pic_A, k0_A, k0_AxA;
  Derived aut_cl_Aex, pic_com_Aex;
  std::optional<DynkinType> principal_type;
  std::optional<std::pair<int, int>> grassmannian;
  std::optional<Derived> cl_Aex;

  std::vector<std::string> notes() const {
    std::vector<std::string> out;
    auto add = [&](const char* cell, const Derived& d) { out.push_back(std::string(cell) + ": " + d.rule); };
    add("A.pic_com", pic_com_A);
    add("A.aut", aut_A);
    add("A.pic", pic_A);
    add("A.k0", k0_A);
    add("A.k0_tensor_square", k0_AxA);
    add("Aex.aut_cl", aut_cl_Aex);
    add("Aex.pic_com", pic_com_Aex);
    if (cl_Aex) add("Aex.cl", *cl_Aex);
    return out;
  }
};

inline InvariantReport invariant_report(const DynkinType& t, int l) {
  if (l < 1) throw LevelError("level must be >= 1");
  InvariantReport rep{t, l, t.rank() * (l + 1), {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
  const RingDescriptor a = RingDescriptor::polynomial(rep.generators);
  rep.pic_com_A = pic_com(a);
  rep.aut_A = aut(a);
  rep.pic_A = pic_bimodule(a);
  rep.k0_A = k0(a);
  rep.k0_AxA = k0(tensor_square(a));

  rep.principal_type = principal_part_type(t, l);
  if (rep.principal_type) {
    rep.aut_cl_Aex = {aut_cl_table(*rep.principal_type), rules::kAutClTable};
    rep.grassmannian = grassmannian_for_type(*rep.principal_type);
  } else {
    rep.aut_cl_Aex = {GroupExpr::unknown("principal part not of finite type"), rules::kAutClUntabulated};
  }
  rep.pic_com_Aex = {GroupExpr::unknown("cluster variety geometry"), rules::kClusterGeometry};
  if (rep.grassmannian) rep.cl_Aex = Derived{GroupExpr::trivial(), rules::kUfdClassGroup};
  return rep;
}

inline nlohmann::json to_json(const InvariantReport& r) {
  nlohmann::json j;
  j["type"] = r.type.name();
  j["level"] = r.level;
  j["generators"] = r.generators;
  j["A"] = {{"pic_com", to_json(r.pic_com_A.value)},
            {"aut", to_json(r.aut_A.value)},
            {"pic", to_json(r.pic_A.value)},
            {"k0", to_json(r.k0_A.value)},
            {"k0_tensor_square", to_json(r.k0_AxA.value)}};
  j["Aex"] = {{"aut_cl", to_json(r.aut_cl_Aex.value)},
              {"pic_com", to_json(r.pic_com_Aex.value)},
              {"principal_type", r.principal_type ? nlohmann::json(r.principal_type->name()) : nlohmann::json()},
              {"grassmannian", r.grassmannian ? nlohmann::json(grassmannian_name(*r.grassmannian)) : nlohmann::json()},
              {"cl", r.cl_Aex ? to_json(r.cl_Aex->value) : nlohmann::json()}};
  j["notes"] = r.notes();
  return j;
}

}  // namespace clusterbench
