#include <gtest/gtest.h>

#include <random>

#include "clusterbench/invariants.hpp"
#include "clusterbench/seeds.hpp"

using namespace clusterbench;

namespace {

GroupExpr random_tree(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 9 : 5);
  std::uniform_int_distribution<int> small(1, 4);
  switch (pick(rng)) {
    case 0: return GroupExpr::trivial();
    case 1: return GroupExpr::integers();
    case 2: return GroupExpr::cyclic(small(rng));
    case 3: return GroupExpr::sym(small(rng));
    case 4: return GroupExpr::ga(small(rng), BaseRing::Q);
    case 5: return GroupExpr::unknown("leaf");
    case 6: {
      std::vector<GroupExpr> f;
      const int k = small(rng) - 1;
      for (int i = 0; i < k; ++i) f.push_back(random_tree(rng, depth - 1));
      return GroupExpr::product(std::move(f));
    }
    case 7: return GroupExpr::semidirect(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 8: return GroupExpr::power(random_tree(rng, depth - 1), small(rng));
    default:
      return GroupExpr::amalgam(random_tree(rng, depth - 1), random_tree(rng, depth - 1), random_tree(rng, depth - 1));
  }
}

bool contains_trivial_factor(const GroupExpr& g) {
  if (g.kind() == GroupExpr::Kind::Product)
    for (const auto& c : g.children())
      if (c.is_trivial() || c.kind() == GroupExpr::Kind::Product) return true;
  if (g.kind() == GroupExpr::Kind::Semidirect && g.children()[1].is_trivial()) return true;
  for (const auto& c : g.children())
    if (contains_trivial_factor(c)) return true;
  return false;
}

}  // namespace

TEST(Simplify, IdempotentOnRandomTrees) {
  std::mt19937 rng(31);
  for (int i = 0; i < 1000; ++i) {
    auto g = random_tree(rng, 4);
    auto s = simplify(g);
    ASSERT_EQ(simplify(s), s) << to_string(g);
    ASSERT_FALSE(contains_trivial_factor(s)) << to_string(s);
    ASSERT_EQ(finite_order(s), finite_order(g)) << to_string(g);
  }
}

TEST(PicCom, Rules) {
  auto q4 = pic_com(RingDescriptor::polynomial(4));
  EXPECT_TRUE(q4.value.is_trivial());
  EXPECT_EQ(q4.rule, rules::kPolPic);

  auto z3 = pic_com(RingDescriptor::polynomial(3, BaseRing::Z));
  EXPECT_TRUE(z3.value.is_trivial());
  EXPECT_EQ(z3.rule, rules::kCoykendall);

  RingDescriptor laurent_q = RingDescriptor::polynomial(2);
  laurent_q.n_laurent = 3;
  EXPECT_TRUE(pic_com(laurent_q).value.is_trivial());

  RingDescriptor hyper = RingDescriptor::polynomial(3);
  VarSet uvw({"u", "v", "w"});
  hyper.relations.push_back(parse_laurent(uvw, "u*v*w - u - v - 1"));
  auto h = pic_com(hyper);
  EXPECT_EQ(h.value, GroupExpr::unknown("needs geometry"));
  EXPECT_EQ(h.rule, rules::kNeedsGeometry);
}

TEST(PicCom, WeibelShapeOverZ) {
  RingDescriptor r = RingDescriptor::polynomial(1, BaseRing::Z);
  r.n_laurent = 2;
  r.seminormal.reset();
  auto d = pic_com(r);
  EXPECT_EQ(d.rule, rules::kWeibel);
  // m LPic and 2^k C(m,k) copies of N^k Pic for k = 1..m.
  auto expected = GroupExpr::product({GroupExpr::power(GroupExpr::unknown("LPic"), 2),
                                      GroupExpr::power(GroupExpr::unknown("N^1Pic"), 4),
                                      GroupExpr::power(GroupExpr::unknown("N^2Pic"), 4)});
  EXPECT_EQ(d.value, expected);

  r.seminormal = true;
  r.anodal = true;
  EXPECT_TRUE(pic_com(r).value.is_trivial());
  r.anodal = false;
  EXPECT_EQ(pic_com(r).value, GroupExpr::power(GroupExpr::unknown("LPic"), 2));

  // Total NPic multiplicity is 3^m - 1.
  r.seminormal = false;
  r.n_laurent = 4;
  long long total = 0;
  for (const auto& c : pic_com(r).value.children())
    if (c.kind() == GroupExpr::Kind::Power && c.children()[0].tag().rfind("N^", 0) == 0) total += c.n();
  EXPECT_EQ(total, 80);
}

TEST(PicBimodule, Examples) {
  EXPECT_EQ(pic_bimodule(RingDescriptor::polynomial(2)).value, GroupExpr::ga(2, BaseRing::Q));
  EXPECT_EQ(pic_bimodule(RingDescriptor::polynomial(4)).value, GroupExpr::ga(4, BaseRing::Q));
  RingDescriptor hyper = RingDescriptor::polynomial(3);
  hyper.relations.push_back(LaurentPoly::constant(VarSet({"u"}), Coef(0)));
  auto p = pic_bimodule(hyper).value;
  EXPECT_EQ(p.kind(), GroupExpr::Kind::Semidirect);
  EXPECT_EQ(p.children()[1], GroupExpr::unknown("needs geometry"));
}

TEST(K0, Rules) {
  auto a = RingDescriptor::polynomial(5);
  EXPECT_EQ(k0(a).value, GroupExpr::integers());
  EXPECT_EQ(k0(tensor_square(a)).value, GroupExpr::integers());
  EXPECT_EQ(tensor_square(a).n_poly, 10);
  auto g = k0(RingDescriptor::grassmannian_ring(2, 5));
  EXPECT_EQ(g.rule, rules::kGrassmannianK0);
  ASSERT_EQ(g.value.kind(), GroupExpr::Kind::Product);
  EXPECT_EQ(g.value.children()[0], GroupExpr::integers());
  EXPECT_EQ(g.value.children()[1].kind(), GroupExpr::Kind::Unknown);
}

TEST(AutClTable, Rows) {
  EXPECT_EQ(aut_cl_table({DynkinFamily::A, 1}), GroupExpr::cyclic(2));
  EXPECT_EQ(aut_cl_table({DynkinFamily::A, 2}), GroupExpr::dihedral(5));
  EXPECT_EQ(aut_cl_table({DynkinFamily::D, 4}), GroupExpr::product({GroupExpr::dihedral(4), GroupExpr::sym(3)}));
  EXPECT_EQ(aut_cl_table({DynkinFamily::D, 6}), GroupExpr::product({GroupExpr::dihedral(6), GroupExpr::cyclic(2)}));
  EXPECT_EQ(aut_cl_table({DynkinFamily::E, 6}), GroupExpr::dihedral(14));
  EXPECT_EQ(aut_cl_table({DynkinFamily::E, 7}), GroupExpr::dihedral(10));
  EXPECT_EQ(aut_cl_table({DynkinFamily::E, 8}), GroupExpr::dihedral(16));
  EXPECT_THROW(DynkinType::parse("B", 3), TypeError);
}

TEST(AutClTable, OrdersAgreeWithComputedGroups) {
  for (int n = 2; n <= 3; ++n) {
    DynkinType t(DynkinFamily::A, n);
    auto r = compute_aut_group(initial_seed(dynkin_quiver(t)));
    EXPECT_EQ(finite_order(aut_cl_table(t)), r.group.order());
  }
}

TEST(Friedland, StrictInequalitiesAtExceptionalDimensions) {
  const std::pair<int, const char*> expected_orders[] = {{2, "12"},           {4, "1152"},       {6, "103680"},
                                                         {7, "2903040"},      {8, "696729600"},  {9, "1393459200"},
                                                         {10, "8360755200"}};
  for (auto [n, text] : expected_orders) {
    auto b = max_finite_subgroup_order(n);
    EXPECT_EQ(b.order, mpz_class(text)) << n;
    EXPECT_GT(b.order, b.orthogonal_order) << n;
  }
  EXPECT_EQ(max_finite_subgroup_order(8).orthogonal_order, 10321920);
  EXPECT_EQ(max_finite_subgroup_order(10).orthogonal_order, mpz_class("3715891200"));
  EXPECT_EQ(max_finite_subgroup_order(3).order, 48);
  EXPECT_EQ(max_finite_subgroup_order(3).name, "orthogonal");
  EXPECT_EQ(max_finite_subgroup_order(5).order, 3840);
}

TEST(Grassmannian, ForType) {
  EXPECT_EQ(grassmannian_for_type({DynkinFamily::A, 2}), (std::pair{2, 5}));
  EXPECT_EQ(grassmannian_for_type({DynkinFamily::D, 4}), (std::pair{3, 6}));
  EXPECT_EQ(grassmannian_for_type({DynkinFamily::E, 6}), (std::pair{3, 7}));
  EXPECT_EQ(grassmannian_for_type({DynkinFamily::E, 8}), (std::pair{3, 8}));
  EXPECT_FALSE(grassmannian_for_type({DynkinFamily::E, 7}).has_value());
  EXPECT_FALSE(grassmannian_for_type({DynkinFamily::D, 5}).has_value());
}

TEST(PrincipalPartType, MatchesEnumeratedClusterCounts) {
  // Cluster counts: A_n Catalan, D4 50.
  struct Row {
    DynkinType g;
    int l;
    std::size_t clusters;
  };
  for (const Row& row : {Row{{DynkinFamily::A, 1}, 3, 14}, Row{{DynkinFamily::A, 3}, 1, 14},
                         Row{{DynkinFamily::A, 2}, 2, 50}, Row{{DynkinFamily::D, 4}, 1, 50}}) {
    auto s = specialize(initial_seed(build_hl_quiver(row.g, row.l)));
    auto g = exchange_graph(s);
    ASSERT_TRUE(g.complete());
    EXPECT_EQ(g.size(), row.clusters) << row.g.name() << " l=" << row.l;
  }
  EXPECT_EQ(principal_part_type({DynkinFamily::A, 2}, 2), DynkinType(DynkinFamily::D, 4));
  EXPECT_EQ(principal_part_type({DynkinFamily::A, 1}, 3), DynkinType(DynkinFamily::A, 3));
  EXPECT_EQ(principal_part_type({DynkinFamily::A, 3}, 2), DynkinType(DynkinFamily::E, 6));
  EXPECT_FALSE(principal_part_type({DynkinFamily::A, 3}, 3).has_value());
  EXPECT_FALSE(principal_part_type({DynkinFamily::D, 4}, 2).has_value());
}

TEST(PrincipalPartType, A2Level2GroupIsD4TimesS3) {
  auto r = compute_aut_group(specialize(initial_seed(build_hl_quiver({DynkinFamily::A, 2}, 2))));
  EXPECT_EQ(r.group.order(), 48u);
  EXPECT_EQ(r.identified, aut_cl_table({DynkinFamily::D, 4}));
}

TEST(InvariantReport, Examples) {
  auto a11 = invariant_report({DynkinFamily::A, 1}, 1);
  EXPECT_EQ(a11.pic_A.value, GroupExpr::ga(2, BaseRing::Q));
  EXPECT_EQ(a11.aut_cl_Aex.value, GroupExpr::cyclic(2));
  EXPECT_TRUE(a11.pic_com_A.value.is_trivial());
  EXPECT_EQ(a11.k0_A.value, GroupExpr::integers());
  EXPECT_EQ(a11.k0_AxA.value, GroupExpr::integers());

  for (int l = 2; l <= 4; ++l) {
    auto r = invariant_report({DynkinFamily::A, 1}, l);
    EXPECT_EQ(r.pic_A.value, GroupExpr::ga(l + 1, BaseRing::Q));
    EXPECT_EQ(r.aut_cl_Aex.value, GroupExpr::dihedral(l + 3));
  }

  auto a31 = invariant_report({DynkinFamily::A, 3}, 1);
  EXPECT_EQ(a31.pic_A.value, GroupExpr::ga(6, BaseRing::Q));
  EXPECT_EQ(a31.aut_cl_Aex.value, GroupExpr::dihedral(6));
  EXPECT_EQ(a31.grassmannian, (std::pair{2, 6}));
  ASSERT_TRUE(a31.cl_Aex.has_value());
  EXPECT_TRUE(a31.cl_Aex->value.is_trivial());

  auto a21 = invariant_report({DynkinFamily::A, 2}, 1);
  EXPECT_EQ(a21.pic_A.value, GroupExpr::ga(4, BaseRing::Q));

  auto e71 = invariant_report({DynkinFamily::E, 7}, 1);
  EXPECT_FALSE(e71.grassmannian.has_value());
  EXPECT_FALSE(e71.cl_Aex.has_value());

  EXPECT_THROW(invariant_report({DynkinFamily::A, 2}, 0), LevelError);
}

TEST(InvariantReport, EveryCellHasOneRuleAndIsDeterministic) {
  for (auto [t, l] : {std::pair{DynkinType(DynkinFamily::A, 1), 1}, std::pair{DynkinType(DynkinFamily::D, 4), 2},
                      std::pair{DynkinType(DynkinFamily::E, 8), 1}}) {
    auto r = invariant_report(t, l);
    for (const auto& note : r.notes()) {
      auto colon = note.find(": ");
      ASSERT_NE(colon, std::string::npos);
      EXPECT_FALSE(note.substr(colon + 2).empty());
    }
    EXPECT_EQ(to_json(r), to_json(invariant_report(t, l)));
  }
}

TEST(InvariantReport, JsonShape) {
  auto j = to_json(invariant_report({DynkinFamily::A, 1}, 1));
  EXPECT_EQ(j["A"]["pic"]["type"], "GA");
  EXPECT_EQ(j["A"]["pic"]["structure"]["type"], "Amalgam");
  EXPECT_EQ(j["A"]["pic"]["structure"]["over"]["type"], "Bf");
  EXPECT_EQ(j["Aex"]["aut_cl"]["type"], "Zn");
  EXPECT_EQ(j["Aex"]["grassmannian"], "Gr(2,4)");
  EXPECT_TRUE(j["Aex"]["cl"].is_object());
  EXPECT_EQ(j["notes"].size(), 8u);
  EXPECT_TRUE(to_json(invariant_report({DynkinFamily::E, 7}, 1))["Aex"]["grassmannian"].is_null());
}
