// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "clusterbench/autpoly.hpp"
#include "clusterbench/clusterauto.hpp"
#include "clusterbench/invariants.hpp"
#include "clusterbench/presentations.hpp"
#include "clusterbench/seeds.hpp"

using namespace clusterbench;

namespace {

// Pinned limits. Every comparison below is exact; only wall time has slack.
constexpr double kEnumerationSeconds = 5.0;
constexpr int kLaurentWalks = 500;
constexpr int kLaurentWalkDepth = 8;
constexpr int kIsoTrials = 300;
constexpr int kIsoMaxVertices = 8;
constexpr int kDivideTrials = 1000;
constexpr int kInvolutionTrials = 1000;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Check = std::function<void(Outcome&)>;

Seed dynkin_seed(DynkinFamily f, int r) { return initial_seed(dynkin_quiver({f, r})); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void cluster_counts(Outcome& o) {
  for (auto [r, expected] : {std::pair{1, 2}, {2, 5}, {3, 14}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto g = exchange_graph(dynkin_seed(DynkinFamily::A, r));
    const double dt = seconds_since(t0);
    const std::size_t found = census(g).cluster_count;
    o.detail << " A" << r << "=" << found << " (" << dt << "s)";
    o.require(g.complete() && found == static_cast<std::size_t>(expected), "A" + std::to_string(r) + " count");
    o.require(dt < kEnumerationSeconds, "A" + std::to_string(r) + " time");
  }
}

void presentations(Outcome& o) {
  for (const auto& p : {a2_presentation(), a3_presentation()}) {
    const bool zero = verify_presentation(p);
    o.detail << " " << p.name << ": " << to_string(p.relation) << " -> " << (zero ? "0" : to_string(substituted_relation(p)));
    o.require(zero, p.name);
  }
}

void automorphism_orders(Outcome& o) {
  struct Row {
    DynkinFamily f;
    int r;
    std::size_t order;
  };
  for (const Row& row : {Row{DynkinFamily::A, 1, 2}, Row{DynkinFamily::A, 2, 10}, Row{DynkinFamily::A, 3, 12},
                         Row{DynkinFamily::D, 4, 48}}) {
    const DynkinType t(row.f, row.r);
    const auto r = compute_aut_group(dynkin_seed(row.f, row.r));
    const GroupExpr table = aut_cl_table(t);
    o.detail << " " << t.name() << ":" << r.group.order() << "=" << to_string(r.identified);
    o.require(r.group.order() == row.order, t.name() + " order");
    o.require(r.identified == table && matches(r.group, table), t.name() + " structure");
    o.require(compare_with_table(r.group, table) == TableRelation::equal, t.name() + " table");
  }
}

using LabelArrow = std::tuple<std::string, std::string, int>;

std::set<LabelArrow> label_arrows(const Quiver& q) {
  std::set<LabelArrow> s;
  for (const auto& a : q.arrows()) s.emplace(q.label(a.src), q.label(a.dst), a.mult);
  return s;
}

void hl_quiver(Outcome& o) {
  const DynkinType a4(DynkinFamily::A, 4);
  const Quiver q = build_hl_quiver(a4, 1);
  const auto family = hl_arrows(a4, 1);
  o.detail << " vertices=" << q.size() << " frozen=" << q.n_frozen() << " arrows=" << family.size();
  o.require(q.size() == 8 && q.n_frozen() == 4 && family.size() == 13, "counts");

  // Each arrow family from the construction rules: i -> j in the Dynkin quiver
  // gives (i,k) -> (j,k) and (j,k) -> (i,k+1); every (i,k+1) -> (i,k).
  std::set<std::tuple<int, int, int, int, int>> expect;
  for (auto [i, j] : dynkin_arrows(a4))
    for (int k = 1; k <= 2; ++k) {
      expect.emplace(1, i, k, j, k);
      if (k == 1) expect.emplace(2, j, k, i, k + 1);
    }
  for (int i = 1; i <= 4; ++i) expect.emplace(3, i, 2, i, 1);
  std::set<std::tuple<int, int, int, int, int>> got;
  for (const auto& a : family) got.emplace(a.family, a.src.node, a.src.level, a.dst.node, a.dst.level);
  o.require(got == expect, "families");

  // Mutation at V_{1,1}: flip its arrows, insert the 2-path shortcuts, cancel 2-cycles.
  const auto before = label_arrows(q);
  const auto after = label_arrows(q.mutate(*q.index_of("V_{1,1}")));
  std::set<LabelArrow> expected_after = before;
  for (const LabelArrow& gone : {LabelArrow{"V_{2,1}", "V_{1,1}", 1}, LabelArrow{"W_{1,2}", "V_{1,1}", 1},
                                 LabelArrow{"V_{1,1}", "W_{2,2}", 1}, LabelArrow{"W_{2,2}", "V_{2,1}", 1}})
    expected_after.erase(gone);
  expected_after.insert({"V_{1,1}", "V_{2,1}", 1});
  expected_after.insert({"V_{1,1}", "W_{1,2}", 1});
  expected_after.insert({"W_{2,2}", "V_{1,1}", 1});
  o.detail << " mutated arrows=" << after.size();
  o.require(after == expected_after, "mutation at V_{1,1}");
}

bool positive_integer_terms(const LaurentPoly& p) {
  for (const auto& [e, c] : p.terms())
    if (c <= 0 || !is_integer(c)) return false;
  return true;
}

void laurent_suite(Outcome& o) {
  int violations = 0;
  for (auto [f, r] : {std::pair{DynkinFamily::A, 1}, {DynkinFamily::A, 2}, {DynkinFamily::A, 3},
                      {DynkinFamily::A, 4}, {DynkinFamily::D, 4}}) {
    try {
      const auto g = exchange_graph(dynkin_seed(f, r));
      o.require(g.complete(), DynkinType(f, r).name() + " complete");
      o.require(check_laurent_positive(g), DynkinType(f, r).name() + " positivity");
    } catch (const LaurentViolation&) {
      ++violations;
    }
  }
  std::mt19937 rng(20261016);
  const Seed s0 = initial_seed(build_hl_quiver({DynkinFamily::A, 2}, 2));
  std::uniform_int_distribution<int> pick(0, s0.quiver().n_mut() - 1);
  int walks = 0;
  for (int w = 0; w < kLaurentWalks; ++w) {
    try {
      Seed s = s0;
      for (int d = 0; d < kLaurentWalkDepth; ++d) s = mutate_seed(s, pick(rng));
      for (int v = 0; v < s.quiver().n_mut(); ++v) o.require(positive_integer_terms(s.certificate(v)), "walk positivity");
      ++walks;
    } catch (const LaurentViolation&) {
      ++violations;
    }
  }
  o.detail << " violations=" << violations << " walks=" << walks << " depth=" << kLaurentWalkDepth;
  o.require(violations == 0, "no LaurentViolation");
}

void nagata_checks(Outcome& o) {
  for (const char* text : {"1", "-1", "2", "1/2"}) {
    const Coef a = parse_coef(text);
    const PolyEndo n = nagata(a), inv = nagata_inverse(a);
    const LaurentPoly d = nagata_delta(a);
    const bool ok = is_identity(compose(n, inv)) && is_identity(compose(inv, n)) && n.apply(d) == d;
    o.detail << " a=" << text << (ok ? ":ok" : ":bad");
    o.require(ok, std::string("a=") + text);
  }
}

void invariant_reports(Outcome& o) {
  const auto a11 = invariant_report({DynkinFamily::A, 1}, 1);
  o.require(a11.pic_A.value == GroupExpr::ga(2, BaseRing::Q), "(A,1,1) Pic");
  o.require(a11.pic_com_A.value.is_trivial(), "(A,1,1) Pic_com");
  o.require(a11.k0_A.value == GroupExpr::integers() && a11.k0_AxA.value == GroupExpr::integers(), "(A,1,1) K0");
  int rows = 0;
  for (int n = 1; n <= 4; ++n) {
    const auto r = invariant_report({DynkinFamily::A, n}, 1);
    o.require(r.pic_A.value == GroupExpr::ga(2 * n, BaseRing::Q), "(A," + std::to_string(n) + ",1) Pic");
    o.require(r.aut_cl_Aex.value == aut_cl_table({DynkinFamily::A, n}), "(A," + std::to_string(n) + ",1) table");
    ++rows;
  }
  for (int l = 1; l <= 4; ++l) {
    const auto r = invariant_report({DynkinFamily::A, 1}, l);
    o.require(r.pic_A.value == GroupExpr::ga(l + 1, BaseRing::Q), "(A,1," + std::to_string(l) + ") Pic");
    o.require(r.aut_cl_Aex.value == aut_cl_table({DynkinFamily::A, l}), "(A,1," + std::to_string(l) + ") table");
    ++rows;
  }
  int strict = 0;
  for (int n : {2, 4, 6, 7, 8, 9, 10}) {
    const auto b = max_finite_subgroup_order(n);
    if (b.order > b.orthogonal_order) ++strict;
    if (n == 2 || n == 8) o.detail << " n=" << n << ":" << b.order.get_str() << ">" << b.orthogonal_order.get_str();
  }
  o.require(max_finite_subgroup_order(2).order == 12 && max_finite_subgroup_order(2).orthogonal_order == 8, "n=2");
  o.require(max_finite_subgroup_order(4).order == 1152 && max_finite_subgroup_order(4).orthogonal_order == 384, "n=4");
  o.require(max_finite_subgroup_order(8).order == 696729600 &&
                max_finite_subgroup_order(8).orthogonal_order == 10321920,
            "n=8");
  o.detail << " report rows=" << rows << " strict=" << strict << "/7";
  o.require(strict == 7, "strict inequalities");
}

Quiver random_quiver(std::mt19937& rng, int n_mut, int n_frozen) {
  std::uniform_int_distribution<int> d(-1, 1);
  std::vector<std::vector<int>> b(n_mut + n_frozen, std::vector<int>(n_mut, 0));
  for (int i = 0; i < n_mut; ++i)
    for (int j = i + 1; j < n_mut; ++j) {
      b[i][j] = d(rng);
      b[j][i] = -b[i][j];
    }
  for (int i = n_mut; i < n_mut + n_frozen; ++i)
    for (int k = 0; k < n_mut; ++k) b[i][k] = d(rng);
  return Quiver(n_mut, n_frozen, b, {});
}

std::set<std::vector<int>> brute_force_isos(const Quiver& a, const Quiver& b, bool setwise) {
  std::set<std::vector<int>> out;
  std::vector<int> mut(a.n_mut()), fro(a.n_frozen());
  std::iota(mut.begin(), mut.end(), 0);
  std::iota(fro.begin(), fro.end(), a.n_mut());
  do {
    std::vector<int> f0 = fro;
    do {
      std::vector<int> sigma(mut);
      sigma.insert(sigma.end(), fro.begin(), fro.end());
      bool ok = true;
      for (int i = 0; i < a.size() && ok; ++i)
        for (int k = 0; k < a.n_mut() && ok; ++k) ok = b.b(sigma[i], sigma[k]) == a.b(i, k);
      if (ok) out.insert(sigma);
      if (!setwise) break;
    } while (std::next_permutation(fro.begin(), fro.end()));
    fro = f0;
  } while (std::next_permutation(mut.begin(), mut.end()));
  return out;
}

void oracles(Outcome& o) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> nm(1, kIsoMaxVertices), coin(0, 1);
  int iso_agree = 0;
  for (int t = 0; t < kIsoTrials; ++t) {
    const int m = nm(rng);
    std::uniform_int_distribution<int> nf(0, kIsoMaxVertices - m);
    const Quiver a = random_quiver(rng, m, nf(rng));
    std::vector<int> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.begin() + m, rng);
    std::shuffle(perm.begin() + m, perm.end(), rng);
    std::vector<std::vector<int>> mb(a.size(), std::vector<int>(m));
    for (int i = 0; i < a.size(); ++i)
      for (int k = 0; k < m; ++k) mb[perm[i]][perm[k]] = a.b(i, k);
    Quiver b(m, a.n_frozen(), mb, {});
    if (coin(rng)) b = b.mutate(0);
    const bool setwise = coin(rng);
    const auto found = isomorphisms(a, b, setwise);
    iso_agree += std::set<std::vector<int>>(found.begin(), found.end()) == brute_force_isos(a, b, setwise) &&
                 std::set<std::vector<int>>(found.begin(), found.end()).size() == found.size();
  }
  o.require(iso_agree == kIsoTrials, "isomorphisms");

  const VarSet v({"x_1", "x_2", "x_3"});
  std::uniform_int_distribution<int> e(-2, 2), c(-5, 5), den(1, 3), terms(1, 4);
  auto random_poly = [&](bool nonzero) {
    while (true) {
      LaurentPoly p(v);
      const int n = terms(rng);
      for (int i = 0; i < n; ++i) p.add_term({e(rng), e(rng), e(rng)}, make_coef(c(rng), den(rng)));
      if (!nonzero || !p.is_zero()) return p;
    }
  };
  int divide_ok = 0;
  for (int t = 0; t < kDivideTrials; ++t) {
    const LaurentPoly a = random_poly(false), b = random_poly(true);
    divide_ok += exact_divide(a * b, b) == a;
  }
  o.require(divide_ok == kDivideTrials, "exact_divide");

  std::uniform_int_distribution<int> sm(1, 4), sf(0, 2), steps(0, 3);
  int involution_ok = 0;
  for (int t = 0; t < kInvolutionTrials; ++t) {
    const Quiver q = random_quiver(rng, sm(rng), sf(rng));
    std::uniform_int_distribution<int> pick(0, q.n_mut() - 1);
    Seed s = initial_seed(q);
    for (int i = steps(rng); i > 0; --i) s = mutate_seed(s, pick(rng));
    const int k = pick(rng);
    const Seed back = mutate_seed(mutate_seed(s, k), k);
    bool ok = back.quiver() == s.quiver();
    for (int i = 0; i < s.quiver().size() && ok; ++i) ok = rf_equal(back.var(i), s.var(i));
    involution_ok += ok;
  }
  o.require(involution_ok == kInvolutionTrials, "involution");
  o.detail << " isomorphisms " << iso_agree << "/" << kIsoTrials << ", exact_divide " << divide_ok << "/"
           << kDivideTrials << ", involution " << involution_ok << "/" << kInvolutionTrials;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Check>> criteria{
      {"cluster counts", cluster_counts},
      {"presentation identities", presentations},
      {"cluster automorphism orders", automorphism_orders},
      {"HL quiver fidelity", hl_quiver},
      {"Laurent phenomenon suite", laurent_suite},
      {"Nagata verification", nagata_checks},
      {"invariant reports", invariant_reports},
      {"oracle equivalences", oracles},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ":" << o.detail.str()
              << "\n";
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
