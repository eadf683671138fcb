#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "clusterbench/laurent.hpp"

namespace clusterbench {

/// num/den with no gcd reduction. A monomial denominator is folded into the
/// numerator, so Laurent polynomials always appear with den = 1; otherwise the
/// leading coefficient of den is made positive.
class RationalFn {
 public:
  RationalFn() = default;

  explicit RationalFn(LaurentPoly num) : num_(std::move(num)), den_(LaurentPoly::constant(num_.vars(), Coef(1))) {}

  RationalFn(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (!(num_.vars() == den_.vars())) throw VarSetError("varset mismatch between numerator and denominator");
    if (den_.is_zero()) throw DivisionByZero("zero denominator");
    normalize();
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  const VarSet& vars() const { return num_.vars(); }

  /// True when the value is a Laurent polynomial in this representation.
  bool is_laurent() const { return den_.is_constant(); }

  RationalFn inverse() const {
    if (num_.is_zero()) throw DivisionByZero("inverse of zero");
    return RationalFn(den_, num_);
  }

  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
  }

  friend RationalFn operator/(const RationalFn& a, const RationalFn& b) { return a * b.inverse(); }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    if (a.den_ == b.den_) return RationalFn(a.num_ + b.num_, a.den_);
    return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }

  RationalFn operator-() const { return RationalFn(-num_, den_); }
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }

 private:
  void normalize() {
    if (den_.is_monomial()) {
      num_ *= den_.pow(-1);
      den_ = LaurentPoly::constant(num_.vars(), Coef(1));
      return;
    }
    if (den_.leading_term().second < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  LaurentPoly num_;
  LaurentPoly den_;
};

/// Exact equality by cross-multiplication.
inline bool rf_equal(const RationalFn& a, const RationalFn& b) {
  if (!(a.vars() == b.vars())) throw VarSetError("varset mismatch");
  return a.num() * b.den() == b.num() * a.den();
}

inline std::string to_string(const RationalFn& f) {
  if (f.den().is_constant() && f.den().constant_term() == 1) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

/// Formal substitution with images indexed like p's variables. Variables
/// that do not occur in p may have a null image.
///
/// Denominators are cleared term by term: with n_i/d_i the image of x_i and
/// exponents of x_i ranging over [lo_i, hi_i], every term is multiplied by
/// prod n_i^{a_i} d_i^{b_i} (a_i = max(0, -lo_i), b_i = max(0, hi_i)), which
/// leaves only non-negative powers in each numerator term.
inline RationalFn substitute(const LaurentPoly& p, std::span<const RationalFn* const> images, const VarSet& target) {
  const std::size_t n = p.vars().size();
  if (images.size() != n) throw SubstitutionError("image count does not match varset");
  if (p.is_zero()) return RationalFn(LaurentPoly(target));
  const Exponent lo = p.min_exponents(), hi = p.max_exponents();

  struct Plan {
    bool used = false;
    bool direct = false;  // Laurent image with no clearing needed
    int a = 0, b = 0;
    std::vector<LaurentPoly> num_pows, den_pows;  // num^j, den^j
  };
  std::vector<Plan> plan(n);
  LaurentPoly den = LaurentPoly::constant(target, Coef(1));
  for (std::size_t i = 0; i < n; ++i) {
    if (lo[i] == 0 && hi[i] == 0) continue;
    const RationalFn* img = images[i];
    if (img == nullptr) throw SubstitutionError("no image for variable '" + p.vars().name(i) + "'");
    if (!(img->vars() == target)) throw VarSetError("image of '" + p.vars().name(i) + "' is over a different varset");
    Plan& pl = plan[i];
    pl.used = true;
    pl.direct = img->is_laurent() && (lo[i] >= 0 || img->num().is_monomial());
    if (pl.direct) continue;
    pl.a = std::max(0, -lo[i]);
    pl.b = std::max(0, hi[i]);
    const int range = pl.a + pl.b;
    pl.num_pows.reserve(range + 1);
    pl.den_pows.reserve(range + 1);
    pl.num_pows.push_back(LaurentPoly::constant(target, Coef(1)));
    pl.den_pows.push_back(LaurentPoly::constant(target, Coef(1)));
    for (int j = 1; j <= range; ++j) {
      pl.num_pows.push_back(pl.num_pows.back() * img->num());
      pl.den_pows.push_back(pl.den_pows.back() * img->den());
    }
    den *= pl.num_pows[pl.a] * pl.den_pows[pl.b];
  }

  LaurentPoly num(target);
  for (const auto& [e, c] : p.terms()) {
    LaurentPoly t = LaurentPoly::constant(target, c);
    for (std::size_t i = 0; i < n; ++i) {
      const Plan& pl = plan[i];
      if (!pl.used) continue;
      if (pl.direct) {
        if (e[i] != 0) {
          const LaurentPoly& base = images[i]->num();
          t *= base.pow(e[i]) * (Coef(1) / images[i]->den().constant_term());
        }
        continue;
      }
      t *= pl.num_pows[e[i] + pl.a] * pl.den_pows[pl.b - e[i]];
    }
    num += t;
  }
  return RationalFn(std::move(num), std::move(den));
}

/// Substitution by variable name; every occurring variable needs an image.
inline RationalFn substitute(const LaurentPoly& p, const std::map<std::string, RationalFn>& images,
                             const VarSet& target) {
  std::vector<const RationalFn*> ptrs(p.vars().size(), nullptr);
  for (std::size_t i = 0; i < ptrs.size(); ++i) {
    auto it = images.find(p.vars().name(i));
    if (it != images.end()) ptrs[i] = &it->second;
  }
  return substitute(p, std::span<const RationalFn* const>(ptrs), target);
}

/// As above, taking the target varset from the images.
inline RationalFn substitute(const LaurentPoly& p, const std::map<std::string, RationalFn>& images) {
  if (images.empty()) {
    if (!p.is_constant()) throw SubstitutionError("no images given for a non-constant polynomial");
    return RationalFn(p);
  }
  return substitute(p, images, images.begin()->second.vars());
}

/// Substitutes rational-function images into a rational function.
inline RationalFn substitute(const RationalFn& f, const std::map<std::string, RationalFn>& images,
                             const VarSet& target) {
  return substitute(f.num(), images, target) / substitute(f.den(), images, target);
}

}  // namespace clusterbench
