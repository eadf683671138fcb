#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "clusterbench/errors.hpp"
#include "clusterbench/rational.hpp"

namespace clusterbench {

/// Ordered list of distinct variable names. Copies share storage, so the
/// common case of comparing two polynomials' varsets is a pointer check.
class VarSet {
 public:
  VarSet() : names_(std::make_shared<const std::vector<std::string>>()) {}

  explicit VarSet(std::vector<std::string> names) {
    std::unordered_set<std::string> seen;
    for (const auto& n : names) {
      if (n.empty()) throw VarSetError("empty variable name");
      if (!seen.insert(n).second) throw VarSetError("duplicate variable '" + n + "'");
    }
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
  }

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return names_->at(i); }
  const std::vector<std::string>& names() const { return *names_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    auto it = std::find(names_->begin(), names_->end(), name);
    if (it == names_->end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_->begin());
  }

  friend bool operator==(const VarSet& a, const VarSet& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

using Exponent = std::vector<int>;

inline long total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0L); }

/// Strict "a comes before b" in descending graded-lex order: higher total
/// degree first, ties broken lexicographically with the first variable most
/// significant.
struct GrlexDescending {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const long da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

/// Sparse Laurent polynomial with rational coefficients. Terms iterate
/// leading term first; zero coefficients are never stored.
class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, Coef, GrlexDescending>;

  LaurentPoly() = default;
  explicit LaurentPoly(VarSet vars) : vars_(std::move(vars)) {}

  static LaurentPoly constant(const VarSet& vars, const Coef& c) {
    return monomial(vars, Exponent(vars.size(), 0), c);
  }

  static LaurentPoly monomial(const VarSet& vars, Exponent exp, const Coef& c = Coef(1)) {
    if (exp.size() != vars.size()) throw VarSetError("exponent length does not match varset");
    LaurentPoly p(vars);
    if (c != 0) p.terms_.emplace(std::move(exp), c);
    return p;
  }

  static LaurentPoly variable(const VarSet& vars, std::size_t index, int power = 1) {
    if (index >= vars.size()) throw VarSetError("variable index out of range");
    Exponent e(vars.size(), 0);
    e[index] = power;
    return monomial(vars, std::move(e));
  }

  static LaurentPoly variable(const VarSet& vars, std::string_view name, int power = 1) {
    auto idx = vars.index_of(name);
    if (!idx) throw VarSetError("unknown variable '" + std::string(name) + "'");
    return variable(vars, *idx, power);
  }

  const VarSet& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_polynomial() const {
    for (const auto& [e, c] : terms_)
      for (int x : e)
        if (x < 0) return false;
    return true;
  }

  bool is_monomial() const { return terms_.size() == 1; }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                              [](int x) { return x == 0; }));
  }

  /// Constant term (zero when absent).
  Coef constant_term() const {
    auto it = terms_.find(Exponent(vars_.size(), 0));
    return it == terms_.end() ? Coef(0) : it->second;
  }

  const std::pair<const Exponent, Coef>& leading_term() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    return *terms_.begin();
  }

  Coef coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coef(0) : it->second;
  }

  /// Componentwise minimum exponent over all terms (zero vector for 0).
  Exponent min_exponents() const {
    Exponent m(vars_.size(), 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
      first = false;
    }
    return m;
  }

  Exponent max_exponents() const {
    Exponent m(vars_.size(), 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) m[i] = first ? e[i] : std::max(m[i], e[i]);
      first = false;
    }
    return m;
  }

  /// Highest total degree among the terms.
  long degree() const {
    long d = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      d = first ? total_degree(e) : std::max(d, total_degree(e));
      first = false;
    }
    return d;
  }

  /// Multiplies by the Laurent monomial x^shift.
  LaurentPoly shifted(const Exponent& shift) const {
    check_len(shift);
    LaurentPoly out(vars_);
    for (const auto& [e, c] : terms_) {
      Exponent s = e;
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += shift[i];
      out.terms_.emplace_hint(out.terms_.end(), std::move(s), c);
    }
    return out;
  }

  LaurentPoly operator-() const {
    LaurentPoly out(*this);
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_same(b);
    LaurentPoly out(a.vars_);
    const std::size_t n = a.vars_.size();
    Exponent s(n);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < n; ++i) s[i] = ea[i] + eb[i];
        out.add_term(s, ca * cb);
      }
    }
    return out;
  }

  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend LaurentPoly operator*(LaurentPoly a, const Coef& c) {
    if (c == 0) return LaurentPoly(a.vars_);
    for (auto& [e, x] : a.terms_) x *= c;
    return a;
  }
  friend LaurentPoly operator*(const Coef& c, LaurentPoly a) { return std::move(a) * c; }

  /// p^k for k >= 0; negative k only for monomials.
  LaurentPoly pow(long k) const {
    if (k < 0) {
      if (!is_monomial()) throw NotDivisible("negative power of a non-monomial");
      const auto& [e, c] = leading_term();
      Exponent ne(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) ne[i] = static_cast<int>(e[i] * k);
      return monomial(vars_, std::move(ne), clusterbench::pow(c, k));
    }
    LaurentPoly result = constant(vars_, Coef(1));
    LaurentPoly base = *this;
    while (k > 0) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return result;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  /// Adds c·x^e in place, dropping the term if it cancels.
  void add_term(const Exponent& e, const Coef& c) {
    if (c == 0) return;
    check_len(e);
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

 private:
  void check_same(const LaurentPoly& o) const {
    if (!(vars_ == o.vars_)) throw VarSetError("varset mismatch");
  }
  void check_len(const Exponent& e) const {
    if (e.size() != vars_.size()) throw VarSetError("exponent length does not match varset");
  }

  VarSet vars_;
  TermMap terms_;
};

namespace detail {

// Leading-term elimination for polynomials under grlex. Each step strictly
// lowers the leading term of the remainder, so the loop terminates.
inline LaurentPoly polynomial_exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly q(a.vars());
  LaurentPoly::TermMap r = a.terms();
  const auto& [lb_exp, lb_coef] = b.leading_term();
  const std::size_t n = lb_exp.size();
  Exponent shift(n), s(n);
  while (!r.empty()) {
    const auto& [lr_exp, lr_coef] = *r.begin();
    for (std::size_t i = 0; i < n; ++i) {
      if (lr_exp[i] < lb_exp[i]) throw NotDivisible("leading term not divisible");
      shift[i] = lr_exp[i] - lb_exp[i];
    }
    const Coef factor = lr_coef / lb_coef;
    q.add_term(shift, factor);
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t i = 0; i < n; ++i) s[i] = eb[i] + shift[i];
      auto [it, inserted] = r.try_emplace(s, -factor * cb);
      if (!inserted) {
        it->second -= factor * cb;
        if (it->second == 0) r.erase(it);
      }
    }
  }
  return q;
}

inline Exponent negated(Exponent e) {
  for (int& x : e) x = -x;
  return e;
}

}  // namespace detail

/// Returns q with q·b = a in the Laurent ring, or throws NotDivisible.
///
/// Both operands are shifted by monomials so that they become polynomials
/// without monomial content. The Laurent ring is the localization of the
/// polynomial ring at the monomials, so a Laurent quotient exists exactly when
/// the shifted divisor divides the shifted dividend as polynomials.
inline LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
  if (!(a.vars() == b.vars())) throw VarSetError("varset mismatch");
  if (b.is_zero()) throw DivisionByZero("exact_divide by zero");
  if (a.is_zero()) return LaurentPoly(a.vars());
  const Exponent ma = a.min_exponents();
  const Exponent mb = b.min_exponents();
  const LaurentPoly a2 = a.shifted(detail::negated(ma));
  const LaurentPoly b2 = b.shifted(detail::negated(mb));
  Exponent back(ma.size());
  for (std::size_t i = 0; i < back.size(); ++i) back[i] = ma[i] - mb[i];
  return detail::polynomial_exact_divide(a2, b2).shifted(back);
}

/// Exact value at a point given by variable index. Zero is allowed only for
/// variables that never occur with a negative exponent.
inline Coef eval(const LaurentPoly& p, std::span<const Coef> point) {
  if (point.size() != p.vars().size()) throw VarSetError("point dimension does not match varset");
  Coef sum(0);
  for (const auto& [e, c] : p.terms()) {
    Coef t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (e[i] < 0 && point[i] == 0)
        throw EvalDomainError("zero assigned to '" + p.vars().name(i) + "' which has a negative exponent");
      t *= pow(point[i], e[i]);
    }
    sum += t;
  }
  return sum;
}

inline Coef eval(const LaurentPoly& p, const std::map<std::string, Coef>& point) {
  std::vector<Coef> values(p.vars().size(), Coef(0));
  const Exponent lo = p.min_exponents(), hi = p.max_exponents();
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto it = point.find(p.vars().name(i));
    if (it != point.end()) {
      values[i] = it->second;
    } else if (lo[i] != 0 || hi[i] != 0) {
      throw EvalDomainError("no value for '" + p.vars().name(i) + "'");
    }
  }
  return eval(p, std::span<const Coef>(values));
}

/// Drops variables from the varset after evaluating them at 1 (used for
/// frozen specialization).
inline LaurentPoly specialize_to_one(const LaurentPoly& p, const VarSet& target) {
  std::vector<std::optional<std::size_t>> map(p.vars().size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = target.index_of(p.vars().name(i));
  LaurentPoly out(target);
  Exponent s(target.size());
  for (const auto& [e, c] : p.terms()) {
    std::fill(s.begin(), s.end(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (map[i]) s[*map[i]] = e[i];
    out.add_term(s, c);
  }
  return out;
}

/// Re-expresses p over a varset containing all of p's occurring variables.
inline LaurentPoly embed(const LaurentPoly& p, const VarSet& target) {
  const Exponent lo = p.min_exponents(), hi = p.max_exponents();
  for (std::size_t i = 0; i < p.vars().size(); ++i)
    if ((lo[i] != 0 || hi[i] != 0) && !target.index_of(p.vars().name(i)))
      throw VarSetError("variable '" + p.vars().name(i) + "' missing from target varset");
  return specialize_to_one(p, target);
}

// ---------------------------------------------------------------------------
// Text form: terms joined by " + " / " - ", each "c*v1^e1*v2^e2" with the
// coefficient omitted when it is 1 and "^1" omitted.

inline std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Coef mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string factors;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += p.vars().name(i);
      if (e[i] != 1) factors += "^" + std::to_string(e[i]);
    }
    if (factors.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += factors;
    } else {
      out += to_string(mag) + "*" + factors;
    }
  }
  return out;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(const VarSet& vars, std::string_view text) : vars_(vars), s_(text) {}

  LaurentPoly parse() {
    LaurentPoly out(vars_);
    skip_ws();
    if (pos_ == s_.size()) throw ParseError("empty polynomial");
    bool first = true;
    while (true) {
      skip_ws();
      if (pos_ == s_.size()) break;
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [e, c] = term();
      out.add_term(e, sign < 0 ? Coef(-c) : c);
    }
    return out;
  }

 private:
  std::pair<Exponent, Coef> term() {
    Exponent e(vars_.size(), 0);
    Coef c(1);
    bool any = false;
    while (true) {
      skip_ws();
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        c *= number();
      } else if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        auto idx = vars_.index_of(name);
        if (!idx) fail("unknown variable '" + name + "'");
        int power = 1;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          skip_ws();
          power = integer();
        }
        e[*idx] += power;
      } else {
        fail("expected coefficient or variable");
      }
      any = true;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    return {e, c};
  }

  Coef number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      std::size_t d = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (d == pos_) fail("missing denominator");
    }
    return parse_coef(s_.substr(start, pos_ - start));
  }

  int integer() {
    int sign = 1;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      sign = s_[pos_] == '-' ? -1 : 1;
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    return sign * std::stoi(std::string(s_.substr(start, pos_ - start)));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  const VarSet& vars_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline LaurentPoly parse_laurent(const VarSet& vars, std::string_view text) {
  return detail::PolyParser(vars, text).parse();
}

}  // namespace clusterbench
