#pragma once

#include <string>
#include <vector>

#include "clusterbench/laurent.hpp"

namespace clusterbench {

using Matrix = std::vector<std::vector<Coef>>;

enum class Tameness {
  tame,         // built as a word in affine and Jonquiere generators
  nagata,       // non-tame when a is a non-unit of a domain base; tame over a field in two variables
  unknown
};

inline std::string to_string(Tameness t) {
  switch (t) {
    case Tameness::tame: return "tame";
    case Tameness::nagata: return "nagata: non-tame over a domain base with a a non-unit";
    case Tameness::unknown: return "unknown";
  }
  return "?";
}

/// Polynomial endomorphism x_i -> images[i] of base[x_1..x_n].
class PolyEndo {
 public:
  PolyEndo() = default;
  PolyEndo(VarSet vars, std::vector<LaurentPoly> images, Tameness tameness = Tameness::unknown)
      : vars_(std::move(vars)), images_(std::move(images)), tameness_(tameness) {
    if (images_.size() != vars_.size()) throw VarSetError("one image per variable required");
    for (const auto& p : images_) {
      if (!(p.vars() == vars_)) throw VarSetError("image over a different varset");
      if (!p.is_polynomial()) throw Error("image " + to_string(p) + " is not a polynomial");
    }
  }

  static PolyEndo identity(const VarSet& vars) {
    std::vector<LaurentPoly> im;
    for (std::size_t i = 0; i < vars.size(); ++i) im.push_back(LaurentPoly::variable(vars, i));
    return PolyEndo(vars, std::move(im), Tameness::tame);
  }

  const VarSet& vars() const { return vars_; }
  const std::vector<LaurentPoly>& images() const { return images_; }
  const LaurentPoly& image(std::size_t i) const { return images_.at(i); }
  Tameness tameness() const { return tameness_; }

  /// p(images), i.e. p with every x_i replaced by images[i].
  LaurentPoly apply(const LaurentPoly& p) const {
    if (!(p.vars() == vars_)) throw VarSetError("polynomial over a different varset");
    if (!p.is_polynomial()) throw Error("apply needs a polynomial argument");
    std::vector<std::vector<LaurentPoly>> powers(vars_.size());
    auto power = [&](std::size_t i, int e) -> const LaurentPoly& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(LaurentPoly::constant(vars_, Coef(1)));
      while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images_[i]);
      return cache[e];
    };
    LaurentPoly out(vars_);
    for (const auto& [e, c] : p.terms()) {
      LaurentPoly t = LaurentPoly::constant(vars_, c);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0) t *= power(i, e[i]);
      out += t;
    }
    return out;
  }

  std::vector<Coef> eval_at(std::span<const Coef> point) const {
    std::vector<Coef> out;
    for (const auto& p : images_) out.push_back(eval(p, point));
    return out;
  }

  friend bool operator==(const PolyEndo& a, const PolyEndo& b) {
    return a.vars_ == b.vars_ && a.images_ == b.images_;
  }

 private:
  VarSet vars_;
  std::vector<LaurentPoly> images_;
  Tameness tameness_ = Tameness::unknown;
};

/// Point-map composition: compose(f, g)_i = f_i(g_1, .., g_n), so g acts
/// first on points. compose(affine(A1,b1), affine(A2,b2)) = affine(A1 A2, A1 b2 + b1).
inline PolyEndo compose(const PolyEndo& f, const PolyEndo& g) {
  if (!(f.vars() == g.vars())) throw VarSetError("compose needs matching varsets");
  std::vector<LaurentPoly> im;
  for (const auto& fi : f.images()) im.push_back(g.apply(fi));
  for (const auto& p : im)
    if (!p.is_polynomial()) throw InternalError("composition left the polynomial ring");
  const Tameness t = f.tameness() == Tameness::tame && g.tameness() == Tameness::tame ? Tameness::tame
                                                                                     : Tameness::unknown;
  return PolyEndo(f.vars(), std::move(im), t);
}

inline bool is_identity(const PolyEndo& f) {
  for (std::size_t i = 0; i < f.vars().size(); ++i)
    if (!(f.image(i) == LaurentPoly::variable(f.vars(), i))) return false;
  return true;
}

/// True when x_i -> alpha_i x_i + f_i(x_1..x_{i-1}) with alpha_i a nonzero constant.
inline bool is_jonquiere(const PolyEndo& f) {
  const std::size_t n = f.vars().size();
  for (std::size_t i = 0; i < n; ++i) {
    Exponent xi(n, 0);
    xi[i] = 1;
    if (f.image(i).coefficient(xi) == 0) return false;
    for (const auto& [e, c] : f.image(i).terms()) {
      if (e == xi) continue;
      for (std::size_t j = i; j < n; ++j)
        if (e[j] != 0) return false;
    }
  }
  return true;
}

inline PolyEndo jonquiere(const VarSet& vars, const std::vector<Coef>& alphas, const std::vector<LaurentPoly>& fs) {
  const std::size_t n = vars.size();
  if (alphas.size() != n || fs.size() != n) throw VarSetError("need one alpha and one f per variable");
  std::vector<LaurentPoly> im;
  for (std::size_t i = 0; i < n; ++i) {
    if (alphas[i] == 0) throw UnitError("alpha_" + std::to_string(i + 1) + " is zero");
    if (!(fs[i].vars() == vars)) throw VarSetError("f over a different varset");
    for (const auto& [e, c] : fs[i].terms()) {
      for (std::size_t j = i; j < n; ++j)
        if (e[j] != 0)
          throw TriangularityError("f_" + std::to_string(i + 1) + " involves " + vars.name(j));
      for (int x : e)
        if (x < 0) throw Error("f_" + std::to_string(i + 1) + " is not a polynomial");
    }
    im.push_back(LaurentPoly::variable(vars, i) * alphas[i] + fs[i]);
  }
  return PolyEndo(vars, std::move(im), Tameness::tame);
}

/// Inverse of a Jonquiere map, solved one variable at a time.
inline PolyEndo jonquiere_inverse(const PolyEndo& f) {
  if (!is_jonquiere(f)) throw TriangularityError("not a Jonquiere map");
  const VarSet& vars = f.vars();
  const std::size_t n = vars.size();
  // inv_i = (x_i - f_i(inv_1..inv_{i-1})) / alpha_i; f_i only reads earlier slots.
  std::vector<LaurentPoly> inv;
  for (std::size_t i = 0; i < n; ++i) inv.push_back(LaurentPoly::variable(vars, i));
  for (std::size_t i = 0; i < n; ++i) {
    Exponent xi(n, 0);
    xi[i] = 1;
    const Coef alpha = f.image(i).coefficient(xi);
    LaurentPoly rest = f.image(i) - LaurentPoly::monomial(vars, xi, alpha);
    LaurentPoly sub = PolyEndo(vars, inv).apply(rest);
    inv[i] = (LaurentPoly::variable(vars, i) - sub) * Coef(1 / alpha);
  }
  PolyEndo g(vars, std::move(inv), Tameness::tame);
  if (!is_identity(compose(f, g)) || !is_identity(compose(g, f))) throw InternalError("Jonquiere inverse failed");
  return g;
}

/// Inverse over Q; UnitError when singular.
inline Matrix matrix_inverse(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix m = a;
  Matrix inv(n, std::vector<Coef>(n, Coef(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw Error("matrix is not square");
    inv[i][i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw UnitError("matrix is singular");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const Coef p = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Coef f = m[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline Matrix matrix_multiply(const Matrix& a, const Matrix& b) {
  Matrix c(a.size(), std::vector<Coef>(b.empty() ? 0 : b[0].size(), Coef(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline std::vector<Coef> matrix_apply(const Matrix& a, const std::vector<Coef>& v) {
  std::vector<Coef> out(a.size(), Coef(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

/// x -> A x + b.
inline PolyEndo affine(const VarSet& vars, const Matrix& a, const std::vector<Coef>& b) {
  const std::size_t n = vars.size();
  if (a.size() != n || b.size() != n) throw VarSetError("affine data does not match the varset");
  matrix_inverse(a);  // throws UnitError when singular
  std::vector<LaurentPoly> im;
  for (std::size_t i = 0; i < n; ++i) {
    LaurentPoly p = LaurentPoly::constant(vars, b[i]);
    for (std::size_t j = 0; j < n; ++j) p += LaurentPoly::variable(vars, j) * a[i][j];
    im.push_back(std::move(p));
  }
  return PolyEndo(vars, std::move(im), Tameness::tame);
}

/// x -> A^-1 (x - b).
inline PolyEndo affine_inverse(const VarSet& vars, const Matrix& a, const std::vector<Coef>& b) {
  const Matrix ai = matrix_inverse(a);
  std::vector<Coef> c = matrix_apply(ai, b);
  for (auto& x : c) x = -x;
  return affine(vars, ai, c);
}

namespace detail {

inline VarSet nagata_vars(const std::vector<std::string>& extra) {
  std::vector<std::string> names{"X", "Y"};
  names.insert(names.end(), extra.begin(), extra.end());
  return VarSet(names);
}

/// X -> X + s a D, Y -> Y + 2 s X D + a D^2 with D = aY - X^2; extra variables fixed.
inline PolyEndo nagata_signed(const Coef& a, int s, const std::vector<std::string>& extra) {
  if (a == 0) throw UnitError("Nagata parameter must be nonzero");
  const VarSet vars = nagata_vars(extra);
  const LaurentPoly x = LaurentPoly::variable(vars, std::size_t{0});
  const LaurentPoly y = LaurentPoly::variable(vars, std::size_t{1});
  const LaurentPoly d = y * a - x * x;
  std::vector<LaurentPoly> im{x + d * Coef(s * a), y + x * d * Coef(2 * s) + d * d * a};
  for (std::size_t i = 2; i < vars.size(); ++i) im.push_back(LaurentPoly::variable(vars, i));
  return PolyEndo(vars, std::move(im), Tameness::nagata);
}

}  // namespace detail

/// The Nagata automorphism on {X, Y} plus fixed extra generators.
inline PolyEndo nagata(const Coef& a, const std::vector<std::string>& extra = {}) {
  return detail::nagata_signed(a, 1, extra);
}

/// Self-checking inverse: X -> X - a D, Y -> Y - 2 X D + a D^2.
inline PolyEndo nagata_inverse(const Coef& a, const std::vector<std::string>& extra = {}) {
  PolyEndo inv = detail::nagata_signed(a, -1, extra);
  const PolyEndo fwd = nagata(a, extra);
  if (!is_identity(compose(fwd, inv)) || !is_identity(compose(inv, fwd)))
    throw InternalError("Nagata inverse failed to verify");
  return inv;
}

/// D = aY - X^2 over the Nagata varset.
inline LaurentPoly nagata_delta(const Coef& a, const std::vector<std::string>& extra = {}) {
  const VarSet vars = detail::nagata_vars(extra);
  const LaurentPoly x = LaurentPoly::variable(vars, std::size_t{0});
  return LaurentPoly::variable(vars, std::size_t{1}) * a - x * x;
}

/// 0/1 matrices of size n whose rational inverse has natural-number entries.
inline std::vector<Matrix> natural_inverse_01_matrices(int n) {
  if (n < 1 || n > 4) throw Error("exhaustive search supports 1 <= n <= 4");
  std::vector<Matrix> out;
  const unsigned cells = static_cast<unsigned>(n * n);
  for (unsigned long mask = 0; mask < (1UL << cells); ++mask) {
    Matrix m(n, std::vector<Coef>(n, Coef(0)));
    for (unsigned c = 0; c < cells; ++c)
      if (mask >> c & 1UL) m[c / n][c % n] = 1;
    Matrix inv;
    try {
      inv = matrix_inverse(m);
    } catch (const UnitError&) {
      continue;
    }
    bool natural = true;
    for (const auto& row : inv)
      for (const auto& x : row)
        if (x < 0 || !is_integer(x)) natural = false;
    if (natural) out.push_back(std::move(m));
  }
  return out;
}

inline bool is_permutation_matrix(const Matrix& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    int row = 0, col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j] != 0 && m[i][j] != 1) return false;
      row += m[i][j] == 1;
      col += m[j][i] == 1;
    }
    if (row != 1 || col != 1) return false;
  }
  return true;
}

}  // namespace clusterbench
