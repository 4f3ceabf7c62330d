#pragma once

// Lie conformal axioms and the quadratic λ-bracket of a GD-superalgebra:
//   [a λ b] = [a,b] + (-1)^{|a||b|} (∂+λ)(b∘a) + λ(a∘b).
// Skew-symmetry is taken in the anti-symmetric form
//   [x λ y] = -(-1)^{|x||y|} [y_{-∂-λ} x].

#include "gdconf/confalg/lambda.hpp"
#include "gdconf/gdcore/axioms.hpp"

namespace gdconf::confalg {

using gdcore::koszul;
using gdcore::SuperAlgebra;

namespace detail {

inline VecPoly constant_vec(const gdcore::Vec& v) {
  VecPoly out = zero(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = cst(v[k]);
  return out;
}

}  // namespace detail

/// The formula alone, for any two-product structure (no axiom check).
inline LambdaBracketTable quadratic_table(const SuperAlgebra& A) {
  const auto n = A.dim();
  LambdaBracketTable T(A.basis);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      int s = koszul(A.basis.parity(a), A.basis.parity(b));
      VecPoly e = detail::constant_vec(A.bracket_or_throw().entry(a, b));
      e += Rational(s) * (D() + Lam()) * detail::constant_vec(A.circ_or_throw().entry(b, a));
      e += Lam() * detail::constant_vec(A.circ->entry(a, b));
      T.at(a, b) = e;
    }
  return T;
}

inline LambdaBracketTable quadratic_bracket(const SuperAlgebra& A) {
  auto rep = gdcore::check_gd(A);
  if (!rep.passed())
    throw gdcore::AlgebraError("quadratic_bracket: '" + A.name + "' is not a GD-superalgebra (" +
                               rep.violations.front().axiom + ")");
  return quadratic_table(A);
}

/// [f(∂)x λ g(∂)y] = f(-λ) g(∂+λ) [x λ y].
inline VecPoly bracket_eval(const LambdaBracketTable& T, const FormalPoly& f, const std::string& x,
                            const FormalPoly& g, const std::string& y) {
  auto i = T.basis.find(x), j = T.basis.find(y);
  if (!i || !j) throw gdcore::AlgebraError("bracket_eval: unknown generator '" + (i ? y : x) + "'");
  return T.bracket(f * gen(T.rank(), *i), g * gen(T.rank(), *j), Lam());
}

/// Residual of skew-symmetry for an operation table: T(i,j) - sign * T(j,i)|_{λ := -∂-λ}.
inline VecPoly skew_residual(const SesquiTable& T, std::size_t i, std::size_t j, int sign) {
  return T.at(i, j) - Rational(sign) * poly_substitute(T.at(j, i), "lambda", -D() - Lam());
}

inline AxiomReport check_skew(const LambdaBracketTable& T, const Window* w = nullptr) {
  AxiomReport rep;
  for (std::size_t i = 0; i < T.rank(); ++i)
    for (std::size_t j = i; j < T.rank(); ++j) {
      if (w && !detail::admits(w, detail::grade(w->left, i) + detail::grade(w->left, j))) continue;
      auto r = skew_residual(T.table, i, j, -koszul(T.basis.parity(i), T.basis.parity(j)));
      if (!r.is_zero()) rep.add("conformal.skew", detail::labels(T.basis, {i, j}), T.render(r));
    }
  return rep;
}

/// [x λ [y μ z]] - (-1)^{|x||y|} [y μ [x λ z]] - [[x λ y]_{λ+μ} z], expanded in k[∂,λ,μ].
inline VecPoly jacobi_residual(const LambdaBracketTable& T, std::size_t i, std::size_t j, std::size_t k) {
  const auto n = T.rank();
  auto x = gen(n, i), y = gen(n, j), z = gen(n, k);
  auto lhs1 = T.bracket(x, T.bracket(y, z, Mu()), Lam());
  auto lhs2 = T.bracket(y, T.bracket(x, z, Lam()), Mu());
  auto rhs = T.bracket(T.bracket(x, y, Lam()), z, Lam() + Mu());
  return lhs1 - Rational(koszul(T.basis.parity(i), T.basis.parity(j))) * lhs2 - rhs;
}

inline AxiomReport check_conformal_jacobi(const LambdaBracketTable& T, const Window* w = nullptr) {
  AxiomReport rep;
  const auto n = T.rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (w && !detail::admits(w, detail::grade(w->left, i) + detail::grade(w->left, j) + detail::grade(w->left, k)))
          continue;
        auto r = jacobi_residual(T, i, j, k);
        if (!r.is_zero()) rep.add("conformal.jacobi", detail::labels(T.basis, {i, j, k}), T.render(r));
      }
  return rep;
}

/// Reads GD data back from a table linear in ∂ and λ:
/// a∘b = (-1)^{|a||b|} (∂-coefficient of [b λ a]), [a,b] = constant term of [a λ b].
/// Throws when the table is not of the quadratic shape.
inline SuperAlgebra gd_from_quadratic(const LambdaBracketTable& T, std::string name = "from-table") {
  const auto n = T.rank();
  SuperAlgebra A = gdcore::make_algebra(std::move(name), T.basis);
  A.circ = gdcore::StructureTensor(n);
  A.bracket = gdcore::StructureTensor(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      int s = koszul(T.basis.parity(a), T.basis.parity(b));
      for (std::size_t k = 0; k < n; ++k) {
        const auto& p = T.at(b, a)[k];
        for (const auto& [e, c] : p.terms())
          if (e[0] + e[1] + e[2] > 1 || e[2] > 0)
            throw gdcore::AlgebraError("gd_from_quadratic: entry is not linear in d and lambda");
        A.circ->at(a, b, k) = Rational(s) * p.coefficient({1, 0, 0, 0});
        A.bracket->at(a, b, k) = T.at(a, b)[k].coefficient({0, 0, 0, 0});
      }
    }
  return A;
}

}  // namespace gdconf::confalg
