#pragma once

// Poisson conformal superalgebras: a λ-bracket [· λ ·] and a commutative
// associative conformal product (· λ ·) tied by the conformal Leibniz rule
//   [a λ (b μ c)] = ([a λ b]_{λ+μ} c) + (-1)^{|a||b|} (b μ [a λ c]).

#include "gdconf/confalg/quadratic.hpp"

namespace gdconf::confalg {

struct PoissonConformal {
  SuperBasis basis;
  LambdaBracketTable lie;
  LambdaBracketTable assoc;
  std::optional<Window> window;

  PoissonConformal() = default;
  explicit PoissonConformal(SuperBasis b) : basis(b), lie(b), assoc(b) {}
  std::size_t rank() const { return basis.size(); }
};

using CocycleTable = SesquiTable;

inline AxiomReport check_poisson_conformal(const PoissonConformal& P) {
  const Window* w = P.window ? &*P.window : nullptr;
  auto g = [&](std::size_t i) { return w ? detail::grade(w->left, i) : 0; };
  AxiomReport rep = check_skew(P.lie, w);
  rep.merge(check_conformal_jacobi(P.lie, w));
  const auto n = P.rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!detail::admits(w, g(i) + g(j))) continue;
      // (a λ b) = (-1)^{|a||b|} (b_{-∂-λ} a)
      auto r = skew_residual(P.assoc.table, i, j, koszul(P.basis.parity(i), P.basis.parity(j)));
      if (!r.is_zero())
        rep.add("poisson_conformal.commutativity", detail::labels(P.basis, {i, j}), P.assoc.render(r));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (!detail::admits(w, g(i) + g(j) + g(k))) continue;
        auto a = gen(n, i), b = gen(n, j), c = gen(n, k);
        auto assoc = P.assoc.bracket(a, P.assoc.bracket(b, c, Mu()), Lam()) -
                     P.assoc.bracket(P.assoc.bracket(a, b, Lam()), c, Lam() + Mu());
        if (!assoc.is_zero())
          rep.add("poisson_conformal.associativity", detail::labels(P.basis, {i, j, k}), P.assoc.render(assoc));
        auto leib = P.lie.bracket(a, P.assoc.bracket(b, c, Mu()), Lam()) -
                    P.assoc.bracket(P.lie.bracket(a, b, Lam()), c, Lam() + Mu()) -
                    Rational(koszul(P.basis.parity(i), P.basis.parity(j))) *
                        P.assoc.bracket(b, P.lie.bracket(a, c, Lam()), Mu());
        if (!leib.is_zero())
          rep.add("poisson_conformal.leibniz", detail::labels(P.basis, {i, j, k}), P.assoc.render(leib));
      }
  return rep;
}

/// Current algebra: (a λ b) = ab, [a λ b] = {a,b}.
inline PoissonConformal build_current_poisson(const SuperAlgebra& p) {
  auto rep = gdcore::check_poisson_super(p);
  if (!rep.passed())
    throw gdcore::AlgebraError("build_current_poisson: '" + p.name + "' is not Poisson (" +
                               rep.violations.front().axiom + ")");
  PoissonConformal P(p.basis);
  for (std::size_t a = 0; a < p.dim(); ++a)
    for (std::size_t b = 0; b < p.dim(); ++b) {
      P.assoc.at(a, b) = detail::constant_vec(p.circ->entry(a, b));
      P.lie.at(a, b) = detail::constant_vec(p.bracket->entry(a, b));
    }
  return P;
}

/// (a λ b) = ab, [a λ b] = {a,b} + ∂ d(a)b + λ d(ab).
inline PoissonConformal build_Lpd(const SuperAlgebra& p, const gdcore::LinearMap& d) {
  auto rep = gdcore::check_poisson_super(p);
  rep.merge(gdcore::check_derivation(p, d));
  if (!rep.passed())
    throw gdcore::AlgebraError("build_Lpd: invalid Poisson data or derivation (" + rep.violations.front().axiom + ")");
  PoissonConformal P(p.basis);
  for (std::size_t a = 0; a < p.dim(); ++a)
    for (std::size_t b = 0; b < p.dim(); ++b) {
      auto ab = p.circ->entry(a, b);
      P.assoc.at(a, b) = detail::constant_vec(ab);
      VecPoly e = detail::constant_vec(p.bracket->entry(a, b));
      e += D() * detail::constant_vec(p.circ->apply(d[a], p.unit(b)));
      e += Lam() * detail::constant_vec(gdcore::apply_map(d, ab));
      P.lie.at(a, b) = e;
    }
  return P;
}

/// gr Cend_{1,x} on x^1..x^cap: (x^n λ x^m) = x^{n+m}, [x^n λ x^m] = (n∂ + (n+m)λ) x^{n+m-1},
/// truncated above cap. Checks run on tuples of total degree ≤ cap.
inline PoissonConformal gr_cend(int cap) {
  if (cap < 1) throw std::invalid_argument("gr_cend: cap must be positive");
  std::vector<std::string> names;
  for (int n = 1; n <= cap; ++n) names.push_back("x^" + std::to_string(n));
  PoissonConformal P(SuperBasis(names, std::vector<Parity>(cap, Parity::even)));
  const auto N = std::size_t(cap);
  for (int n = 1; n <= cap; ++n)
    for (int m = 1; m <= cap; ++m) {
      if (n + m <= cap) P.assoc.at(n - 1, m - 1) = gen(N, n + m - 1);
      if (n + m - 1 <= cap)
        P.lie.at(n - 1, m - 1) = (Rational(n) * D() + Rational(n + m) * Lam()) * gen(N, n + m - 2);
    }
  Window w;
  for (int n = 1; n <= cap; ++n) w.left.push_back(n);
  w.right = w.left;
  w.cap = cap;
  P.window = w;
  return P;
}

/// The bracket restricted to a subset of generators; components outside the
/// subset are dropped (callers check closure first).
inline LambdaBracketTable restrict_table(const LambdaBracketTable& T, const std::vector<std::size_t>& gens) {
  std::vector<std::string> names;
  std::vector<Parity> par;
  for (auto g : gens) {
    names.push_back(T.basis.name(g));
    par.push_back(T.basis.parity(g));
  }
  LambdaBracketTable S{SuperBasis(names, par)};
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = 0; b < gens.size(); ++b)
      for (std::size_t k = 0; k < gens.size(); ++k) S.at(a, b)[k] = T.at(gens[a], gens[b])[gens[k]];
  return S;
}

namespace detail {

inline Window sub_window(const PoissonConformal& P, const std::vector<std::size_t>& gens) {
  Window w = *P.window;
  w.left.clear();
  for (auto g : gens) w.left.push_back(grade(P.window->left, g));
  return w;
}

inline void check_closure(const PoissonConformal& P, const std::vector<std::size_t>& gens) {
  for (auto a : gens)
    for (auto b : gens) {
      if (P.window && grade(P.window->left, a) + grade(P.window->left, b) > P.window->cap) continue;
      const auto& e = P.lie.at(a, b);
      for (std::size_t k = 0; k < P.rank(); ++k)
        if (!e[k].is_zero() && std::find(gens.begin(), gens.end(), k) == gens.end())
          throw gdcore::AlgebraError("twisted_rep: [" + P.basis.name(a) + " λ " + P.basis.name(b) +
                                     "] leaves the chosen subalgebra");
    }
}

inline ReprTable sub_rep(const PoissonConformal& P, const std::vector<std::size_t>& gens) {
  check_closure(P, gens);
  auto L = restrict_table(P.lie, gens);
  ReprTable r(L.basis, P.basis);
  if (P.window) r.window = sub_window(P, gens);
  return r;
}

}  // namespace detail

/// L acting on P by the bracket: ρ_λ(a, x) = [a λ x].
inline ReprTable adjoint_rep(const PoissonConformal& P, const std::vector<std::size_t>& gens) {
  auto r = detail::sub_rep(P, gens);
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t x = 0; x < P.rank(); ++x) r.at(a, x) = P.lie.at(gens[a], x);
  return r;
}

/// ρ̂_λ(a, x) = [a λ x] + λ (a λ x).
inline ReprTable twisted_rep(const PoissonConformal& P, const std::vector<std::size_t>& gens) {
  auto r = detail::sub_rep(P, gens);
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t x = 0; x < P.rank(); ++x) r.at(a, x) = P.lie.at(gens[a], x) + Lam() * P.assoc.at(gens[a], x);
  return r;
}

/// φ_λ(a, x) = λ (a λ x).
inline CocycleTable poisson_cocycle(const PoissonConformal& P, const std::vector<std::size_t>& gens) {
  CocycleTable phi(gens.size(), P.rank(), P.rank());
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t x = 0; x < P.rank(); ++x) phi.at(a, x) = Lam() * P.assoc.at(gens[a], x);
  return phi;
}

/// φ_{λ+μ}([a λ b], x) = φ_λ(a, ρ_μ(b,x)) + ρ_λ(a, φ_μ(b,x))
///                       - (-1)^{|a||b|} φ_μ(b, ρ_λ(a,x)) - (-1)^{|a||b|} ρ_μ(b, φ_λ(a,x)).
inline AxiomReport check_cocycle(const LambdaBracketTable& L, const ReprTable& rho, const CocycleTable& phi) {
  const Window* w = rho.window ? &*rho.window : nullptr;
  AxiomReport rep;
  const auto n = L.rank(), m = rho.module.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        if (w && !detail::admits(w, detail::grade(w->left, i) + detail::grade(w->left, j) + detail::grade(w->right, k)))
          continue;
        auto a = gen(n, i), b = gen(n, j), x = gen(m, k);
        Rational s = koszul(L.basis.parity(i), L.basis.parity(j));
        auto lhs = apply(phi, L.bracket(a, b, Lam()), x, Lam() + Mu());
        auto rhs = apply(phi, a, rho.act(b, x, Mu()), Lam()) + rho.act(a, apply(phi, b, x, Mu()), Lam()) -
                   s * apply(phi, b, rho.act(a, x, Lam()), Mu()) - s * rho.act(b, apply(phi, a, x, Lam()), Mu());
        auto r = lhs - rhs;
        if (!r.is_zero())
          rep.add("cocycle", {L.basis.name(i), L.basis.name(j), rho.module.name(k)}, rho.render(r));
      }
  return rep;
}

}  // namespace gdconf::confalg
