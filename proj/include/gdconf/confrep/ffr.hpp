#pragma once

// The finite faithful module H ⊗ (U_{-1} ⊕ U_0/N) of L(V) for a special
// GD-superalgebra V, with
//   ρ̂_λ(a,u) = {a,u} + ∂ d(a)u + λ(d(au) + au).
// A class u ∈ U_0/N is stored as the map φ_u : b ↦ b·u from V to U_{-1} ≅ V;
// N is exactly the common kernel of these maps. In terms of φ:
//   φ_{{a,u}}(b) = (-1)^{|a||b|}([a, φ_u(b)] - φ_u([a,b]))
//   φ_{d(a)u}(b) = φ_u(b∘a)
//   φ_{d(au)}(b) = b∘φ_u(a)
// and the U_{-1} part of ρ̂_λ(a,u) is λ φ_u(a).

#include "gdconf/confalg/quadratic.hpp"
#include "gdconf/confrep/module.hpp"
#include "gdconf/envelope/envelope.hpp"

namespace gdconf::confrep {

using gdcore::Parity;
using gdcore::SuperAlgebra;
using gdcore::Vec;

struct FfrModule {
  std::vector<std::string> umin1_basis;
  std::vector<std::string> u0q_basis;
  std::vector<Parity> u0q_parity;
  std::vector<Vec> maps;  // φ for each U_0/N basis element, column-major n×n (entry b*n+k = φ(e_b)_k)
  ReprTable action;
  std::size_t u0_window_dim = 0;  // dim of U_0 inside the window
  std::size_t u0_unused = 0;      // U_0 basis monomials whose products leave the window
  std::size_t closure_added = 0;  // classes found only by closing under the action
  std::size_t overflow = 0;       // ideal relations skipped at the window edge

  std::size_t rank() const { return umin1_basis.size() + u0q_basis.size(); }
};

namespace detail {

class MapSpace {
 public:
  explicit MapSpace(std::size_t n) : n_(n) {}

  /// Adds φ unless it is already in the span.
  bool add(const Vec& phi, Parity p, std::string label) {
    if (in_span(phi)) return false;
    basis_.push_back(phi);
    parity_.push_back(p);
    labels_.push_back(std::move(label));
    return true;
  }

  bool in_span(const Vec& phi) const {
    if (gdcore::is_zero_vec(phi)) return true;
    return coords(phi).has_value();
  }

  /// Coordinates of φ in the basis, if it lies in the span.
  std::optional<Vec> coords(const Vec& phi) const {
    const auto k = basis_.size();
    if (k == 0) return gdcore::is_zero_vec(phi) ? std::optional<Vec>(Vec{}) : std::nullopt;
    std::vector<exactpoly::RationalVector> rows(phi.size(), exactpoly::RationalVector(k + 1, Rational(0)));
    for (std::size_t r = 0; r < phi.size(); ++r) {
      for (std::size_t i = 0; i < k; ++i) rows[r][i] = basis_[i][r];
      rows[r][k] = -phi[r];
    }
    for (const auto& v : exactpoly::kernel(rows, k + 1)) {
      if (sgn(v[k]) == 0) continue;
      Vec c(k);
      for (std::size_t i = 0; i < k; ++i) c[i] = v[i] / v[k];
      return c;
    }
    return std::nullopt;
  }

  std::size_t size() const { return basis_.size(); }
  const Vec& at(std::size_t i) const { return basis_[i]; }
  Parity parity(std::size_t i) const { return parity_[i]; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  Vec apply(const Vec& phi, const Vec& b) const {
    Vec out(n_, Rational(0));
    for (std::size_t i = 0; i < n_; ++i)
      if (sgn(b[i]) != 0)
        for (std::size_t k = 0; k < n_; ++k) out[k] += b[i] * phi[i * n_ + k];
    return out;
  }

 private:
  std::size_t n_;
  std::vector<Vec> basis_;
  std::vector<Parity> parity_;
  std::vector<std::string> labels_;
};

struct Ops {
  const SuperAlgebra& V;
  std::size_t n;

  Vec e(std::size_t i) const { return V.unit(i); }
  Vec br(const Vec& a, const Vec& b) const { return V.bracket->apply(a, b); }
  Vec circ(const Vec& a, const Vec& b) const { return V.circ->apply(a, b); }

  template <class F>
  Vec tabulate(F&& f) const {
    Vec out(n * n, Rational(0));
    for (std::size_t b = 0; b < n; ++b) {
      auto col = f(b);
      for (std::size_t k = 0; k < n; ++k) out[b * n + k] = col[k];
    }
    return out;
  }

  // φ_{{a,u}}
  Vec bracket_op(const MapSpace& W, std::size_t a, const Vec& phi) const {
    return tabulate([&](std::size_t b) {
      Rational s = gdcore::koszul(V.basis.parity(a), V.basis.parity(b));
      auto v = gdcore::add(br(e(a), W.apply(phi, e(b))), W.apply(phi, br(e(a), e(b))), -1);
      for (auto& q : v) q *= s;
      return v;
    });
  }
  // φ_{d(a)u}
  Vec shift_op(const MapSpace& W, std::size_t a, const Vec& phi) const {
    return tabulate([&](std::size_t b) { return W.apply(phi, circ(e(b), e(a))); });
  }
  // φ_{d(au)}
  Vec d_op(const MapSpace& W, std::size_t a, const Vec& phi) const {
    return tabulate([&](std::size_t b) { return circ(e(b), W.apply(phi, e(a))); });
  }
};

}  // namespace detail

inline FfrModule build_ffr(const SuperAlgebra& V, const envelope::Truncation& T) {
  using envelope::EnvElement;
  auto P = envelope::build_pd_envelope(V, T);
  if (!P.umin1_is_v())
    throw gdcore::AlgebraError("build_ffr: U_{-1} has dimension " + std::to_string(P.umin1().quotient_dim()) +
                               " in this window and is not yet V; enlarge the truncation");
  const auto n = V.dim();
  const auto& F = P.algebra();
  FfrModule out;
  out.u0_window_dim = P.u0().quotient_dim();
  out.overflow = P.ideal().overflow();
  detail::MapSpace W(n);
  detail::Ops ops{V, n};

  // φ_u for the window's U_0 classes, low degree first so 1 labels its class
  const auto& q = P.u0().quotient_basis;
  for (auto it = q.rbegin(); it != q.rend(); ++it) {
    const auto& u = *it;
    Vec phi(n * n, Rational(0));
    bool ok = true;
    for (std::size_t b = 0; b < n && ok; ++b) {
      auto prod = P.multiply(b, u);
      if (!prod) {
        ok = false;
        break;
      }
      auto c = P.coordinates(*prod);
      for (std::size_t k = 0; k < n; ++k) phi[b * n + k] = c[k];
    }
    if (!ok) {
      ++out.u0_unused;
      continue;
    }
    W.add(phi, F.parity(u), F.label(u));
  }
  // close under the action
  for (std::size_t i = 0; i < W.size(); ++i)
    for (std::size_t a = 0; a < n; ++a) {
      Parity p = W.parity(i) + V.basis.parity(a);
      for (const auto& phi : {ops.bracket_op(W, a, W.at(i)), ops.shift_op(W, a, W.at(i)), ops.d_op(W, a, W.at(i))})
        if (W.add(phi, p, "w" + std::to_string(W.size() + 1))) ++out.closure_added;
    }

  // module basis: V, then U_0/N
  std::vector<std::string> names = V.basis.names();
  std::vector<Parity> parities = V.basis.parities();
  for (std::size_t i = 0; i < W.size(); ++i) {
    std::string l = W.label(i);
    while (std::find(names.begin(), names.end(), l) != names.end()) l = "[" + l + "]";
    names.push_back(l);
    parities.push_back(W.parity(i));
    out.u0q_basis.push_back(l);
    out.u0q_parity.push_back(W.parity(i));
    out.maps.push_back(W.at(i));
  }
  out.umin1_basis = V.basis.names();
  out.action = ReprTable(V.basis, gdcore::SuperBasis(names, parities, false));
  using confalg::cst;
  using confalg::D;
  using confalg::Lam;

  // U_{-1} block from the envelope: {a,v} + ∂ d(a)v + λ d(av)
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t v = 0; v < n; ++v) {
      auto xa = F.gen(a), xv = F.gen(v);
      auto c0 = P.coordinates(P.umin1().normal_form(F.bracket(xa, xv)));
      auto c1 = P.coordinates(P.umin1().normal_form(F.mul(F.d(xa), xv)));
      auto c2 = P.coordinates(P.umin1().normal_form(F.d(F.mul(xa, xv))));
      auto& entry = out.action.at(a, v);
      for (std::size_t k = 0; k < n; ++k) entry[k] = cst(c0[k]) + D() * cst(c1[k]) + Lam() * cst(c2[k]);
    }
  // U_0/N block
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < W.size(); ++i) {
      auto& entry = out.action.at(a, n + i);
      auto au = W.apply(W.at(i), V.unit(a));
      for (std::size_t k = 0; k < n; ++k) entry[k] = Lam() * cst(au[k]);
      auto c0 = W.coords(ops.bracket_op(W, a, W.at(i)));
      auto c1 = W.coords(ops.shift_op(W, a, W.at(i)));
      auto c2 = W.coords(ops.d_op(W, a, W.at(i)));
      if (!c0 || !c1 || !c2) throw std::logic_error("build_ffr: U_0/N is not closed under the action");
      for (std::size_t j = 0; j < W.size(); ++j)
        entry[n + j] = cst((*c0)[j]) + D() * cst((*c1)[j]) + Lam() * cst((*c2)[j]);
    }

  auto L = confalg::quadratic_bracket(V);
  auto rep = check_module(L, out.action);
  if (!rep.passed()) {
    const auto& v = rep.violations.front();
    throw gdcore::AlgebraError("build_ffr: module axiom fails (" + v.axiom + "): " +
                               (out.overflow ? "relation used beyond window" : "genuine inconsistency"));
  }
  return out;
}

}  // namespace gdconf::confrep
