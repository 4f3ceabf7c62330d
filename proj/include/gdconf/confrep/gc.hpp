#pragma once

// gc_{n|m} as matrices over k[∂, x] with
//   [A λ B] = A(x) B(x+λ) - (-1)^{|A||B|} B(x) A(x-∂-λ)
// for ∂-free A, B, extended sesquilinearly.

#include "gdconf/confalg/lambda.hpp"

namespace gdconf::confrep {

using exactpoly::FormalPoly;
using exactpoly::Rational;
using exactpoly::VarSet;
using gdcore::AxiomReport;
using gdcore::Parity;

inline const VarSet& gc_vars() {
  static const VarSet v{"d", "lambda", "mu", "x"};
  return v;
}

class GcElement {
 public:
  GcElement() = default;
  GcElement(std::size_t n, std::size_t m, Parity parity)
      : n_(n), m_(m), parity_(parity), entries_((n + m) * (n + m), FormalPoly(gc_vars())) {}

  /// x^k E_{ij}
  static GcElement unit(std::size_t n, std::size_t m, std::size_t i, std::size_t j, unsigned k) {
    GcElement e(n, m, block_parity(n, i, j));
    e.at(i, j) = FormalPoly::variable(gc_vars(), "x", k);
    return e;
  }

  static Parity block_parity(std::size_t n, std::size_t i, std::size_t j) {
    return (i < n) == (j < n) ? Parity::even : Parity::odd;
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::size_t size() const { return n_ + m_; }
  Parity parity() const { return parity_; }
  const FormalPoly& at(std::size_t i, std::size_t j) const { return entries_.at(i * size() + j); }
  FormalPoly& at(std::size_t i, std::size_t j) { return entries_.at(i * size() + j); }

  bool is_zero() const {
    for (const auto& p : entries_)
      if (!p.is_zero()) return false;
    return true;
  }

  /// Throws unless every nonzero entry sits in a block of the declared parity.
  void validate() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (!at(i, j).is_zero() && block_parity(n_, i, j) != parity_)
          throw gdcore::AlgebraError("gc element has an entry outside its parity blocks");
  }

  GcElement& operator+=(const GcElement& o) {
    require(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
  }
  GcElement& operator-=(const GcElement& o) {
    require(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
  }
  friend GcElement operator+(GcElement a, const GcElement& b) { return a += b; }
  friend GcElement operator-(GcElement a, const GcElement& b) { return a -= b; }
  friend GcElement operator*(const FormalPoly& s, GcElement a) {
    for (auto& e : a.entries_)
      if (!e.is_zero()) e = s * e;
    return a;
  }
  friend bool operator==(const GcElement&, const GcElement&) = default;

  /// Plain matrix product; the parity is the sum.
  friend GcElement operator*(const GcElement& a, const GcElement& b) {
    a.require_size(b);
    GcElement out(a.n_, a.m_, a.parity_ + b.parity_);
    const auto N = a.size();
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        if (a.at(i, j).is_zero()) continue;
        for (std::size_t k = 0; k < N; ++k)
          if (!b.at(j, k).is_zero()) out.at(i, k) += a.at(i, j) * b.at(j, k);
      }
    return out;
  }

  GcElement substitute(std::string_view var, const FormalPoly& expr) const {
    GcElement out = *this;
    for (auto& e : out.entries_)
      if (!e.is_zero()) e = poly_substitute(e, var, expr);
    return out;
  }

  /// Coefficient of ∂^k.
  GcElement d_coefficient(unsigned k) const {
    GcElement out = *this;
    for (auto& e : out.entries_) e = e.coefficient_of("d", k);
    return out;
  }
  int d_degree() const {
    int deg = -1;
    for (const auto& e : entries_) deg = std::max(deg, e.degree("d"));
    return deg;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < size(); ++i) {
      out += i ? "; " : "";
      for (std::size_t j = 0; j < size(); ++j) out += (j ? ", " : "") + at(i, j).to_string();
    }
    return out + "]";
  }

 private:
  void require(const GcElement& o) const {
    require_size(o);
    if (parity_ != o.parity_) throw gdcore::AlgebraError("gc: adding elements of different parity");
  }
  void require_size(const GcElement& o) const {
    if (n_ != o.n_ || m_ != o.m_) throw gdcore::AlgebraError("gc: size mismatch");
  }

  std::size_t n_ = 0, m_ = 0;
  Parity parity_ = Parity::even;
  std::vector<FormalPoly> entries_;
};

namespace detail {

inline FormalPoly gv(std::string_view name) { return FormalPoly::variable(gc_vars(), name); }

// [A ν B] for ∂-free A, B
inline GcElement gc_bracket_plain(const GcElement& A, const GcElement& B, const FormalPoly& nu) {
  int s = gdcore::koszul(A.parity(), B.parity());
  auto first = A * B.substitute("x", gv("x") + nu);
  auto second = B * A.substitute("x", gv("x") - gv("d") - nu);
  for (std::size_t i = 0; i < first.size(); ++i)
    for (std::size_t j = 0; j < first.size(); ++j) first.at(i, j) -= Rational(s) * second.at(i, j);
  return first;
}

}  // namespace detail

/// [A ν B] with ∂-dependent entries: [∂^a A ν ∂^b B] = (-ν)^a (∂+ν)^b [A ν B].
inline GcElement gc_bracket(const GcElement& A, const GcElement& B, const FormalPoly& nu) {
  if (A.n() != B.n() || A.m() != B.m()) throw gdcore::AlgebraError("gc_bracket: size mismatch");
  A.validate();
  B.validate();
  GcElement out(A.n(), A.m(), A.parity() + B.parity());
  for (int a = 0; a <= A.d_degree(); ++a) {
    auto Aa = A.d_coefficient(a);
    if (Aa.is_zero()) continue;
    for (int b = 0; b <= B.d_degree(); ++b) {
      auto Bb = B.d_coefficient(b);
      if (Bb.is_zero()) continue;
      auto coeff = (-nu).pow(a) * (detail::gv("d") + nu).pow(b);
      out += coeff * detail::gc_bracket_plain(Aa, Bb, nu);
    }
  }
  return out;
}

inline GcElement gc_bracket(const GcElement& A, const GcElement& B) { return gc_bracket(A, B, detail::gv("lambda")); }

inline AxiomReport check_gc_jacobi(std::size_t n, std::size_t m, unsigned degree_cap) {
  using detail::gv;
  std::vector<GcElement> units;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n + m; ++i)
    for (std::size_t j = 0; j < n + m; ++j)
      for (unsigned k = 0; k <= degree_cap; ++k) {
        units.push_back(GcElement::unit(n, m, i, j, k));
        names.push_back("x^" + std::to_string(k) + "E" + std::to_string(i + 1) + std::to_string(j + 1));
      }
  AxiomReport rep;
  const auto lam = gv("lambda"), mu = gv("mu");
  const auto N = units.size();
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a; b < N; ++b) {
      // [A λ B] + (-1)^{|A||B|} [B_{-∂-λ} A]
      int s = gdcore::koszul(units[a].parity(), units[b].parity());
      auto r = gc_bracket(units[a], units[b], lam);
      auto back = gc_bracket(units[b], units[a], lam).substitute("lambda", -gv("d") - lam);
      for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r.size(); ++j) r.at(i, j) += Rational(s) * back.at(i, j);
      if (!r.is_zero()) rep.add("gc.skew", {names[a], names[b]}, r.to_string());
    }
  std::vector<GcElement> inner_mu(N * N), inner_lam(N * N);
  for (std::size_t b = 0; b < N; ++b)
    for (std::size_t c = 0; c < N; ++c) {
      inner_mu[b * N + c] = gc_bracket(units[b], units[c], mu);
      inner_lam[b * N + c] = gc_bracket(units[b], units[c], lam);
    }
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      int s = gdcore::koszul(units[a].parity(), units[b].parity());
      for (std::size_t c = 0; c < N; ++c) {
        auto lhs1 = gc_bracket(units[a], inner_mu[b * N + c], lam);
        auto lhs2 = gc_bracket(units[b], inner_lam[a * N + c], mu);
        auto rhs = gc_bracket(inner_lam[a * N + b], units[c], lam + mu);
        auto r = lhs1;
        for (std::size_t i = 0; i < r.size(); ++i)
          for (std::size_t j = 0; j < r.size(); ++j) r.at(i, j) -= Rational(s) * lhs2.at(i, j) + rhs.at(i, j);
        if (!r.is_zero()) rep.add("gc.jacobi", {names[a], names[b], names[c]}, r.to_string());
      }
    }
  return rep;
}

/// ρ_λ(a, ·) as a matrix over k[∂, λ]: column j holds ρ_λ(a, e_j).
inline std::vector<std::vector<std::string>> repr_matrix(const confalg::ReprTable& rho, std::size_t a) {
  const auto m = rho.module.size();
  std::vector<std::vector<std::string>> out(m, std::vector<std::string>(m));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) out[i][j] = rho.at(a, j)[i].to_string();
  return out;
}

}  // namespace gdconf::confrep
