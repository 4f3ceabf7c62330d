#pragma once

// Sesquilinear λ-operations on free H-modules, H = k[∂]. An element of a free
// module is a VecPoly whose components are polynomials in ∂ (and, after
// earlier operations, in the scalars λ, μ). A table gives the operation on
// generators; everything else follows from
//   [∂u ν w] = -ν [u ν w],   [u ν ∂w] = (∂+ν) [u ν w].

#include "gdconf/gdcore/report.hpp"
#include "gdconf/gdcore/superalgebra.hpp"

#include <optional>

namespace gdconf::confalg {

using exactpoly::FormalPoly;
using exactpoly::Rational;
using exactpoly::VarSet;
using exactpoly::VecPoly;
using gdcore::AxiomReport;
using gdcore::Parity;
using gdcore::SuperBasis;

inline const VarSet& vars() {
  static const VarSet v{"d", "lambda", "mu"};
  return v;
}
inline FormalPoly cst(const Rational& c) { return FormalPoly::constant(vars(), c); }
inline FormalPoly D() { return FormalPoly::variable(vars(), "d"); }
inline FormalPoly Lam() { return FormalPoly::variable(vars(), "lambda"); }
inline FormalPoly Mu() { return FormalPoly::variable(vars(), "mu"); }

/// Generator e_i of a free module of rank n, coefficient 1.
inline VecPoly gen(std::size_t n, std::size_t i) { return VecPoly::unit(vars(), n, i); }
inline VecPoly zero(std::size_t n) { return VecPoly(vars(), n); }

/// Values of a λ-operation on pairs of generators: (left i, right j) -> VecPoly
/// of dimension `out`, polynomial in ∂ and λ.
class SesquiTable {
 public:
  SesquiTable() = default;
  SesquiTable(std::size_t left, std::size_t right, std::size_t out)
      : left_(left), right_(right), out_(out), entries_(left * right, zero(out)) {}

  std::size_t left() const { return left_; }
  std::size_t right() const { return right_; }
  std::size_t out() const { return out_; }

  const VecPoly& at(std::size_t i, std::size_t j) const { return entries_.at(i * right_ + j); }
  VecPoly& at(std::size_t i, std::size_t j) { return entries_.at(i * right_ + j); }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  friend bool operator==(const SesquiTable&, const SesquiTable&) = default;

 private:
  std::size_t left_ = 0, right_ = 0, out_ = 0;
  std::vector<VecPoly> entries_;
};

/// [p ν q] for module elements p (left rank) and q (right rank):
///   Σ_{i,j} p_i(∂ := -ν) q_j(∂ := ∂+ν) T_ij(λ := ν).
inline VecPoly apply(const SesquiTable& T, const VecPoly& p, const VecPoly& q, const FormalPoly& nu) {
  if (p.dim() != T.left() || q.dim() != T.right()) throw std::invalid_argument("module rank mismatch");
  VecPoly out = zero(T.out());
  const auto minus_nu = -nu;
  const auto shifted = D() + nu;
  bool nu_is_lambda = nu == Lam();
  for (std::size_t i = 0; i < T.left(); ++i) {
    if (p[i].is_zero()) continue;
    auto pi = poly_substitute(p[i], "d", minus_nu);
    for (std::size_t j = 0; j < T.right(); ++j) {
      if (q[j].is_zero() || T.at(i, j).is_zero()) continue;
      auto qj = poly_substitute(q[j], "d", shifted);
      auto t = nu_is_lambda ? T.at(i, j) : poly_substitute(T.at(i, j), "lambda", nu);
      out += (pi * qj) * t;
    }
  }
  return out;
}

/// Grade window for truncated fixtures: a tuple of generators is checked only
/// when its grades sum to at most `cap`.
struct Window {
  std::vector<int> left;   // grades of the acting generators
  std::vector<int> right;  // grades of the module generators
  int cap = 0;
};

namespace detail {

inline bool admits(const Window* w, int total) { return !w || total <= w->cap; }
inline int grade(const std::vector<int>& g, std::size_t i) { return g.empty() ? 0 : g.at(i); }

inline std::vector<std::string> labels(const SuperBasis& b, std::initializer_list<std::size_t> idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(b.name(i));
  return out;
}

}  // namespace detail

/// A λ-bracket on the free H-module H ⊗ V.
struct LambdaBracketTable {
  SuperBasis basis;
  SesquiTable table;

  LambdaBracketTable() = default;
  explicit LambdaBracketTable(SuperBasis b) : basis(std::move(b)), table(basis.size(), basis.size(), basis.size()) {}

  std::size_t rank() const { return basis.size(); }
  const VecPoly& at(std::size_t i, std::size_t j) const { return table.at(i, j); }
  VecPoly& at(std::size_t i, std::size_t j) { return table.at(i, j); }
  VecPoly bracket(const VecPoly& p, const VecPoly& q, const FormalPoly& nu) const { return apply(table, p, q, nu); }
  std::string render(const VecPoly& v) const { return v.to_string(basis.names()); }

  friend bool operator==(const LambdaBracketTable&, const LambdaBracketTable&) = default;
};

/// A conformal module: ρ_λ(a, e_j) for algebra generators a and module generators e_j.
struct ReprTable {
  SuperBasis algebra;
  SuperBasis module;
  SesquiTable table;
  std::optional<Window> window;

  ReprTable() = default;
  ReprTable(SuperBasis a, SuperBasis m)
      : algebra(std::move(a)), module(std::move(m)), table(algebra.size(), module.size(), module.size()) {}

  const VecPoly& at(std::size_t a, std::size_t j) const { return table.at(a, j); }
  VecPoly& at(std::size_t a, std::size_t j) { return table.at(a, j); }

  /// ρ_ν(p, q) for p in the algebra module, q in the representation module.
  VecPoly act(const VecPoly& p, const VecPoly& q, const FormalPoly& nu) const { return apply(table, p, q, nu); }
  std::string render(const VecPoly& v) const { return v.to_string(module.names()); }
};

/// The regular representation: the algebra acting on itself by its bracket.
inline ReprTable regular_representation(const LambdaBracketTable& L) {
  ReprTable r(L.basis, L.basis);
  r.table = L.table;
  return r;
}

/// Parity check: entry (i, j) may only have components of parity |i|+|j|.
inline AxiomReport check_parity(const SesquiTable& T, const SuperBasis& left, const SuperBasis& right,
                                const SuperBasis& out, const std::string& axiom) {
  AxiomReport rep;
  for (std::size_t i = 0; i < T.left(); ++i)
    for (std::size_t j = 0; j < T.right(); ++j)
      for (std::size_t k = 0; k < T.out(); ++k)
        if (!T.at(i, j)[k].is_zero() && left.parity(i) + right.parity(j) != out.parity(k))
          rep.add(axiom, {left.name(i), right.name(j)}, T.at(i, j).to_string(out.names()));
  return rep;
}

}  // namespace gdconf::confalg
