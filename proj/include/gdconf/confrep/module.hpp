#pragma once

// Conformal modules: the representation axiom
//   ρ_λ(a, ρ_μ(b,x)) - (-1)^{|a||b|} ρ_μ(b, ρ_λ(a,x)) = ρ_{λ+μ}([a λ b], x)
// and faithfulness as a rank condition over k(λ).

#include "gdconf/confalg/quadratic.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace gdconf::confrep {

using confalg::Lam;
using confalg::LambdaBracketTable;
using confalg::Mu;
using confalg::ReprTable;
using exactpoly::FormalPoly;
using exactpoly::Rational;
using exactpoly::VecPoly;
using gdcore::AxiomReport;

inline AxiomReport check_module(const LambdaBracketTable& L, const ReprTable& rho) {
  if (!(L.basis == rho.algebra)) throw gdcore::AlgebraError("check_module: algebra bases differ");
  const confalg::Window* w = rho.window ? &*rho.window : nullptr;
  AxiomReport rep = confalg::check_parity(rho.table, rho.algebra, rho.module, rho.module, "module.parity");
  const auto n = L.rank(), m = rho.module.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        if (w && !confalg::detail::admits(w, confalg::detail::grade(w->left, i) + confalg::detail::grade(w->left, j) +
                                                 confalg::detail::grade(w->right, k)))
          continue;
        auto a = confalg::gen(n, i), b = confalg::gen(n, j), x = confalg::gen(m, k);
        Rational s = gdcore::koszul(L.basis.parity(i), L.basis.parity(j));
        auto r = rho.act(a, rho.act(b, x, Mu()), Lam()) - s * rho.act(b, rho.act(a, x, Lam()), Mu()) -
                 rho.act(L.bracket(a, b, Lam()), x, Lam() + Mu());
        if (!r.is_zero()) rep.add("module.jacobi", {L.basis.name(i), L.basis.name(j), rho.module.name(k)}, rho.render(r));
      }
  return rep;
}

struct FaithfulResult {
  bool faithful = false;
  std::size_t rank = 0;     // rank over k(λ) of a ↦ ρ_λ(a, ·)
  std::string witness;      // a module generator whose column alone has full rank, or a dependent generator
};

namespace detail {

using Column = std::map<std::tuple<std::size_t, std::size_t, unsigned>, FormalPoly>;  // (e_j, component, ∂-power)

inline Column flatten(const ReprTable& rho, std::size_t a, const std::vector<std::size_t>& cols) {
  static const exactpoly::VarSet lam{"lambda"};
  Column out;
  for (auto j : cols) {
    const auto& v = rho.at(a, j);
    for (std::size_t k = 0; k < v.dim(); ++k) {
      if (v[k].is_zero()) continue;
      for (int p = 0; p <= v[k].degree("d"); ++p) {
        auto c = v[k].coefficient_of("d", p);
        if (c.is_zero()) continue;
        out.emplace(std::make_tuple(j, k, unsigned(p)), c.rebase(lam));
      }
    }
  }
  return out;
}

/// Rank over Q(λ) of the given vectors, by fraction-free elimination in Q[λ].
/// Also reports the index of the first vector that depends on earlier ones.
inline std::pair<std::size_t, std::optional<std::size_t>> rank_over_lambda(std::vector<Column> rows) {
  // quick exact certificate: full rank after evaluating λ at a rational point
  for (int t = 1; t <= 3; ++t) {
    exactpoly::RowEchelon ech;
    std::map<std::tuple<std::size_t, std::size_t, unsigned>, std::size_t> index;
    bool full = true;
    for (const auto& r : rows) {
      std::map<std::size_t, Rational> v;
      for (const auto& [key, p] : r) {
        auto val = p.evaluate("lambda", Rational(t * 7 + 3, t + 1));
        auto c = val.coefficient({});
        if (sgn(c) == 0) continue;
        auto [it, fresh] = index.emplace(key, index.size());
        v[it->second] = c;
      }
      if (!ech.insert(v)) {
        full = false;
        break;
      }
    }
    if (full) return {rows.size(), std::nullopt};
  }
  std::size_t rank = 0;
  std::optional<std::size_t> dependent;
  std::vector<Column> basis;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Column v = rows[r];
    for (const auto& b : basis) {
      const auto& [key, piv] = *b.begin();
      auto it = v.find(key);
      if (it == v.end()) continue;
      FormalPoly f = it->second;
      Column nv;
      for (const auto& [k, p] : v) nv[k] = p * piv;
      for (const auto& [k, p] : b) nv[k] = nv.count(k) ? nv[k] - p * f : -(p * f);
      v.clear();
      for (auto& [k, p] : nv)
        if (!p.is_zero()) v.emplace(k, p);
    }
    if (v.empty()) {
      if (!dependent) dependent = r;
      continue;
    }
    basis.push_back(v);
    ++rank;
  }
  return {rank, dependent};
}

}  // namespace detail

inline FaithfulResult check_faithful(const LambdaBracketTable& L, const ReprTable& rho) {
  const auto n = L.rank(), m = rho.module.size();
  FaithfulResult res;
  // single-column witnesses first, the unit class before the rest
  std::vector<std::size_t> order(m);
  for (std::size_t j = 0; j < m; ++j) order[j] = j;
  std::stable_partition(order.begin(), order.end(), [&](std::size_t j) { return rho.module.name(j) == "1"; });
  for (std::size_t j : order) {
    if (n == 0) break;
    std::vector<detail::Column> rows;
    for (std::size_t a = 0; a < n; ++a) rows.push_back(detail::flatten(rho, a, {j}));
    if (detail::rank_over_lambda(rows).first == n) {
      res.faithful = true;
      res.rank = n;
      res.witness = rho.module.name(j);
      return res;
    }
  }
  std::vector<std::size_t> all(m);
  for (std::size_t j = 0; j < m; ++j) all[j] = j;
  std::vector<detail::Column> rows;
  for (std::size_t a = 0; a < n; ++a) rows.push_back(detail::flatten(rho, a, all));
  auto [rank, dep] = detail::rank_over_lambda(rows);
  res.rank = rank;
  res.faithful = rank == n;
  res.witness = res.faithful ? "all" : L.basis.name(dep.value_or(0));
  return res;
}

}  // namespace gdconf::confrep
