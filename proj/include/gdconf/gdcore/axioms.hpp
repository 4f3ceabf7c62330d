#pragma once

// Axiom checkers over basis triples. Bilinearity extends every verdict from
// basis elements to the whole algebra. Signs follow the Koszul rule: a sign
// (-1)^{|a||b|} appears whenever two homogeneous symbols a, b are transposed.

#include "gdconf/gdcore/report.hpp"
#include "gdconf/gdcore/superalgebra.hpp"

namespace gdconf::gdcore {

namespace detail {

inline std::vector<std::string> labels(const SuperAlgebra& A, std::initializer_list<std::size_t> idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(A.basis.name(i));
  return out;
}

}  // namespace detail

inline AxiomReport check_novikov(const SuperAlgebra& A) {
  const auto& circ = A.circ_or_throw();
  auto o = [&](const Vec& a, const Vec& b) { return circ.apply(a, b); };
  AxiomReport rep;
  const auto n = A.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec x = A.unit(i), y = A.unit(j), z = A.unit(k);
        auto pi = A.basis.parity(i), pj = A.basis.parity(j), pk = A.basis.parity(k);
        // (x∘y)∘z - x∘(y∘z) = (-1)^{|x||y|} [(y∘x)∘z - y∘(x∘z)]
        Vec lsym = add(o(o(x, y), z), o(x, o(y, z)), -1);
        lsym = add(lsym, add(o(o(y, x), z), o(y, o(x, z)), -1), -koszul(pi, pj));
        if (!is_zero_vec(lsym))
          rep.add("novikov.left_symmetry", detail::labels(A, {i, j, k}), vec_to_string(lsym, A.basis));
        // (x∘y)∘z = (-1)^{|y||z|} (x∘z)∘y
        Vec rcomm = add(o(o(x, y), z), o(o(x, z), y), -koszul(pj, pk));
        if (!is_zero_vec(rcomm))
          rep.add("novikov.right_commutativity", detail::labels(A, {i, j, k}), vec_to_string(rcomm, A.basis));
      }
  return rep;
}

inline AxiomReport check_lie_super(const SuperAlgebra& A) {
  const auto& br = A.bracket_or_throw();
  auto b = [&](const Vec& u, const Vec& v) { return br.apply(u, v); };
  AxiomReport rep;
  const auto n = A.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Vec skew = add(br.entry(i, j), br.entry(j, i), koszul(A.basis.parity(i), A.basis.parity(j)));
      if (!is_zero_vec(skew))
        rep.add("lie.anticommutativity", detail::labels(A, {i, j}), vec_to_string(skew, A.basis));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec x = A.unit(i), y = A.unit(j), z = A.unit(k);
        // [x,[y,z]] - (-1)^{|x||y|}[y,[x,z]] - [[x,y],z]
        Vec r = add(b(x, b(y, z)), b(y, b(x, z)), -koszul(A.basis.parity(i), A.basis.parity(j)));
        r = add(r, b(b(x, y), z), -1);
        if (!is_zero_vec(r)) rep.add("lie.jacobi", detail::labels(A, {i, j, k}), vec_to_string(r, A.basis));
      }
  return rep;
}

/// Only the compatibility identity, assuming both tensors are present.
inline AxiomReport check_gd_compatibility(const SuperAlgebra& A) {
  const auto& circ = A.circ_or_throw();
  const auto& br = A.bracket_or_throw();
  auto o = [&](const Vec& u, const Vec& v) { return circ.apply(u, v); };
  auto b = [&](const Vec& u, const Vec& v) { return br.apply(u, v); };
  AxiomReport rep;
  const auto n = A.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec x = A.unit(i), y = A.unit(j), z = A.unit(k);
        auto pi = A.basis.parity(i), pj = A.basis.parity(j), pk = A.basis.parity(k);
        // [a∘b,c] - a∘[b,c] + [a,b]∘c + (-1)^{|a||b|}[b,a∘c] - (-1)^{|b||c|}[a,c]∘b
        Vec r = b(o(x, y), z);
        r = add(r, o(x, b(y, z)), -1);
        r = add(r, o(b(x, y), z));
        r = add(r, b(y, o(x, z)), koszul(pi, pj));
        r = add(r, o(b(x, z), y), -koszul(pj, pk));
        if (!is_zero_vec(r))
          rep.add("gd.compatibility", detail::labels(A, {i, j, k}), vec_to_string(r, A.basis));
      }
  return rep;
}

/// Full GD verdict. Failures of the Novikov or Lie prerequisites are reported
/// as violations rather than thrown, so every structure gets a verdict.
inline AxiomReport check_gd(const SuperAlgebra& A) {
  A.circ_or_throw();
  A.bracket_or_throw();
  AxiomReport rep = check_novikov(A);
  rep.merge(check_lie_super(A));
  rep.merge(check_gd_compatibility(A));
  return rep;
}

/// V^(-): the bracket [a,b] = a∘b - (-1)^{|a||b|} b∘a.
inline SuperAlgebra commutator_gd(const SuperAlgebra& A) {
  auto nov = check_novikov(A);
  if (!nov.passed())
    throw AlgebraError("commutator_gd: '" + A.name + "' is not Novikov (" + nov.violations.front().axiom + ")");
  const auto& circ = *A.circ;
  const auto n = A.dim();
  StructureTensor br(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      br.set_entry(i, j, add(circ.entry(i, j), circ.entry(j, i), -koszul(A.basis.parity(i), A.basis.parity(j))));
  SuperAlgebra out = A;
  out.name = A.name + "^(-)";
  out.bracket = br;
  return out;
}

// ---- Poisson data: circ holds the commutative associative product -------

inline AxiomReport check_poisson_super(const SuperAlgebra& P) {
  const auto& mul = P.circ_or_throw();
  const auto& br = P.bracket_or_throw();
  auto m = [&](const Vec& u, const Vec& v) { return mul.apply(u, v); };
  auto b = [&](const Vec& u, const Vec& v) { return br.apply(u, v); };
  AxiomReport rep = check_lie_super(P);
  const auto n = P.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec c = add(mul.entry(i, j), mul.entry(j, i), -koszul(P.basis.parity(i), P.basis.parity(j)));
      if (!is_zero_vec(c))
        rep.add("poisson.supercommutativity", detail::labels(P, {i, j}), vec_to_string(c, P.basis));
      for (std::size_t k = 0; k < n; ++k) {
        Vec x = P.unit(i), y = P.unit(j), z = P.unit(k);
        Vec assoc = add(m(m(x, y), z), m(x, m(y, z)), -1);
        if (!is_zero_vec(assoc))
          rep.add("poisson.associativity", detail::labels(P, {i, j, k}), vec_to_string(assoc, P.basis));
        // {x, yz} = {x,y}z + (-1)^{|x||y|} y{x,z}
        Vec leib = add(b(x, m(y, z)), m(b(x, y), z), -1);
        leib = add(leib, m(y, b(x, z)), -koszul(P.basis.parity(i), P.basis.parity(j)));
        if (!is_zero_vec(leib))
          rep.add("poisson.leibniz", detail::labels(P, {i, j, k}), vec_to_string(leib, P.basis));
      }
    }
  return rep;
}

/// d is given column-wise: derivation[i] = d(e_i). Checks parity, the product
/// rule for the circle product and, when present, for the bracket.
using LinearMap = std::vector<Vec>;

inline Vec apply_map(const LinearMap& d, const Vec& v) {
  Vec out(v.size(), Rational(0));
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) out = add(out, d.at(i), v[i]);
  return out;
}

inline AxiomReport check_derivation(const SuperAlgebra& P, const LinearMap& d) {
  AxiomReport rep;
  const auto n = P.dim();
  if (d.size() != n) throw AlgebraError("derivation size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    auto par = parity_of(d[i], P.basis);
    if (!is_zero_vec(d[i]) && (!par || *par != P.basis.parity(i)))
      rep.add("derivation.parity", detail::labels(P, {i}), vec_to_string(d[i], P.basis));
  }
  for (const auto* t : {P.circ ? &*P.circ : nullptr, P.bracket ? &*P.bracket : nullptr}) {
    if (!t) continue;
    const char* name = (P.circ && t == &*P.circ) ? "derivation.product_rule" : "derivation.bracket_rule";
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vec x = P.unit(i), y = P.unit(j);
        Vec r = apply_map(d, t->apply(x, y));
        r = add(r, t->apply(d[i], y), -1);
        r = add(r, t->apply(x, d[j]), -1);
        if (!is_zero_vec(r)) rep.add(name, detail::labels(P, {i, j}), vec_to_string(r, P.basis));
      }
  }
  return rep;
}

/// P^(d): a∘b = a d(b), [a,b] = {a,b}.
inline SuperAlgebra derived_gd(const SuperAlgebra& P, const LinearMap& d) {
  const auto& mul = P.circ_or_throw();
  const auto n = P.dim();
  StructureTensor circ(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) circ.set_entry(i, j, mul.apply(P.unit(i), d.at(j)));
  SuperAlgebra out = P;
  out.name = P.name + "^(d)";
  out.circ = circ;
  if (!out.bracket) out.bracket = StructureTensor(n);
  return out;
}

}  // namespace gdconf::gdcore
