#pragma once

// Brute-force oracle: the loop superalgebra V[t, t^-1] with
//   [a t^n, b t^m] = [a,b] t^{n+m} + n (a∘b) t^{n+m-1} - (-1)^{|a||b|} m (b∘a) t^{n+m-1}
// is a Lie superalgebra exactly when V is a GD-superalgebra. Checked on all
// basis elements a t^n with |n| <= cap.

#include "gdconf/gdcore/axioms.hpp"

#include <map>
#include <utility>

namespace gdconf::gdcore {

namespace detail {

using LoopElement = std::map<std::pair<std::size_t, long>, Rational>;  // (generator, t-degree) -> coeff

inline void loop_accumulate(LoopElement& out, const LoopElement& x, const Rational& s = 1) {
  for (const auto& [k, c] : x) {
    auto& slot = out[k];
    slot += s * c;
    if (sgn(slot) == 0) out.erase(k);
  }
}

inline std::string loop_to_string(const LoopElement& x, const SuperBasis& basis) {
  if (x.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : x) {
    if (!out.empty()) out += " + ";
    out += c.get_str() + "*" + basis.name(k.first) + "t^" + std::to_string(k.second);
  }
  return out;
}

class LoopAlgebra {
 public:
  explicit LoopAlgebra(const SuperAlgebra& A) : A_(A), circ_(A.circ_or_throw()), br_(A.bracket_or_throw()) {}

  LoopElement bracket(const LoopElement& X, const LoopElement& Y) const {
    LoopElement out;
    for (const auto& [kx, cx] : X)
      for (const auto& [ky, cy] : Y) {
        auto [a, n] = kx;
        auto [b, m] = ky;
        Rational s = cx * cy;
        int sign = koszul(A_.basis.parity(a), A_.basis.parity(b));
        for (std::size_t k = 0; k < A_.dim(); ++k) {
          add(out, {k, n + m}, s * br_.at(a, b, k));
          add(out, {k, n + m - 1}, s * Rational(n) * circ_.at(a, b, k));
          add(out, {k, n + m - 1}, -s * Rational(sign * m) * circ_.at(b, a, k));
        }
      }
    return out;
  }

  Parity parity(const LoopElement& X) const { return A_.basis.parity(X.begin()->first.first); }

 private:
  static void add(LoopElement& out, std::pair<std::size_t, long> key, const Rational& c) {
    if (sgn(c) == 0) return;
    auto& slot = out[key];
    slot += c;
    if (sgn(slot) == 0) out.erase(key);
  }

  const SuperAlgebra& A_;
  const StructureTensor& circ_;
  const StructureTensor& br_;
};

}  // namespace detail

inline AxiomReport loop_oracle(const SuperAlgebra& A, int degree_cap) {
  if (degree_cap < 1) throw AlgebraError("loop_oracle: degree cap must be at least 1");
  detail::LoopAlgebra L(A);
  std::vector<detail::LoopElement> gens;
  std::vector<std::string> names;
  std::vector<Parity> par;
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (long n = -degree_cap; n <= degree_cap; ++n) {
      gens.push_back({{{i, n}, Rational(1)}});
      names.push_back(A.basis.name(i) + "t^" + std::to_string(n));
      par.push_back(A.basis.parity(i));
    }
  AxiomReport rep;
  const auto N = gens.size();
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j) {
      auto r = L.bracket(gens[i], gens[j]);
      detail::loop_accumulate(r, L.bracket(gens[j], gens[i]), koszul(par[i], par[j]));
      if (!r.empty()) rep.add("loop.anticommutativity", {names[i], names[j]}, detail::loop_to_string(r, A.basis));
    }
  // cache [y, z] for all pairs
  std::vector<detail::LoopElement> pair(N * N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) pair[i * N + j] = L.bracket(gens[i], gens[j]);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < N; ++k) {
        // [x,[y,z]] - (-1)^{|x||y|}[y,[x,z]] - [[x,y],z]
        auto r = L.bracket(gens[i], pair[j * N + k]);
        detail::loop_accumulate(r, L.bracket(gens[j], pair[i * N + k]), -koszul(par[i], par[j]));
        detail::loop_accumulate(r, L.bracket(pair[i * N + j], gens[k]), -1);
        if (!r.empty()) rep.add("loop.jacobi", {names[i], names[j], names[k]}, detail::loop_to_string(r, A.basis));
      }
  return rep;
}

}  // namespace gdconf::gdcore
