#pragma once

// Random small superalgebras for property tests. Novikov structures come from
// a supercommutative algebra A with an even derivation d and an even ξ:
// a∘b = a·d(b) + ξab. Poisson structures pair a few fixed brackets with a
// derivation solved for exactly. Every sample is moved by a random
// parity-preserving change of basis.

#include "gdconf/gdcore/axioms.hpp"

#include <functional>
#include <random>

namespace gdconf::gdcore {

class Sampler {
 public:
  explicit Sampler(std::uint32_t seed) : rng_(seed) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937& engine() { return rng_; }

  /// Supercommutative associative algebras of dimension ≤ 3 (product in circ).
  SuperAlgebra commutative_algebra(int family) {
    using P = Parity;
    auto mk = [](std::string name, std::vector<std::string> n, std::vector<P> p) {
      auto A = make_algebra(std::move(name), SuperBasis(std::move(n), std::move(p)));
      A.circ = StructureTensor(A.dim());
      return A;
    };
    SuperAlgebra A;
    switch (family % 9) {
      case 0:
        A = mk("Q", {"1"}, {P::even});
        A.circ->at(0, 0, 0) = 1;
        break;
      case 1:  // Q[t]/(t^2)
        A = mk("Q[t]/t^2", {"1", "t"}, {P::even, P::even});
        unital(A);
        break;
      case 2:  // Q[t]/(t^3)
        A = mk("Q[t]/t^3", {"1", "t", "t2"}, {P::even, P::even, P::even});
        unital(A);
        A.circ->at(1, 1, 2) = 1;
        break;
      case 3:  // t Q[t]/(t^4)
        A = mk("tQ[t]/t^4", {"t", "t2", "t3"}, {P::even, P::even, P::even});
        A.circ->at(0, 0, 1) = 1;
        A.circ->at(0, 1, 2) = A.circ->at(1, 0, 2) = 1;
        break;
      case 4:  // Λ(θ)
        A = mk("L(th)", {"1", "th"}, {P::even, P::odd});
        unital(A);
        break;
      case 5:
        A = mk("Q[t,th]", {"1", "t", "th"}, {P::even, P::even, P::odd});
        unital(A);
        break;
      case 6:
        A = mk("Q+th1+th2", {"1", "th1", "th2"}, {P::even, P::odd, P::odd});
        unital(A);
        break;
      case 7:
        A = mk("Qe1+Qe2", {"e1", "e2"}, {P::even, P::even});
        A.circ->at(0, 0, 0) = A.circ->at(1, 1, 1) = 1;
        break;
      default:  // θ1θ2 = e
        A = mk("span(e,th1,th2)", {"e", "th1", "th2"}, {P::even, P::odd, P::odd});
        A.circ->at(1, 2, 0) = 1;
        A.circ->at(2, 1, 0) = -1;
        break;
    }
    return A;
  }

  /// Random even derivation of every tensor present in A (or zero if none).
  LinearMap random_derivation(const SuperAlgebra& A) {
    auto basis = derivation_space(A);
    const auto n = A.dim();
    LinearMap d(n, Vec(n, Rational(0)));
    for (const auto& v : basis) {
      int c = pick(-2, 2);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) d[i][k] += c * v[i * n + k];
    }
    return d;
  }

  /// Novikov superalgebra a∘b = a d(b) + ξ a b, after a random change of basis.
  SuperAlgebra novikov() {
    auto A = commutative_algebra(pick(0, 8));
    auto d = random_derivation(A);
    const auto n = A.dim();
    Vec xi(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
      if (A.basis.parity(i) == Parity::even) xi[i] = pick(-1, 1);
    StructureTensor circ(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vec ab = A.circ->apply(A.unit(i), A.unit(j));
        circ.set_entry(i, j, add(A.circ->apply(A.unit(i), d[j]), A.circ->apply(xi, ab)));
      }
    SuperAlgebra N = make_algebra("nov(" + A.name + ")", A.basis);
    N.circ = circ;
    return change_basis(N);
  }

  /// Poisson superalgebra of dimension ≤ 3 together with a derivation.
  std::pair<SuperAlgebra, LinearMap> poisson_with_derivation() {
    using P = Parity;
    SuperAlgebra A;
    switch (pick(0, 5)) {
      case 0:  // zero product, Lie bracket {a,b}=b
        A = make_algebra("lie2", SuperBasis({"a", "b"}, {P::even, P::even}));
        A.circ = StructureTensor(2);
        A.bracket = StructureTensor(2);
        set_skew(A, 0, 1, 1, 1);
        break;
      case 1:  // commutative algebra, zero bracket
        A = commutative_algebra(pick(0, 8));
        A.bracket = StructureTensor(A.dim());
        break;
      case 2:  // span{1,a,b}, {a,b}=b
        A = make_algebra("span(1,a,b)", SuperBasis({"1", "a", "b"}, {P::even, P::even, P::even}));
        A.circ = StructureTensor(3);
        unital(A);
        A.bracket = StructureTensor(3);
        set_skew(A, 1, 2, 2, 1);
        break;
      case 3:  // Λ(θ) with {θ,θ}=1
        A = make_algebra("L(th)", SuperBasis({"1", "th"}, {P::even, P::odd}));
        A.circ = StructureTensor(2);
        unital(A);
        A.bracket = StructureTensor(2);
        A.bracket->at(1, 1, 0) = 1;
        break;
      case 4:  // Heisenberg with zero product
        A = make_algebra("heis", SuperBasis({"x", "y", "z"}, {P::even, P::even, P::even}));
        A.circ = StructureTensor(3);
        A.bracket = StructureTensor(3);
        set_skew(A, 0, 1, 2, 1);
        break;
      default:  // Q[t]/(t^2) with zero bracket
        A = commutative_algebra(1);
        A.bracket = StructureTensor(A.dim());
        break;
    }
    auto d = random_derivation(A);
    return change_basis(A, d);
  }

  /// Finite-dimensional Lie superalgebras (zero circle product).
  SuperAlgebra lie_algebra() {
    using P = Parity;
    SuperAlgebra A;
    switch (pick(0, 4)) {
      case 0:
        A = make_algebra("heis", SuperBasis({"x", "y", "z"}, {P::even, P::even, P::even}));
        A.bracket = StructureTensor(3);
        set_skew(A, 0, 1, 2, 1);
        break;
      case 1:
        A = make_algebra("sl2", SuperBasis({"h", "e", "f"}, {P::even, P::even, P::even}));
        A.bracket = StructureTensor(3);
        set_skew(A, 0, 1, 1, 2);
        set_skew(A, 0, 2, 2, -2);
        set_skew(A, 1, 2, 0, 1);
        break;
      case 2:
        A = make_algebra("aff", SuperBasis({"a", "b"}, {P::even, P::even}));
        A.bracket = StructureTensor(2);
        set_skew(A, 0, 1, 1, 1);
        break;
      case 3:  // [θ,θ] = h
        A = make_algebra("q(1)", SuperBasis({"h", "th"}, {P::even, P::odd}));
        A.bracket = StructureTensor(2);
        A.bracket->at(1, 1, 0) = 1;
        break;
      default:  // [e,θ] = θ
        A = make_algebra("e-th", SuperBasis({"e", "th"}, {P::even, P::odd}));
        A.bracket = StructureTensor(2);
        set_skew(A, 0, 1, 1, 1);
        break;
    }
    A.circ = StructureTensor(A.dim());
    return change_basis(A);
  }

  /// A GD-superalgebra from one of four sources.
  SuperAlgebra gd() {
    switch (pick(0, 3)) {
      case 0:
        return commutator_gd(novikov());
      case 1: {
        auto N = novikov();
        N.bracket = StructureTensor(N.dim());
        return N;
      }
      case 2:
        return lie_algebra();
      default: {
        auto [P, d] = poisson_with_derivation();
        return derived_gd(P, d);
      }
    }
  }

  /// Adds a random nonzero integer to one parity-allowed coefficient.
  SuperAlgebra perturb(SuperAlgebra A) {
    const auto n = A.dim();
    while (true) {
      auto& t = pick(0, 1) ? *A.circ : *A.bracket;
      std::size_t i = pick(0, int(n) - 1), j = pick(0, int(n) - 1), k = pick(0, int(n) - 1);
      if (A.basis.parity(i) + A.basis.parity(j) != A.basis.parity(k)) continue;
      int c = pick(1, 2) * (pick(0, 1) ? 1 : -1);
      t.at(i, j, k) += c;
      if (&t == &*A.bracket && i != j) {
        // keep the bracket antisymmetric so that Jacobi and compatibility are what gets tested
        t.at(j, i, k) -= koszul(A.basis.parity(i), A.basis.parity(j)) * c;
      }
      A.name += "~";
      return A;
    }
  }

  SuperAlgebra change_basis(const SuperAlgebra& A) { return change_basis(A, LinearMap{}).first; }

  /// New basis f_i = Σ_k P[k][i] e_k with P block diagonal by parity.
  std::pair<SuperAlgebra, LinearMap> change_basis(const SuperAlgebra& A, const LinearMap& d) {
    const auto n = A.dim();
    std::vector<Vec> P, Pinv;
    while (true) {
      P.assign(n, Vec(n, Rational(0)));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          if (A.basis.parity(i) == A.basis.parity(k)) P[k][i] = (i == k) ? pick(1, 2) * (pick(0, 1) ? 1 : -1) : pick(-1, 1);
      if (invert(P, Pinv)) break;
    }
    auto to_old = [&](const Vec& v) {  // f-coordinates -> e-coordinates
      Vec out(n, Rational(0));
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) out[k] += P[k][i] * v[i];
      return out;
    };
    auto to_new = [&](const Vec& v) {
      Vec out(n, Rational(0));
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) out[k] += Pinv[k][i] * v[i];
      return out;
    };
    SuperAlgebra B = A;
    for (auto* t : {B.circ ? &*B.circ : nullptr, B.bracket ? &*B.bracket : nullptr}) {
      if (!t) continue;
      const StructureTensor& old = (B.circ && t == &*B.circ) ? *A.circ : *A.bracket;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t->set_entry(i, j, to_new(old.apply(to_old(B.unit(i)), to_old(B.unit(j)))));
    }
    LinearMap dn;
    if (!d.empty())
      for (std::size_t i = 0; i < n; ++i) dn.push_back(to_new(apply_map(d, to_old(B.unit(i)))));
    return {B, dn};
  }

 private:
  static void unital(SuperAlgebra& A) {
    for (std::size_t i = 0; i < A.dim(); ++i) A.circ->at(0, i, i) = A.circ->at(i, 0, i) = 1;
  }
  static void set_skew(SuperAlgebra& A, std::size_t i, std::size_t j, std::size_t k, int c) {
    A.bracket->at(i, j, k) = c;
    A.bracket->at(j, i, k) = -koszul(A.basis.parity(i), A.basis.parity(j)) * c;
  }

  /// Basis of the even derivations of all tensors of A, as flattened n×n maps
  /// (entry i*n+k is the e_k-coefficient of d(e_i)).
  static std::vector<exactpoly::RationalVector> derivation_space(const SuperAlgebra& A) {
    const auto n = A.dim();
    std::vector<exactpoly::RationalVector> rows;
    // parity: d(e_i) has no component of the other parity
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (A.basis.parity(i) != A.basis.parity(k)) {
          exactpoly::RationalVector r(n * n, Rational(0));
          r[i * n + k] = 1;
          rows.push_back(r);
        }
    for (const auto* t : {A.circ ? &*A.circ : nullptr, A.bracket ? &*A.bracket : nullptr}) {
      if (!t) continue;
      // d(e_i e_j) - d(e_i) e_j - e_i d(e_j) = 0, coefficient of e_m
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t m = 0; m < n; ++m) {
            exactpoly::RationalVector r(n * n, Rational(0));
            for (std::size_t l = 0; l < n; ++l) r[l * n + m] += t->at(i, j, l);
            for (std::size_t k = 0; k < n; ++k) {
              r[i * n + k] -= t->at(k, j, m);
              r[j * n + k] -= t->at(i, k, m);
            }
            rows.push_back(r);
          }
    }
    return exactpoly::kernel(rows, n * n);
  }

  static bool invert(const std::vector<Vec>& M, std::vector<Vec>& inv) {
    const auto n = M.size();
    std::vector<Vec> a = M;
    inv.assign(n, Vec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && sgn(a[p][c]) == 0) ++p;
      if (p == n) return false;
      std::swap(a[p], a[c]);
      std::swap(inv[p], inv[c]);
      Rational s = 1 / a[c][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[c][k] *= s;
        inv[c][k] *= s;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || sgn(a[r][c]) == 0) continue;
        Rational f = a[r][c];
        for (std::size_t k = 0; k < n; ++k) {
          a[r][k] -= f * a[c][k];
          inv[r][k] -= f * inv[c][k];
        }
      }
    }
    return true;
  }

  std::mt19937 rng_;
};

}  // namespace gdconf::gdcore
