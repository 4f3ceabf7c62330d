#pragma once

// Enveloping constructions: U(V) for a Novikov superalgebra (defined-mode
// bracket), the lemma checks for that bracket, the speciality kernel and
// P_d(V) for a GD-superalgebra (free mode).

#include "gdconf/envelope/ideal.hpp"
#include "gdconf/gdcore/axioms.hpp"
#include "gdconf/gdcore/report.hpp"

#include <array>

namespace gdconf::envelope {

using gdcore::AlgebraError;
using gdcore::AxiomReport;

inline int wt(const FreeAlgebra& F, const Monomial& m) { return F.weight(m); }

inline EnvElement d_apply(const FreeAlgebra& F, const EnvElement& e) { return F.d(e); }

inline EnvElement poisson_bracket_free(const FreeAlgebra& F, const EnvElement& u, const EnvElement& v) {
  return F.bracket(u, v);
}

namespace detail {

inline void require(const AxiomReport& rep, const std::string& what, const std::string& name) {
  if (!rep.passed())
    throw AlgebraError(what + ": '" + name + "' fails " + rep.violations.front().axiom);
}

inline Truncation defined_window(Truncation T) {
  T.max_bracket_depth = 0;
  return T;
}

}  // namespace detail

/// One weight component of I_V.
inline WeightComponent ideal_component(const SuperAlgebra& V, int n, const Truncation& T, Mode mode) {
  if (mode == Mode::defined) {
    detail::require(gdcore::check_novikov(V), "ideal_component", V.name);
    return IdealBuilder(V, detail::defined_window(T), mode).component(n);
  }
  detail::require(gdcore::check_gd(V), "ideal_component", V.name);
  return IdealBuilder(V, T, mode).component(n);
}

/// U(V) = sComDer<X, d> / I_V with the bracket {x^(m), y^(n)} = (n-1)x^(m+1)y^(n) - (m-1)x^(m)y^(n+1).
class NovikovEnvelope {
 public:
  NovikovEnvelope(const SuperAlgebra& V, const Truncation& T)
      : V_(V), ideal_(V, detail::defined_window(T), Mode::defined) {}

  const FreeAlgebra& algebra() const { return ideal_.algebra(); }
  const SuperAlgebra& source() const { return V_; }

  EnvElement product(const EnvElement& a, const EnvElement& b) const { return algebra().mul(a, b); }
  EnvElement d(const EnvElement& a) const { return algebra().d(a); }
  EnvElement bracket(const EnvElement& a, const EnvElement& b) const { return algebra().bracket(a, b); }

  const WeightComponent& component(int n) const {
    auto it = cache_.find(n);
    if (it == cache_.end()) it = cache_.emplace(n, ideal_.component(n)).first;
    return it->second;
  }

  /// Normal form, one weight at a time.
  EnvElement normal_form(const EnvElement& e) const {
    std::map<int, EnvElement> parts;
    for (const auto& [m, c] : e) parts[algebra().weight(m)].emplace(m, c);
    EnvElement out;
    for (const auto& [w, part] : parts) FreeAlgebra::add(out, component(w).normal_form(part));
    return out;
  }

  /// {x,y} ≡ x∘y - (-1)^{|x||y|} y∘x and x·y' ≡ x∘y for all generators.
  AxiomReport verify() const {
    AxiomReport rep;
    const auto& F = algebra();
    const auto n = V_.dim();
    const auto& circ = V_.circ_or_throw();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        int s = gdcore::koszul(V_.basis.parity(x), V_.basis.parity(y));
        auto br = bracket(F.gen(x), F.gen(y));
        FreeAlgebra::add(br, F.linear(circ.entry(x, y)), -1);
        FreeAlgebra::add(br, F.linear(circ.entry(y, x)), Rational(s));
        auto r = normal_form(br);
        if (!r.empty()) rep.add("envelope.bracket", {V_.basis.name(x), V_.basis.name(y)}, F.to_string(r));
        auto pr = product(F.gen(x), F.gen(y, 1));
        FreeAlgebra::add(pr, F.linear(circ.entry(x, y)), -1);
        r = normal_form(pr);
        if (!r.empty()) rep.add("envelope.product", {V_.basis.name(x), V_.basis.name(y)}, F.to_string(r));
      }
    return rep;
  }

 private:
  SuperAlgebra V_;
  IdealBuilder ideal_;
  mutable std::map<int, WeightComponent> cache_;
};

inline NovikovEnvelope build_novikov_envelope(const SuperAlgebra& V, const Truncation& T) {
  detail::require(gdcore::check_novikov(V), "build_novikov_envelope", V.name);
  return NovikovEnvelope(V, T);
}

/// Jacobi, the derivation property of d and {z, u(x,y)} ∈ I_V for the letter
/// bracket on abstract generators x, y, z with the given parities.
inline AxiomReport check_free_bracket_lemmas(int order_cap, BracketRule rule = {},
                                             std::array<Parity, 3> parities = {Parity::even, Parity::even, Parity::even}) {
  if (order_cap < 1) throw std::invalid_argument("check_free_bracket_lemmas: order_cap must be >= 1");
  // w stands for the linear form x∘y
  SuperBasis gens({"x", "y", "z", "w"}, {parities[0], parities[1], parities[2], parities[0] + parities[1]}, false);
  FreeAlgebra F(gens, Truncation{order_cap + 2, 4, 0}, Mode::defined, rule);
  auto lbl = [&](std::size_t g, int n) { return F.alphabet().base_label(g, n); };
  AxiomReport rep;
  for (int m = 0; m <= order_cap; ++m)
    for (int n = 0; n <= order_cap; ++n) {
      auto a = F.gen(0, m), b = F.gen(1, n);
      for (int k = 0; k <= order_cap; ++k) {
        auto c = F.gen(2, k);
        Rational s = gdcore::koszul(parities[0], parities[1]);
        auto r = F.bracket(a, F.bracket(b, c));
        FreeAlgebra::add(r, F.bracket(b, F.bracket(a, c)), -s);
        FreeAlgebra::add(r, F.bracket(F.bracket(a, b), c), -1);
        if (!r.empty()) rep.add("lemma.jacobi", {lbl(0, m), lbl(1, n), lbl(2, k)}, F.to_string(r));
      }
      auto r = F.d(F.bracket(a, b));
      FreeAlgebra::add(r, F.bracket(F.gen(0, m + 1), b), -1);
      FreeAlgebra::add(r, F.bracket(a, F.gen(1, n + 1)), -1);
      if (!r.empty()) rep.add("lemma.derivation", {lbl(0, m), lbl(1, n)}, F.to_string(r));
    }
  // {z, u} = z·d(u) - z'·u with u = x·y' - w
  auto u = F.mul(F.gen(0), F.gen(1, 1));
  FreeAlgebra::add(u, F.gen(3), -1);
  auto z = F.gen(2);
  auto r = F.bracket(z, u);
  FreeAlgebra::add(r, F.mul(z, F.d(u)), -1);
  FreeAlgebra::add(r, F.mul(F.gen(2, 1), u), 1);
  if (!r.empty()) rep.add("lemma.ideal", {"z", "x", "y"}, F.to_string(r));
  return rep;
}

struct SpecialityResult {
  std::vector<gdcore::Vec> kernel;  // basis of {a ∈ V : a ∈ I_V}, reduced echelon
  std::size_t columns = 0;
  std::size_t rank = 0;
  std::size_t rows = 0;
  std::size_t quotient_dim = 0;  // dim U_{-1} inside the window
  std::size_t overflow = 0;

  bool exceptional() const { return !kernel.empty(); }
};

namespace detail {

inline SpecialityResult kernel_of(const IdealBuilder& I, const WeightComponent& C, std::size_t dim) {
  SpecialityResult res;
  res.columns = C.basis.size();
  res.rank = C.rank();
  res.rows = C.rows_generated;
  res.quotient_dim = C.quotient_dim();
  res.overflow = I.overflow();
  // generators sit in the last columns; echelon rows led there lie entirely inside
  const auto& A = I.algebra().alphabet();
  std::map<std::size_t, std::size_t> gen_of_col;
  for (std::size_t g = 0; g < dim; ++g) gen_of_col[C.column.at(Monomial{A.base(g, 0)})] = g;
  exactpoly::RowEchelon ech(dim);
  for (const auto& row : C.relations.rows()) {
    if (!gen_of_col.count(row.front().first)) continue;
    std::map<std::size_t, Rational> v;
    for (const auto& [c, q] : row) v.emplace(gen_of_col.at(c), Rational(q));
    ech.insert(v);
  }
  ech.back_substitute();
  for (const auto& row : ech.rows()) {
    gdcore::Vec v(dim, Rational(0));
    for (const auto& [c, q] : row) v[c] = Rational(q, row.front().second);
    for (auto& q : v) q.canonicalize();
    res.kernel.push_back(std::move(v));
  }
  std::sort(res.kernel.begin(), res.kernel.end(), [](const auto& a, const auto& b) {
    auto lead = [](const gdcore::Vec& v) {
      for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) return i;
      return v.size();
    };
    return lead(a) < lead(b);
  });
  return res;
}

inline void require_free_window(const Truncation& T, const char* what) {
  T.validate();
  if (T.max_bracket_depth < 1) throw std::invalid_argument(std::string(what) + ": free mode needs bracket depth B >= 1");
}

}  // namespace detail

inline SpecialityResult speciality_kernel(const SuperAlgebra& V, const Truncation& T) {
  detail::require(gdcore::check_gd(V), "speciality_kernel", V.name);
  detail::require_free_window(T, "speciality_kernel");
  IdealBuilder I(V, T, Mode::free);
  auto C = I.component(-1);
  return detail::kernel_of(I, C, V.dim());
}

/// P_d(V) = F / I_V in weights -1 and 0, with the maps read off the quotient.
class PdEnvelope {
 public:
  PdEnvelope(const SuperAlgebra& V, const Truncation& T) : V_(V), T_(T), ideal_(V, T, Mode::free) {
    umin1_ = ideal_.component(-1);
    u0_ = ideal_.component(0);
    speciality_ = detail::kernel_of(ideal_, umin1_, V.dim());
  }

  const SuperAlgebra& source() const { return V_; }
  const Truncation& truncation() const { return T_; }
  const FreeAlgebra& algebra() const { return ideal_.algebra(); }
  const IdealBuilder& ideal() const { return ideal_; }
  const WeightComponent& umin1() const { return umin1_; }
  const WeightComponent& u0() const { return u0_; }
  const SpecialityResult& speciality() const { return speciality_; }

  /// True when the quotient basis of U_{-1} is exactly the generators.
  bool umin1_is_v() const {
    if (umin1_.quotient_basis.size() != V_.dim()) return false;
    for (const auto& m : umin1_.quotient_basis)
      if (m.size() != 1 || !algebra().alphabet().is_base(m[0]) || algebra().alphabet().order_of(m[0]) != 0)
        return false;
    return true;
  }

  /// Class of a·u in U_{-1}, or nothing when a·u leaves the window.
  std::optional<EnvElement> multiply(std::size_t a, const Monomial& u) const {
    try {
      return umin1_.normal_form(algebra().mul(algebra().gen(a), EnvElement{{u, Rational(1)}}));
    } catch (const TruncationOverflow&) {
      return std::nullopt;
    }
  }

  /// Class of {a, u} in U_0.
  std::optional<EnvElement> bracket(std::size_t a, const Monomial& u) const {
    try {
      return u0_.normal_form(algebra().bracket(algebra().gen(a), EnvElement{{u, Rational(1)}}));
    } catch (const TruncationOverflow&) {
      return std::nullopt;
    }
  }

  /// Class of d(w) in U_0 for w of weight -1.
  std::optional<EnvElement> derivative(const Monomial& w) const {
    try {
      return u0_.normal_form(algebra().d(EnvElement{{w, Rational(1)}}));
    } catch (const TruncationOverflow&) {
      return std::nullopt;
    }
  }

  /// Coordinates over the generators of an element of U_{-1} (requires umin1_is_v()).
  gdcore::Vec coordinates(const EnvElement& e) const {
    gdcore::Vec v(V_.dim(), Rational(0));
    for (const auto& [m, c] : e) {
      if (m.size() != 1 || !algebra().alphabet().is_base(m[0]) || algebra().alphabet().order_of(m[0]) != 0)
        throw AlgebraError("element of U_{-1} is not reduced to V: " + algebra().label(m));
      v[algebra().alphabet().gen_of(m[0])] += c;
    }
    return v;
  }

 private:
  SuperAlgebra V_;
  Truncation T_;
  IdealBuilder ideal_;
  WeightComponent umin1_, u0_;
  SpecialityResult speciality_;
};

inline PdEnvelope build_pd_envelope(const SuperAlgebra& V, const Truncation& T) {
  detail::require(gdcore::check_gd(V), "build_pd_envelope", V.name);
  detail::require_free_window(T, "build_pd_envelope");
  PdEnvelope P(V, T);
  if (P.speciality().exceptional())
    throw AlgebraError("build_pd_envelope: '" + V.name + "' has a nonzero speciality kernel, V does not embed");
  return P;
}

}  // namespace gdconf::envelope
