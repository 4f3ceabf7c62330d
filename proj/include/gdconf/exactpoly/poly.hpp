#pragma once

// Sparse multivariate polynomials with rational coefficients in a small,
// named set of commuting variables (at most four: e.g. d, lambda, mu, x).

#include "gdconf/exactpoly/rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gdconf::exactpoly {

inline constexpr std::size_t kMaxVars = 4;

class VariableError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An interned, ordered list of variable names. Two VarSets compare equal iff
/// they list the same names in the same order.
class VarSet {
 public:
  VarSet() : names_(&intern({})) {}
  VarSet(std::initializer_list<std::string_view> names)
      : names_(&intern(std::vector<std::string>(names.begin(), names.end()))) {}
  explicit VarSet(const std::vector<std::string>& names) : names_(&intern(names)) {}

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }

  std::optional<std::size_t> find(std::string_view n) const {
    for (std::size_t i = 0; i < names_->size(); ++i)
      if ((*names_)[i] == n) return i;
    return std::nullopt;
  }
  std::size_t index_of(std::string_view n) const {
    auto i = find(n);
    if (!i) throw VariableError("unknown variable '" + std::string(n) + "'");
    return *i;
  }

  friend bool operator==(const VarSet& a, const VarSet& b) { return a.names_ == b.names_; }

 private:
  static const std::vector<std::string>& intern(std::vector<std::string> names) {
    static std::mutex mu;
    static std::deque<std::vector<std::string>> pool;
    if (names.size() > kMaxVars) throw VariableError("too many variables");
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j = i + 1; j < names.size(); ++j)
        if (names[i] == names[j]) throw VariableError("duplicate variable '" + names[i] + "'");
    std::lock_guard lock(mu);
    for (const auto& p : pool)
      if (p == names) return p;
    pool.push_back(std::move(names));
    return pool.back();
  }

  const std::vector<std::string>* names_;
};

using Exponent = std::array<std::uint16_t, kMaxVars>;

class FormalPoly {
 public:
  using Terms = std::map<Exponent, Rational>;

  FormalPoly() = default;
  explicit FormalPoly(VarSet vars) : vars_(vars) {}
  FormalPoly(VarSet vars, const Rational& c) : vars_(vars) {
    if (!exactpoly::is_zero(c)) terms_[Exponent{}] = c;
  }

  static FormalPoly constant(VarSet vars, const Rational& c) { return FormalPoly(vars, c); }
  static FormalPoly variable(VarSet vars, std::string_view name, unsigned power = 1) {
    FormalPoly p(vars);
    Exponent e{};
    e[vars.index_of(name)] = static_cast<std::uint16_t>(power);
    p.terms_[e] = 1;
    return p;
  }
  static FormalPoly monomial(VarSet vars, const Exponent& e, const Rational& c) {
    FormalPoly p(vars);
    if (!exactpoly::is_zero(c)) p.terms_[e] = c;
    return p;
  }

  const VarSet& vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  int degree(std::string_view var) const {
    auto i = vars_.index_of(var);
    int deg = -1;
    for (const auto& [e, c] : terms_) deg = std::max(deg, int(e[i]));
    return deg;
  }

  /// The coefficient of var^k, as a polynomial in the remaining variables
  /// (same variable set, var exponent zero).
  FormalPoly coefficient_of(std::string_view var, unsigned k) const {
    auto i = vars_.index_of(var);
    FormalPoly out(vars_);
    for (const auto& [e, c] : terms_)
      if (e[i] == k) {
        Exponent f = e;
        f[i] = 0;
        out.terms_[f] = c;
      }
    return out;
  }

  FormalPoly& operator+=(const FormalPoly& q) {
    require_same(q);
    for (const auto& [e, c] : q.terms_) add_term(e, c);
    return *this;
  }
  FormalPoly& operator-=(const FormalPoly& q) {
    require_same(q);
    for (const auto& [e, c] : q.terms_) add_term(e, -c);
    return *this;
  }
  FormalPoly& operator*=(const Rational& s) {
    if (exactpoly::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend FormalPoly operator+(FormalPoly p, const FormalPoly& q) { return p += q; }
  friend FormalPoly operator-(FormalPoly p, const FormalPoly& q) { return p -= q; }
  friend FormalPoly operator-(FormalPoly p) { return p *= Rational(-1); }
  friend FormalPoly operator*(FormalPoly p, const Rational& s) { return p *= s; }
  friend FormalPoly operator*(const Rational& s, FormalPoly p) { return p *= s; }
  friend FormalPoly operator*(const FormalPoly& p, const FormalPoly& q) { return poly_mul(p, q); }
  FormalPoly& operator*=(const FormalPoly& q) { return *this = poly_mul(*this, q); }

  friend bool operator==(const FormalPoly& p, const FormalPoly& q) {
    return p.vars_ == q.vars_ && p.terms_ == q.terms_;
  }

  friend FormalPoly poly_mul(const FormalPoly& p, const FormalPoly& q) {
    p.require_same(q);
    FormalPoly out(p.vars_);
    for (const auto& [e1, c1] : p.terms_)
      for (const auto& [e2, c2] : q.terms_) {
        Exponent e;
        for (std::size_t i = 0; i < kMaxVars; ++i) e[i] = static_cast<std::uint16_t>(e1[i] + e2[i]);
        out.add_term(e, c1 * c2);
      }
    return out;
  }

  FormalPoly pow(unsigned k) const {
    FormalPoly r(vars_, Rational(1)), base = *this;
    while (k) {
      if (k & 1u) r = r * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return r;
  }

  /// Composite p(..., var := expr, ...). expr must live in the same variable set.
  friend FormalPoly poly_substitute(const FormalPoly& p, std::string_view var, const FormalPoly& expr) {
    p.require_same(expr);
    auto i = p.vars_.index_of(var);
    // group by the power of var
    std::map<unsigned, FormalPoly> by_power;
    for (const auto& [e, c] : p.terms_) {
      Exponent f = e;
      f[i] = 0;
      auto [it, fresh] = by_power.try_emplace(e[i], p.vars_);
      it->second.add_term(f, c);
    }
    FormalPoly out(p.vars_);
    FormalPoly power(p.vars_, Rational(1));
    unsigned current = 0;
    for (const auto& [k, coeff] : by_power) {
      while (current < k) {
        power = power * expr;
        ++current;
      }
      out += coeff * power;
    }
    return out;
  }

  /// Substitutes a rational value for var.
  FormalPoly evaluate(std::string_view var, const Rational& value) const {
    return poly_substitute(*this, var, FormalPoly(vars_, value));
  }

  /// Re-expresses the polynomial over another variable set; every variable
  /// actually used must exist there.
  FormalPoly rebase(VarSet target) const {
    if (target == vars_) return *this;
    std::array<std::size_t, kMaxVars> map{};
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto j = target.find(vars_.name(i));
      map[i] = j ? *j : kMaxVars;
    }
    FormalPoly out(target);
    for (const auto& [e, c] : terms_) {
      Exponent f{};
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (e[i] == 0) continue;
        if (map[i] == kMaxVars)
          throw VariableError("variable '" + vars_.name(i) + "' missing from target set");
        f[map[i]] = e[i];
      }
      out.add_term(f, c);
    }
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest exponents first reads naturally: d^2 + 2*d*lambda + ...
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      bool unit_mono = true;
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (e[i]) unit_mono = false;
      Rational a = abs(c);
      if (first)
        os << (sgn(c) < 0 ? "-" : "");
      else
        os << (sgn(c) < 0 ? " - " : " + ");
      first = false;
      bool need_star = false;
      if (unit_mono || a != 1) {
        os << a.get_str();
        need_star = true;
      }
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (!e[i]) continue;
        if (need_star) os << "*";
        os << vars_.name(i);
        if (e[i] > 1) os << "^" << e[i];
        need_star = true;
      }
    }
    return os.str();
  }

 private:
  void require_same(const FormalPoly& q) const {
    if (!(vars_ == q.vars_)) throw VariableError("variable-set mismatch");
  }
  void add_term(const Exponent& e, const Rational& c) {
    if (exactpoly::is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (exactpoly::is_zero(it->second)) terms_.erase(it);
    }
  }

  VarSet vars_;
  Terms terms_;
};

/// A vector of polynomials indexed by the basis of a finite-dimensional space.
class VecPoly {
 public:
  VecPoly() = default;
  VecPoly(VarSet vars, std::size_t dim) : vars_(vars), comps_(dim, FormalPoly(vars)) {}

  static VecPoly unit(VarSet vars, std::size_t dim, std::size_t i, const FormalPoly& coeff) {
    VecPoly v(vars, dim);
    v.comps_.at(i) = coeff;
    return v;
  }
  static VecPoly unit(VarSet vars, std::size_t dim, std::size_t i) {
    return unit(vars, dim, i, FormalPoly(vars, Rational(1)));
  }

  const VarSet& vars() const { return vars_; }
  std::size_t dim() const { return comps_.size(); }
  const FormalPoly& operator[](std::size_t i) const { return comps_[i]; }
  FormalPoly& operator[](std::size_t i) { return comps_[i]; }
  auto begin() const { return comps_.begin(); }
  auto end() const { return comps_.end(); }

  bool is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const FormalPoly& p) { return p.is_zero(); });
  }

  VecPoly& operator+=(const VecPoly& o) {
    require_same(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
  }
  VecPoly& operator-=(const VecPoly& o) {
    require_same(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
    return *this;
  }
  VecPoly& operator*=(const Rational& s) {
    for (auto& p : comps_) p *= s;
    return *this;
  }
  VecPoly& operator*=(const FormalPoly& s) {
    for (auto& p : comps_)
      if (!p.is_zero()) p = p * s;
    return *this;
  }
  friend VecPoly operator+(VecPoly a, const VecPoly& b) { return a += b; }
  friend VecPoly operator-(VecPoly a, const VecPoly& b) { return a -= b; }
  friend VecPoly operator*(VecPoly a, const Rational& s) { return a *= s; }
  friend VecPoly operator*(const Rational& s, VecPoly a) { return a *= s; }
  friend VecPoly operator*(const FormalPoly& s, VecPoly a) { return a *= s; }
  friend bool operator==(const VecPoly& a, const VecPoly& b) {
    return a.vars_ == b.vars_ && a.comps_ == b.comps_;
  }

  friend VecPoly poly_substitute(const VecPoly& v, std::string_view var, const FormalPoly& expr) {
    VecPoly out(v.vars_, v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i)
      if (!v.comps_[i].is_zero()) out.comps_[i] = poly_substitute(v.comps_[i], var, expr);
    return out;
  }

  int degree(std::string_view var) const {
    int d = -1;
    for (const auto& p : comps_) d = std::max(d, p.degree(var));
    return d;
  }

  /// Renders as "(p0)*b0 + (p1)*b1" using the given basis labels.
  std::string to_string(const std::vector<std::string>& labels) const {
    std::string out;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      if (comps_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + comps_[i].to_string() + ")*" + (i < labels.size() ? labels[i] : "e" + std::to_string(i));
    }
    return out.empty() ? "0" : out;
  }

 private:
  void require_same(const VecPoly& o) const {
    if (!(vars_ == o.vars_)) throw VariableError("variable-set mismatch");
    if (comps_.size() != o.comps_.size()) throw std::invalid_argument("dimension mismatch");
  }

  VarSet vars_;
  std::vector<FormalPoly> comps_;
};

}  // namespace gdconf::exactpoly
