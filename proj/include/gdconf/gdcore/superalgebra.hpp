#pragma once

// Finite-dimensional Z2-graded algebras given by rational structure constants.

#include "gdconf/exactpoly/linalg.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gdconf::gdcore {

using exactpoly::Rational;
using Vec = std::vector<Rational>;

enum class Parity : std::uint8_t { even = 0, odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<int>(a) ^ static_cast<int>(b));
}
inline int koszul(Parity a, Parity b) { return (a == Parity::odd && b == Parity::odd) ? -1 : 1; }
inline const char* parity_name(Parity p) { return p == Parity::even ? "even" : "odd"; }

class AlgebraError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Generator labels with parities; even generators come first.
class SuperBasis {
 public:
  SuperBasis() = default;
  SuperBasis(std::vector<std::string> names, std::vector<Parity> parity, bool require_even_first = true)
      : names_(std::move(names)), parity_(std::move(parity)) {
    if (names_.size() != parity_.size()) throw AlgebraError("label/parity count mismatch");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw AlgebraError("empty generator label");
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j]) throw AlgebraError("duplicate generator label '" + names_[i] + "'");
      if (require_even_first && i > 0 && parity_[i - 1] == Parity::odd && parity_[i] == Parity::even)
        throw AlgebraError("even generators must precede odd generators");
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  Parity parity(std::size_t i) const { return parity_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Parity>& parities() const { return parity_; }

  std::optional<std::size_t> find(const std::string& label) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == label) return i;
    return std::nullopt;
  }

  friend bool operator==(const SuperBasis&, const SuperBasis&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Parity> parity_;
};

/// Bilinear product on a basis of size n: entry (i, j) is the vector e_i * e_j.
class StructureTensor {
 public:
  StructureTensor() = default;
  explicit StructureTensor(std::size_t n) : n_(n), data_(n * n * n, Rational(0)) {}

  std::size_t dim() const { return n_; }
  Rational& at(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * n_ + j) * n_ + k]; }
  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const { return data_[(i * n_ + j) * n_ + k]; }

  Vec entry(std::size_t i, std::size_t j) const {
    return Vec(data_.begin() + (i * n_ + j) * n_, data_.begin() + (i * n_ + j + 1) * n_);
  }
  void set_entry(std::size_t i, std::size_t j, const Vec& v) {
    for (std::size_t k = 0; k < n_; ++k) at(i, j, k) = v.at(k);
  }

  Vec apply(const Vec& a, const Vec& b) const {
    Vec out(n_, Rational(0));
    for (std::size_t i = 0; i < n_; ++i) {
      if (sgn(a[i]) == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (sgn(b[j]) == 0) continue;
        Rational s = a[i] * b[j];
        for (std::size_t k = 0; k < n_; ++k)
          if (sgn(at(i, j, k)) != 0) out[k] += s * at(i, j, k);
      }
    }
    return out;
  }

  bool is_zero() const {
    for (const auto& q : data_)
      if (sgn(q) != 0) return false;
    return true;
  }

  friend bool operator==(const StructureTensor&, const StructureTensor&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

/// A superalgebra with a "circle" product and an optional bracket. For
/// Poisson data the circle tensor holds the commutative associative product.
struct SuperAlgebra {
  std::string name;
  SuperBasis basis;
  std::optional<StructureTensor> circ;
  std::optional<StructureTensor> bracket;

  std::size_t dim() const { return basis.size(); }
  Vec unit(std::size_t i) const {
    Vec v(dim(), Rational(0));
    v.at(i) = 1;
    return v;
  }
  Vec zero() const { return Vec(dim(), Rational(0)); }

  const StructureTensor& circ_or_throw() const {
    if (!circ) throw AlgebraError("algebra '" + name + "' has no circle product");
    return *circ;
  }
  const StructureTensor& bracket_or_throw() const {
    if (!bracket) throw AlgebraError("algebra '" + name + "' has no bracket");
    return *bracket;
  }

  /// Throws when a product of parities i, j has a component outside parity i+j.
  void validate() const {
    for (const auto* t : {circ ? &*circ : nullptr, bracket ? &*bracket : nullptr}) {
      if (!t) continue;
      if (t->dim() != dim()) throw AlgebraError("structure tensor dimension mismatch");
      for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
          for (std::size_t k = 0; k < dim(); ++k)
            if (sgn(t->at(i, j, k)) != 0 && basis.parity(i) + basis.parity(j) != basis.parity(k))
              throw AlgebraError("product " + basis.name(i) + "*" + basis.name(j) + " has a component on " +
                                 basis.name(k) + " of the wrong parity");
    }
  }

  friend bool operator==(const SuperAlgebra&, const SuperAlgebra&) = default;
};

inline SuperAlgebra make_algebra(std::string name, SuperBasis basis) {
  SuperAlgebra a{std::move(name), std::move(basis), std::nullopt, std::nullopt};
  return a;
}

inline bool is_zero_vec(const Vec& v) {
  for (const auto& q : v)
    if (sgn(q) != 0) return false;
  return true;
}

inline Vec add(Vec a, const Vec& b, const Rational& s = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

inline std::string vec_to_string(const Vec& v, const SuperBasis& basis) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    Rational a = abs(v[i]);
    if (out.empty())
      out += sgn(v[i]) < 0 ? "-" : "";
    else
      out += sgn(v[i]) < 0 ? " - " : " + ";
    if (a != 1) out += a.get_str() + "*";
    out += basis.name(i);
  }
  return out.empty() ? "0" : out;
}

/// Parity of a homogeneous vector; nullopt for zero or mixed vectors.
inline std::optional<Parity> parity_of(const Vec& v, const SuperBasis& basis) {
  std::optional<Parity> p;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    if (p && *p != basis.parity(i)) return std::nullopt;
    p = basis.parity(i);
  }
  return p;
}

}  // namespace gdconf::gdcore
