#pragma once

// Exact linear algebra: a fraction-free sparse row-echelon engine over the
// integers, rational kernels, and the linear solver for systems whose
// coefficients are vector-valued polynomials.

#include "gdconf/exactpoly/poly.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gdconf::exactpoly {

using SparseRow = std::vector<std::pair<std::size_t, Integer>>;  // sorted by column
using RationalVector = std::vector<Rational>;

namespace detail {

inline void make_primitive(SparseRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(row.front().second) < 0) g = -g;
  if (g != 1)
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// a*x - b*y over sparse rows
inline SparseRow combine(const Integer& a, const SparseRow& x, const Integer& b, const SparseRow& y) {
  SparseRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      Integer v = a * x[i].second - b * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace detail

/// Converts a rational vector to (integer row, positive common denominator).
inline std::pair<SparseRow, Integer> to_integer_row(const std::map<std::size_t, Rational>& v) {
  Integer den = 1;
  for (const auto& [c, q] : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  SparseRow row;
  for (const auto& [c, q] : v) {
    if (sgn(q) == 0) continue;
    Integer n = q.get_num() * (den / q.get_den());
    row.emplace_back(c, std::move(n));
  }
  return {std::move(row), den};
}

/// Incremental row-echelon form with integer (fraction-free) rows. The
/// leading entry of a row is its smallest column. Rows are kept primitive.
class RowEchelon {
 public:
  RowEchelon() = default;
  explicit RowEchelon(std::size_t columns) : columns_(columns) {}

  std::size_t columns() const { return columns_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseRow>& rows() const { return rows_; }
  bool is_pivot(std::size_t col) const { return pivot_.count(col) != 0; }

  /// Adds a row; returns false when it is already in the span.
  bool insert(SparseRow row) {
    while (!row.empty()) {
      auto it = pivot_.find(row.front().first);
      if (it == pivot_.end()) break;
      const SparseRow& p = rows_[it->second];
      Integer a = p.front().second, b = row.front().second;
      Integer g = gcd(a, b);
      a /= g;
      b /= g;
      row = detail::combine(a, row, b, p);
      detail::make_primitive(row);
    }
    if (row.empty()) return false;
    detail::make_primitive(row);
    if (row.back().first >= columns_) columns_ = row.back().first + 1;
    pivot_[row.front().first] = rows_.size();
    rows_.push_back(std::move(row));
    return true;
  }

  bool insert(const std::map<std::size_t, Rational>& v) { return insert(to_integer_row(v).first); }

  /// Full normal form of v modulo the row space: every pivot column is
  /// eliminated. Returns the remainder as exact rationals.
  std::map<std::size_t, Rational> reduce(const std::map<std::size_t, Rational>& v) const {
    auto [row, den] = to_integer_row(v);
    std::size_t cursor = 0;
    while (true) {
      std::size_t k = 0;
      while (k < row.size() && (row[k].first < cursor || !pivot_.count(row[k].first))) ++k;
      if (k == row.size()) break;
      const SparseRow& p = rows_[pivot_.at(row[k].first)];
      Integer a = p.front().second, b = row[k].second;
      Integer g = gcd(a, b);
      a /= g;
      b /= g;
      cursor = row[k].first + 1;
      row = detail::combine(a, row, b, p);
      den *= a;
    }
    std::map<std::size_t, Rational> out;
    for (auto& [c, n] : row) {
      Rational q(n, den);
      q.canonicalize();
      out.emplace(c, q);
    }
    return out;
  }

  bool contains(const std::map<std::size_t, Rational>& v) const { return reduce(v).empty(); }

  /// Reduced echelon form: each pivot column is nonzero only in its own row.
  void back_substitute() {
    std::vector<std::pair<std::size_t, std::size_t>> order(pivot_.begin(), pivot_.end());
    // process pivots from the right so earlier rows see fully reduced later rows
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      SparseRow& row = rows_[it->second];
      std::size_t cursor = row.front().first + 1;
      while (true) {
        std::size_t k = 0;
        while (k < row.size() && (row[k].first < cursor || !pivot_.count(row[k].first))) ++k;
        if (k == row.size()) break;
        const SparseRow& p = rows_[pivot_.at(row[k].first)];
        Integer a = p.front().second, b = row[k].second;
        Integer g = gcd(a, b);
        a /= g;
        b /= g;
        cursor = row[k].first + 1;
        row = detail::combine(a, row, b, p);
      }
      detail::make_primitive(row);
    }
  }

  /// Columns without a pivot, in increasing order.
  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < columns_; ++c)
      if (!pivot_.count(c)) out.push_back(c);
    return out;
  }

 private:
  std::size_t columns_ = 0;
  std::vector<SparseRow> rows_;
  std::unordered_map<std::size_t, std::size_t> pivot_;
};

/// Scales to a primitive integer vector whose first nonzero entry is positive.
inline RationalVector normalize_direction(RationalVector v) {
  Integer den = 1, g = 0;
  for (const auto& q : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> n;
  for (const auto& q : v) {
    n.push_back(q.get_num() * (den / q.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.back().get_mpz_t());
  }
  if (g == 0) return v;
  for (const auto& x : n)
    if (x != 0) {
      if (x < 0) g = -g;
      break;
    }
  RationalVector out;
  for (auto& x : n) out.emplace_back(Rational(x / g));
  return out;
}

/// Basis of {x : rows * x = 0}, one vector per free column, normalized.
inline std::vector<RationalVector> kernel(const std::vector<RationalVector>& rows, std::size_t columns) {
  RowEchelon ech(columns);
  for (const auto& r : rows) {
    std::map<std::size_t, Rational> m;
    for (std::size_t c = 0; c < r.size(); ++c)
      if (sgn(r[c]) != 0) m.emplace(c, r[c]);
    ech.insert(m);
  }
  ech.back_substitute();
  std::vector<RationalVector> basis;
  for (std::size_t f : ech.free_columns()) {
    RationalVector x(columns, Rational(0));
    x[f] = 1;
    for (const auto& row : ech.rows()) {
      for (const auto& [c, v] : row)
        if (c == f) {
          Rational q(-v, row.front().second);
          q.canonicalize();
          x[row.front().first] = q;
        }
    }
    basis.push_back(normalize_direction(std::move(x)));
  }
  return basis;
}

inline std::size_t rank(const std::vector<RationalVector>& rows) {
  RowEchelon ech;
  for (const auto& r : rows) {
    std::map<std::size_t, Rational> m;
    for (std::size_t c = 0; c < r.size(); ++c)
      if (sgn(r[c]) != 0) m.emplace(c, r[c]);
    ech.insert(m);
  }
  return ech.rank();
}

/// Solves Σ_i a_i * coeffs[i] = 0 for rational a, where coeffs[i] is the
/// VecPoly multiplying unknown i in one equation.
using LinearEquation = std::vector<VecPoly>;

inline std::vector<RationalVector> vecpoly_linsolve(std::span<const LinearEquation> system, std::size_t unknowns) {
  // one scalar row per (equation, component, monomial)
  std::vector<RationalVector> rows;
  for (const auto& eq : system) {
    if (eq.size() != unknowns) throw std::invalid_argument("equation arity does not match unknown count");
    std::map<std::pair<std::size_t, Exponent>, RationalVector> scalar;
    std::optional<VarSet> vars;
    for (std::size_t u = 0; u < unknowns; ++u) {
      if (vars && !(eq[u].vars() == *vars)) throw VariableError("variable-set mismatch in system");
      vars = eq[u].vars();
      for (std::size_t comp = 0; comp < eq[u].dim(); ++comp)
        for (const auto& [e, c] : eq[u][comp].terms()) {
          auto [it, fresh] = scalar.try_emplace({comp, e}, RationalVector(unknowns, Rational(0)));
          it->second[u] += c;
        }
    }
    for (auto& [key, row] : scalar) rows.push_back(std::move(row));
  }
  return kernel(rows, unknowns);
}

}  // namespace gdconf::exactpoly
