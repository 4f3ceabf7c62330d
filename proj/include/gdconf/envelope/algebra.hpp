#pragma once

// Truncated free differential supercommutative algebra (defined mode) or
// free differential Poisson superalgebra (free mode) on a graded set X.
// Elements are exact linear combinations of sorted monomials.

#include "gdconf/envelope/alphabet.hpp"

#include <functional>

namespace gdconf::envelope {

using EnvElement = std::map<Monomial, Rational>;

/// Coefficients of the letter formula {x^(m), y^(n)} = (n+a) x^(m+1) y^(n) - (m+b) x^(m) y^(n+1).
struct BracketRule {
  int a = -1;
  int b = -1;
};

class FreeAlgebra {
 public:
  FreeAlgebra(SuperBasis gens, Truncation T, Mode mode, BracketRule rule = {})
      : T_(checked(T)), mode_(mode), rule_(rule),
        alpha_(std::move(gens), T.max_diff_order,
               mode == Mode::free ? std::max(1, std::min(T.max_bracket_depth + 1, T.max_degree)) : 1) {}

  const Alphabet& alphabet() const { return alpha_; }
  const Truncation& truncation() const { return T_; }
  Mode mode() const { return mode_; }

  // ---- monomial data
  int weight(const Monomial& m) const {
    int w = 0;
    for (auto l : m) w += alpha_.letter(l).weight;
    return w;
  }
  int degree(const Monomial& m) const {
    int d = 0;
    for (auto l : m) d += int(alpha_.length(l));
    return d;
  }
  Parity parity(const Monomial& m) const {
    Parity p = Parity::even;
    for (auto l : m) p = p + alpha_.letter(l).parity;
    return p;
  }
  bool odd(LetterId l) const { return alpha_.letter(l).parity == Parity::odd; }

  std::string label(const Monomial& m) const {
    if (m.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) out += (i ? "*" : "") + alpha_.letter(m[i]).label;
    return out;
  }

  std::string to_string(const EnvElement& e) const {
    if (e.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : e) {
      bool neg = sgn(c) < 0;
      Rational a = neg ? Rational(-c) : c;
      out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      if (m.empty()) out += exactpoly::to_string(a);
      else out += (a == 1 ? "" : exactpoly::to_string(a) + "*") + label(m);
    }
    return out;
  }

  /// Sorts a letter sequence; returns 0 when an odd letter repeats, else the Koszul sign.
  int sort_sign(Monomial& seq) const {
    int sign = 1;
    for (std::size_t i = 1; i < seq.size(); ++i)
      for (std::size_t j = i; j > 0 && seq[j - 1] >= seq[j]; --j) {
        if (seq[j - 1] == seq[j]) {
          if (odd(seq[j])) return 0;
          break;
        }
        if (odd(seq[j - 1]) && odd(seq[j])) sign = -sign;
        std::swap(seq[j - 1], seq[j]);
      }
    for (std::size_t i = 1; i < seq.size(); ++i)
      if (seq[i - 1] == seq[i] && odd(seq[i])) return 0;
    return sign;
  }

  // ---- elements
  EnvElement one() const { return {{Monomial{}, Rational(1)}}; }
  EnvElement letter(LetterId l) const { return {{Monomial{l}, Rational(1)}}; }
  EnvElement gen(std::size_t g, int order = 0) const { return letter(alpha_.base(g, order)); }
  EnvElement combo(const LetterCombo& c) const {
    EnvElement e;
    for (const auto& [l, q] : c) add_term(e, Monomial{l}, q);
    return e;
  }
  /// Σ v_k x_k for a coordinate vector over the generators.
  EnvElement linear(const gdcore::Vec& v) const {
    EnvElement e;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (sgn(v[k]) != 0) add_term(e, Monomial{alpha_.base(k, 0)}, v[k]);
    return e;
  }

  static void add_term(EnvElement& e, const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, fresh] = e.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (sgn(it->second) == 0) e.erase(it);
    }
  }
  static void add(EnvElement& e, const EnvElement& f, const Rational& c = 1) {
    for (const auto& [m, q] : f) add_term(e, m, c * q);
  }
  static EnvElement sum(EnvElement e, const EnvElement& f, const Rational& c = 1) {
    add(e, f, c);
    return e;
  }

  /// Appends the product of a letter sequence times coefficient to e.
  void add_sequence(EnvElement& e, Monomial seq, const Rational& c) const {
    int s = sort_sign(seq);
    if (s == 0) return;
    if (degree(seq) > T_.max_degree) throw TruncationOverflow("product degree beyond R: " + label(seq));
    add_term(e, seq, s * c);
  }

  EnvElement mul(const EnvElement& u, const EnvElement& v) const {
    EnvElement out;
    for (const auto& [a, ca] : u)
      for (const auto& [b, cb] : v) {
        Monomial seq = a;
        seq.insert(seq.end(), b.begin(), b.end());
        add_sequence(out, std::move(seq), ca * cb);
      }
    return out;
  }

  EnvElement d(const EnvElement& u) const {
    EnvElement out;
    for (const auto& [m, c] : u)
      for (std::size_t i = 0; i < m.size(); ++i)
        for (const auto& [l, q] : alpha_.derivative(m[i])) {
          Monomial seq = m;
          seq[i] = l;
          add_sequence(out, std::move(seq), c * q);
        }
    return out;
  }

  EnvElement d_pow(EnvElement u, int k) const {
    for (int i = 0; i < k; ++i) u = d(u);
    return u;
  }

  /// Bracket of two letters, as an element.
  EnvElement letter_bracket(LetterId x, LetterId y) const {
    if (mode_ == Mode::free) return combo(alpha_.bracket(x, y));
    if (!alpha_.is_base(x) || !alpha_.is_base(y)) throw std::logic_error("defined mode has only base letters");
    auto gx = alpha_.gen_of(x), gy = alpha_.gen_of(y);
    int m = alpha_.order_of(x), n = alpha_.order_of(y);
    EnvElement out;
    if (n + rule_.a != 0) add_sequence(out, {alpha_.base(gx, m + 1), alpha_.base(gy, n)}, Rational(n + rule_.a));
    if (m + rule_.b != 0) add_sequence(out, {alpha_.base(gx, m), alpha_.base(gy, n + 1)}, Rational(-(m + rule_.b)));
    return out;
  }

  /// Leibniz extension of the letter bracket to all monomials, with Koszul signs.
  EnvElement bracket(const EnvElement& u, const EnvElement& v) const {
    EnvElement out;
    for (const auto& [A, ca] : u)
      for (const auto& [B, cb] : v) {
        int pv = parity(B) == Parity::odd;
        for (std::size_t i = 0; i < A.size(); ++i) {
          int right_a = 0;
          for (std::size_t k = i + 1; k < A.size(); ++k) right_a += odd(A[k]);
          int left_b = 0;
          for (std::size_t j = 0; j < B.size(); ++j) {
            int sign = ((right_a * pv) + (odd(A[i]) * left_b)) % 2 ? -1 : 1;
            auto inner = letter_bracket(A[i], B[j]);
            for (const auto& [c, q] : inner) {
              Monomial seq(A.begin(), A.begin() + i);
              seq.insert(seq.end(), B.begin(), B.begin() + j);
              seq.insert(seq.end(), c.begin(), c.end());
              seq.insert(seq.end(), B.begin() + j + 1, B.end());
              seq.insert(seq.end(), A.begin() + i + 1, A.end());
              add_sequence(out, std::move(seq), sign * ca * cb * q);
            }
            left_b += odd(B[j]);
          }
        }
      }
    return out;
  }

 private:
  static Truncation checked(Truncation T) {
    T.validate();
    return T;
  }

  Truncation T_;
  Mode mode_;
  BracketRule rule_;
  Alphabet alpha_;
};

}  // namespace gdconf::envelope
