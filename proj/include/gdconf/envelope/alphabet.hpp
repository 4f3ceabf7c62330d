#pragma once

// Letters of the truncated free differential (Poisson) superalgebra on X.
// A base letter is x^(n) = d^n(x). In free mode a Lie letter is a basis
// element of the free Lie superalgebra on base letters; the basis for each
// multiset of base letters is read off inside the tensor algebra, where the
// bracket is the super-commutator. Letters are numbered in canonical order:
// base letters by (generator, order), then Lie letters by (length, content,
// basis index). Monomials are sorted letter-id sequences.

#include "gdconf/gdcore/superalgebra.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gdconf::envelope {

using exactpoly::Rational;
using gdcore::Parity;
using gdcore::SuperBasis;

using LetterId = std::uint16_t;
using Monomial = std::vector<LetterId>;

enum class Mode { defined, free };

inline std::string to_string(Mode m) { return m == Mode::defined ? "defined" : "free"; }

class TruncationOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Truncation {
  int max_diff_order = 2;     // D
  int max_degree = 4;         // R, counted in base letters
  int max_bracket_depth = 2;  // B; 0 means no Lie letters

  void validate() const {
    if (max_diff_order < 1 || max_degree < 1 || max_bracket_depth < 0)
      throw std::invalid_argument("truncation needs D >= 1, R >= 1, B >= 0");
    if (max_bracket_depth > 4) throw std::invalid_argument("truncation: bracket depth above 4 is not supported");
  }
  friend bool operator==(const Truncation&, const Truncation&) = default;
};

/// Linear combination of letters.
using LetterCombo = std::vector<std::pair<LetterId, Rational>>;

class Alphabet {
 public:
  using Word = std::vector<LetterId>;  // word in base letters
  using Tensor = std::map<Word, Rational>;

  struct Letter {
    std::vector<LetterId> content;  // sorted base letters
    Parity parity = Parity::even;
    int weight = 0;
    std::string label;
    Tensor tensor;
  };

  Alphabet(SuperBasis gens, int max_order, int max_length) : gens_(std::move(gens)), D_(max_order), L_(max_length) {
    if (max_order < 0 || max_length < 1) throw std::invalid_argument("alphabet bounds");
    if (gens_.size() * (max_order + 1) > 4096) throw std::invalid_argument("alphabet too large");
    for (std::size_t g = 0; g < gens_.size(); ++g)
      for (int n = 0; n <= D_; ++n) {
        Letter l;
        auto id = LetterId(letters_.size());
        l.content = {id};
        l.parity = gens_.parity(g);
        l.weight = n - 1;
        l.label = base_label(g, n);
        l.tensor[{id}] = 1;
        letters_.push_back(std::move(l));
      }
    base_count_ = letters_.size();
    for (int len = 2; len <= L_; ++len) build_length(len);
  }

  const SuperBasis& generators() const { return gens_; }
  int max_order() const { return D_; }
  int max_length() const { return L_; }
  std::size_t size() const { return letters_.size(); }
  std::size_t base_count() const { return base_count_; }
  const Letter& letter(LetterId id) const { return letters_.at(id); }

  LetterId base(std::size_t gen, int order) const {
    if (order < 0 || order > D_) throw TruncationOverflow("derivative order " + std::to_string(order) + " beyond D");
    return LetterId(gen * (D_ + 1) + order);
  }
  bool is_base(LetterId id) const { return id < base_count_; }
  std::size_t gen_of(LetterId id) const { return id / (D_ + 1); }
  int order_of(LetterId id) const { return int(id % (D_ + 1)); }
  std::size_t length(LetterId id) const { return letters_.at(id).content.size(); }

  /// Super-commutator of two letters, expanded in the Lie basis.
  LetterCombo bracket(LetterId a, LetterId b) const {
    auto key = std::make_pair(a, b);
    if (auto it = bracket_cache_.find(key); it != bracket_cache_.end()) return it->second;
    const auto& A = letters_.at(a);
    const auto& B = letters_.at(b);
    if (A.content.size() + B.content.size() > std::size_t(L_))
      throw TruncationOverflow("bracket depth beyond B: {" + A.label + "," + B.label + "}");
    auto t = commutator(A.tensor, A.parity, B.tensor, B.parity);
    auto out = express(t);
    bracket_cache_.emplace(key, out);
    return out;
  }

  /// d of a letter: the next derivative for base letters, Leibniz inside Lie words.
  LetterCombo derivative(LetterId a) const {
    if (auto it = d_cache_.find(a); it != d_cache_.end()) return it->second;
    Tensor t;
    for (const auto& [w, c] : letters_.at(a).tensor)
      for (std::size_t p = 0; p < w.size(); ++p) {
        Word v = w;
        if (order_of(v[p]) == D_)
          throw TruncationOverflow("derivative order beyond D in d(" + letters_.at(a).label + ")");
        ++v[p];
        t[v] += c;
      }
    auto out = express(t);
    d_cache_.emplace(a, out);
    return out;
  }

  std::string base_label(std::size_t g, int n) const {
    const auto& x = gens_.name(g);
    if (n <= 3) return x + std::string(std::size_t(n), '\'');
    return x + "^(" + std::to_string(n) + ")";
  }

 private:
  struct Block {
    std::vector<LetterId> basis;      // letters spanning Lie elements of this content
    std::vector<Word> pivots;         // one word per basis element
    std::vector<std::vector<Rational>> inverse;  // inverse of the basis restricted to the pivots
  };

  static std::vector<std::vector<LetterId>> multisets(std::size_t base, int len) {
    std::vector<std::vector<LetterId>> out;
    std::vector<LetterId> cur;
    auto rec = [&](auto&& self, LetterId from) -> void {
      if (int(cur.size()) == len) {
        out.push_back(cur);
        return;
      }
      for (std::size_t i = from; i < base; ++i) {
        cur.push_back(LetterId(i));
        self(self, LetterId(i));
        cur.pop_back();
      }
    };
    rec(rec, 0);
    return out;
  }

  Tensor commutator(const Tensor& A, Parity pa, const Tensor& B, Parity pb) const {
    int s = gdcore::koszul(pa, pb);
    Tensor t;
    for (const auto& [w1, c1] : A)
      for (const auto& [w2, c2] : B) {
        Word ab = w1, ba = w2;
        ab.insert(ab.end(), w2.begin(), w2.end());
        ba.insert(ba.end(), w1.begin(), w1.end());
        t[ab] += c1 * c2;
        t[ba] -= Rational(s) * c1 * c2;
      }
    std::erase_if(t, [](const auto& kv) { return sgn(kv.second) == 0; });
    return t;
  }

  void build_length(int len) {
    for (auto& content : multisets(base_count_, len)) {
      // right-normed brackets {y1,{y2,...,yk}} over distinct orderings span the Lie part
      std::vector<LetterId> perm = content;
      Block block;
      std::vector<Tensor> rows;
      std::vector<std::map<Word, Rational>> reduced;  // echelon rows, leading word first
      do {
        Tensor t = letters_[perm.back()].tensor;
        Parity p = letters_[perm.back()].parity;
        std::string label = letters_[perm.back()].label;
        for (std::size_t k = perm.size() - 1; k-- > 0;) {
          const auto& y = letters_[perm[k]];
          t = commutator(y.tensor, y.parity, t, p);
          p = p + y.parity;
          label = "{" + y.label + "," + label + "}";
        }
        if (t.empty()) continue;
        // independence test against the rows kept so far
        auto r = t;
        for (const auto& e : reduced) {
          const auto& [lead, lc] = *e.begin();
          auto it = r.find(lead);
          if (it == r.end()) continue;
          Rational f = it->second / lc;
          for (const auto& [w, c] : e) r[w] -= f * c;
          std::erase_if(r, [](const auto& kv) { return sgn(kv.second) == 0; });
        }
        if (r.empty()) continue;
        reduced.push_back(r);
        Letter l;
        l.content = content;
        l.parity = p;
        l.weight = int(len) - 1;
        for (auto b : content) l.weight += letters_[b].weight;
        l.label = label;
        l.tensor = t;
        block.basis.push_back(LetterId(letters_.size()));
        rows.push_back(t);
        letters_.push_back(std::move(l));
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (letters_.size() > 65000) throw std::invalid_argument("alphabet too large");
      if (block.basis.empty()) {
        blocks_.emplace(content, std::move(block));
        continue;
      }
      // choose pivot words and invert the square submatrix
      const auto k = rows.size();
      std::vector<std::map<Word, Rational>> ech;
      std::vector<std::vector<Rational>> combo;  // ech[i] = Σ combo[i][j] rows[j]
      for (std::size_t i = 0; i < k; ++i) {
        std::map<Word, Rational> r(rows[i].begin(), rows[i].end());
        std::vector<Rational> c(k, Rational(0));
        c[i] = 1;
        for (std::size_t e = 0; e < ech.size(); ++e) {
          const auto& [lead, lc] = *ech[e].begin();
          auto it = r.find(lead);
          if (it == r.end()) continue;
          Rational f = it->second / lc;
          for (const auto& [w, cc] : ech[e]) r[w] -= f * cc;
          for (std::size_t j = 0; j < k; ++j) c[j] -= f * combo[e][j];
          std::erase_if(r, [](const auto& kv) { return sgn(kv.second) == 0; });
        }
        ech.push_back(std::move(r));
        combo.push_back(std::move(c));
      }
      // back-substitute so each echelon row is the only one touching its lead word
      for (std::size_t i = k; i-- > 0;)
        for (std::size_t e = 0; e < i; ++e) {
          const auto& [lead, lc] = *ech[i].begin();
          auto it = ech[e].find(lead);
          if (it == ech[e].end()) continue;
          Rational f = it->second / lc;
          for (const auto& [w, cc] : ech[i]) ech[e][w] -= f * cc;
          for (std::size_t j = 0; j < k; ++j) combo[e][j] -= f * combo[i][j];
          std::erase_if(ech[e], [](const auto& kv) { return sgn(kv.second) == 0; });
        }
      for (std::size_t i = 0; i < k; ++i) {
        const auto& [lead, lc] = *ech[i].begin();
        block.pivots.push_back(lead);
        std::vector<Rational> row(k);
        for (std::size_t j = 0; j < k; ++j) row[j] = combo[i][j] / lc;
        block.inverse.push_back(std::move(row));
      }
      blocks_.emplace(content, std::move(block));
    }
  }

  // Lie element in the tensor algebra -> combination of letters.
  LetterCombo express(const Tensor& t) const {
    std::map<std::vector<LetterId>, std::map<Word, Rational>> by_content;
    for (const auto& [w, c] : t) {
      if (sgn(c) == 0) continue;
      auto content = w;
      std::sort(content.begin(), content.end());
      by_content[content][w] += c;
    }
    std::map<LetterId, Rational> acc;
    for (auto& [content, part] : by_content) {
      std::erase_if(part, [](const auto& kv) { return sgn(kv.second) == 0; });
      if (part.empty()) continue;
      if (content.size() == 1) {
        acc[content[0]] += part.begin()->second;
        continue;
      }
      if (content.size() > std::size_t(L_)) throw TruncationOverflow("Lie word longer than B+1");
      const auto& block = blocks_.at(content);
      // coordinates: c_j = Σ_i part[pivot_i] * inverse[i][j]
      std::vector<Rational> coord(block.basis.size(), Rational(0));
      for (std::size_t i = 0; i < block.pivots.size(); ++i) {
        auto it = part.find(block.pivots[i]);
        if (it == part.end()) continue;
        for (std::size_t j = 0; j < coord.size(); ++j) coord[j] += it->second * block.inverse[i][j];
      }
      // the element must be reproduced exactly
      Tensor check;
      for (std::size_t j = 0; j < coord.size(); ++j)
        if (sgn(coord[j]) != 0)
          for (const auto& [w, c] : letters_[block.basis[j]].tensor) check[w] += coord[j] * c;
      std::erase_if(check, [](const auto& kv) { return sgn(kv.second) == 0; });
      if (!(check == part)) throw std::logic_error("tensor element is not a Lie element");
      for (std::size_t j = 0; j < coord.size(); ++j)
        if (sgn(coord[j]) != 0) acc[block.basis[j]] += coord[j];
    }
    LetterCombo out;
    for (auto& [id, c] : acc)
      if (sgn(c) != 0) out.emplace_back(id, c);
    return out;
  }

  SuperBasis gens_;
  int D_;
  int L_;
  std::size_t base_count_ = 0;
  std::vector<Letter> letters_;
  std::map<std::vector<LetterId>, Block> blocks_;
  mutable std::map<std::pair<LetterId, LetterId>, LetterCombo> bracket_cache_;
  mutable std::map<LetterId, LetterCombo> d_cache_;
};

}  // namespace gdconf::envelope
