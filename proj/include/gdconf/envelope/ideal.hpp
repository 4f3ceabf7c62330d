#pragma once

// The ideal I_V inside a truncation, one weight component at a time.
// Generators: u(x,y) = x·y' - x∘y and, in free mode, {x,y} - [x,y].
// As a subspace I_V is spanned by m·t where m is a monomial and t runs over
// ad_{y1}...ad_{yk}(d^j s) for seeds s and base letters y_i.

#include "gdconf/envelope/algebra.hpp"
#include "gdconf/exactpoly/linalg.hpp"
#include "gdconf/gdcore/superalgebra.hpp"

namespace gdconf::envelope {

using gdcore::SuperAlgebra;

struct WeightComponent {
  int weight = 0;
  std::vector<Monomial> basis;  // columns: degree descending, then lex
  std::map<Monomial, std::size_t> column;
  exactpoly::RowEchelon relations;
  std::vector<Monomial> quotient_basis;  // monomials on free columns
  std::size_t rows_generated = 0;

  std::size_t rank() const { return relations.rank(); }
  std::size_t quotient_dim() const { return quotient_basis.size(); }

  bool contains_monomial(const Monomial& m) const { return column.count(m) != 0; }

  /// Remainder of e modulo the relations, supported on the quotient basis.
  EnvElement normal_form(const EnvElement& e) const {
    std::map<std::size_t, Rational> v;
    for (const auto& [m, c] : e) {
      auto it = column.find(m);
      if (it == column.end())
        throw TruncationOverflow("monomial outside weight component " + std::to_string(weight) + " of the window");
      v[it->second] += c;
    }
    std::erase_if(v, [](const auto& kv) { return sgn(kv.second) == 0; });
    EnvElement out;
    for (const auto& [c, q] : relations.reduce(v)) out.emplace(basis[c], q);
    return out;
  }

  bool in_ideal(const EnvElement& e) const { return normal_form(e).empty(); }
};

class IdealBuilder {
 public:
  struct Generated {
    EnvElement t;
    int weight;
    int degree;
  };

  IdealBuilder(const SuperAlgebra& V, Truncation T, Mode mode, BracketRule rule = {})
      : F_(V.basis, T, mode, rule) {
    const auto n = V.dim();
    const auto& circ = V.circ_or_throw();
    std::vector<EnvElement> seeds;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        // u(x,y) = x·y' - x∘y
        try {
          auto u = F_.mul(F_.gen(x), F_.gen(y, 1));
          FreeAlgebra::add(u, F_.linear(circ.entry(x, y)), -1);
          seeds.push_back(std::move(u));
        } catch (const TruncationOverflow&) {
          ++overflow_;
        }
      }
    if (mode == Mode::free) {
      const auto& br = V.bracket_or_throw();
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          try {
            auto b = F_.bracket(F_.gen(x), F_.gen(y));
            FreeAlgebra::add(b, F_.linear(br.entry(x, y)), -1);
            seeds.push_back(std::move(b));
          } catch (const TruncationOverflow&) {
            ++overflow_;
          }
        }
    }
    const int D = T.max_diff_order, R = T.max_degree;
    std::vector<EnvElement> level;
    for (const auto& s : seeds) {
      EnvElement t = s;
      for (int j = 0; j < D; ++j) {
        if (j > 0) {
          try {
            t = F_.d(t);
          } catch (const TruncationOverflow&) {
            ++overflow_;
            break;
          }
        }
        if (!t.empty()) level.push_back(t);
      }
    }
    int max_ads = mode == Mode::free ? R : 0;
    for (int k = 0;; ++k) {
      std::vector<EnvElement> next;
      for (auto& t : level) {
        int deg = max_degree(t);
        if (k < max_ads && deg < R)
          for (LetterId y = 0; y < F_.alphabet().base_count(); ++y) {
            try {
              auto s = F_.bracket(F_.letter(y), t);
              if (!s.empty()) next.push_back(std::move(s));
            } catch (const TruncationOverflow&) {
              ++overflow_;
            }
          }
        closure_.push_back({t, F_.weight(t.begin()->first), deg});
      }
      if (next.empty()) break;
      level = std::move(next);
    }
    enumerate_monomials();
  }

  const FreeAlgebra& algebra() const { return F_; }
  const std::vector<Generated>& closure() const { return closure_; }
  std::size_t overflow() const { return overflow_; }

  /// All monomials of weight w and degree exactly k within the window.
  const std::vector<Monomial>& monomials(int w, int k) const {
    static const std::vector<Monomial> none;
    auto it = monomials_.find({w, k});
    return it == monomials_.end() ? none : it->second;
  }

  WeightComponent component(int n) const {
    WeightComponent C;
    C.weight = n;
    const int R = F_.truncation().max_degree;
    for (int k = R; k >= 0; --k)
      for (const auto& m : monomials(n, k)) C.basis.push_back(m);
    for (std::size_t i = 0; i < C.basis.size(); ++i) C.column.emplace(C.basis[i], i);
    C.relations = exactpoly::RowEchelon(C.basis.size());
    for (const auto& g : closure_) {
      int need = n - g.weight;
      for (int k = 0; k + g.degree <= R; ++k)
        for (const auto& m : monomials(need, k)) {
          auto row = F_.mul(EnvElement{{m, Rational(1)}}, g.t);
          if (row.empty()) continue;
          std::map<std::size_t, Rational> v;
          for (const auto& [mono, c] : row) v.emplace(C.column.at(mono), c);
          ++C.rows_generated;
          C.relations.insert(v);
        }
    }
    for (auto c : C.relations.free_columns()) C.quotient_basis.push_back(C.basis[c]);
    return C;
  }

 private:
  int max_degree(const EnvElement& e) const {
    int d = 0;
    for (const auto& [m, c] : e) d = std::max(d, F_.degree(m));
    return d;
  }

  void enumerate_monomials() {
    const auto& A = F_.alphabet();
    const int R = F_.truncation().max_degree;
    Monomial cur;
    auto rec = [&](auto&& self, std::size_t from, int deg, int wt) -> void {
      monomials_[{wt, deg}].push_back(cur);
      for (std::size_t l = from; l < A.size(); ++l) {
        int ld = int(A.length(LetterId(l)));
        if (deg + ld > R) continue;
        cur.push_back(LetterId(l));
        self(self, F_.odd(LetterId(l)) ? l + 1 : l, deg + ld, wt + A.letter(LetterId(l)).weight);
        cur.pop_back();
      }
    };
    rec(rec, 0, 0, 0);
    for (auto& [key, list] : monomials_) std::sort(list.begin(), list.end());
  }

  FreeAlgebra F_;
  std::vector<Generated> closure_;
  std::size_t overflow_ = 0;
  std::map<std::pair<int, int>, std::vector<Monomial>> monomials_;
};

}  // namespace gdconf::envelope
