#pragma once

// Line-oriented algebra files:
//
//   name heisenberg3
//   [generators]
//   x even
//   [circ]
//   x x -> x - y
//   [bracket]
//   x y -> z
//   [metadata]
//   source = example
//
// '#' starts a comment. Products not listed are zero. Without a [bracket]
// section the algebra carries no bracket; an empty section means bracket 0.

#include "gdconf/gdcore/superalgebra.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace gdconf::cli {

using exactpoly::Rational;
using gdcore::Parity;
using gdcore::StructureTensor;
using gdcore::SuperAlgebra;
using gdcore::SuperBasis;
using gdcore::Vec;

class FileError : public std::runtime_error {
 public:
  FileError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct AlgebraFile {
  SuperAlgebra algebra;
  std::map<std::string, std::string> metadata;

  friend bool operator==(const AlgebraFile&, const AlgebraFile&) = default;
};

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

/// "c1*z1 + c2*z2 - z3" over the basis; "0" is the zero vector.
inline Vec parse_combination(const std::string& text, const SuperBasis& basis, int line) {
  Vec v(basis.size(), Rational(0));
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s += c;
  if (s.empty()) throw FileError(line, "empty right-hand side");
  if (s == "0") return v;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      throw FileError(line, "expected '+' or '-' in '" + text + "'");
    }
    auto next = s.find_first_of("+-", pos);
    // a '-' inside a rational coefficient is not allowed, so the split is safe
    std::string t = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    pos = next == std::string::npos ? s.size() : next;
    if (t.empty()) throw FileError(line, "missing term in '" + text + "'");
    Rational c(sign);
    std::string label = t;
    if (auto star = t.find('*'); star != std::string::npos) {
      try {
        c *= exactpoly::parse_rational(t.substr(0, star));
      } catch (const exactpoly::ParseError& e) {
        throw FileError(line, e.what());
      }
      label = t.substr(star + 1);
    }
    auto idx = basis.find(label);
    if (!idx) throw FileError(line, "undeclared label '" + label + "'");
    v[*idx] += c;
  }
  return v;
}

}  // namespace detail

inline AlgebraFile parse_algebra_text(const std::string& text) {
  enum class Section { none, generators, circ, bracket, metadata } section = Section::none;
  AlgebraFile out;
  std::optional<std::string> name;
  std::vector<std::string> labels;
  std::vector<Parity> parities;
  std::optional<SuperBasis> basis;
  std::optional<StructureTensor> circ, bracket;
  std::map<std::string, int> seen_sections;
  std::map<std::pair<std::size_t, std::size_t>, int> seen_circ, seen_bracket;

  auto finish_generators = [&](int line) {
    if (basis) return;
    if (labels.empty()) throw FileError(line, "no generators declared before products");
    try {
      basis = SuperBasis(labels, parities);
    } catch (const std::exception& e) {
      throw FileError(line, e.what());
    }
  };

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto s = detail::trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw FileError(line, "malformed section header '" + s + "'");
      auto h = s.substr(1, s.size() - 2);
      if (seen_sections[h]++) throw FileError(line, "duplicate section [" + h + "]");
      if (h == "generators") {
        if (basis) throw FileError(line, "[generators] must come before products");
        section = Section::generators;
      } else if (h == "circ" || h == "bracket") {
        finish_generators(line);
        section = h == "circ" ? Section::circ : Section::bracket;
        auto& t = h == "circ" ? circ : bracket;
        t = StructureTensor(basis->size());
      } else if (h == "metadata") {
        section = Section::metadata;
      } else {
        throw FileError(line, "unknown section [" + h + "]");
      }
      continue;
    }
    switch (section) {
      case Section::none: {
        auto w = detail::words(s);
        if (w.size() != 2 || w[0] != "name") throw FileError(line, "expected 'name <label>' or a section header");
        if (name) throw FileError(line, "duplicate name");
        name = w[1];
        break;
      }
      case Section::generators: {
        auto w = detail::words(s);
        if (w.size() != 2 || (w[1] != "even" && w[1] != "odd"))
          throw FileError(line, "expected '<label> even|odd'");
        if (w[0].find_first_of("+-*#=[]") != std::string::npos || w[0] == "0")
          throw FileError(line, "label '" + w[0] + "' may not contain + - * # = [ ] or be 0");
        if (std::find(labels.begin(), labels.end(), w[0]) != labels.end())
          throw FileError(line, "duplicate generator '" + w[0] + "'");
        labels.push_back(w[0]);
        parities.push_back(w[1] == "even" ? Parity::even : Parity::odd);
        break;
      }
      case Section::circ:
      case Section::bracket: {
        auto arrow = s.find("->");
        if (arrow == std::string::npos) throw FileError(line, "expected 'a b -> combination'");
        auto w = detail::words(s.substr(0, arrow));
        if (w.size() != 2) throw FileError(line, "expected two labels before '->'");
        auto i = basis->find(w[0]), j = basis->find(w[1]);
        if (!i) throw FileError(line, "undeclared label '" + w[0] + "'");
        if (!j) throw FileError(line, "undeclared label '" + w[1] + "'");
        auto v = detail::parse_combination(s.substr(arrow + 2), *basis, line);
        Parity p = basis->parity(*i) + basis->parity(*j);
        for (std::size_t k = 0; k < v.size(); ++k)
          if (sgn(v[k]) != 0 && basis->parity(k) != p)
            throw FileError(line, "parity violation: " + w[0] + " " + w[1] + " is " + gdcore::parity_name(p) +
                                      " but " + basis->name(k) + " is " + gdcore::parity_name(basis->parity(k)));
        auto& seen = section == Section::circ ? seen_circ : seen_bracket;
        if (seen[{*i, *j}]++) throw FileError(line, "duplicate entry for " + w[0] + " " + w[1]);
        (section == Section::circ ? *circ : *bracket).set_entry(*i, *j, v);
        break;
      }
      case Section::metadata: {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw FileError(line, "expected 'key = value'");
        auto key = detail::trim(s.substr(0, eq));
        if (key.empty()) throw FileError(line, "empty metadata key");
        out.metadata[key] = detail::trim(s.substr(eq + 1));
        break;
      }
    }
  }
  if (!name) throw FileError(0, "missing 'name' line");
  finish_generators(line);
  if (!circ) throw FileError(0, "missing [circ] section");
  out.algebra = gdcore::make_algebra(*name, *basis);
  out.algebra.circ = circ;
  out.algebra.bracket = bracket;
  return out;
}

inline AlgebraFile parse_algebra(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw FileError(0, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_algebra_text(ss.str());
}

inline std::string print_algebra(const AlgebraFile& file) {
  const auto& A = file.algebra;
  std::ostringstream out;
  out << "name " << A.name << "\n\n[generators]\n";
  for (std::size_t i = 0; i < A.dim(); ++i) out << A.basis.name(i) << " " << gdcore::parity_name(A.basis.parity(i)) << "\n";
  auto table = [&](const char* title, const StructureTensor& t) {
    out << "\n[" << title << "]\n";
    for (std::size_t i = 0; i < A.dim(); ++i)
      for (std::size_t j = 0; j < A.dim(); ++j) {
        auto v = t.entry(i, j);
        if (gdcore::is_zero_vec(v)) continue;
        out << A.basis.name(i) << " " << A.basis.name(j) << " -> " << gdcore::vec_to_string(v, A.basis) << "\n";
      }
  };
  table("circ", A.circ_or_throw());
  if (A.bracket) table("bracket", *A.bracket);
  if (!file.metadata.empty()) {
    out << "\n[metadata]\n";
    for (const auto& [k, v] : file.metadata) out << k << " = " << v << "\n";
  }
  return out.str();
}

}  // namespace gdconf::cli
