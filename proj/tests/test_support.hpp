#pragma once

// Structure constants typed in by hand, independent of the file parser.

#include "gdconf/gdcore/axioms.hpp"

namespace testsupport {

using namespace gdconf::gdcore;

inline SuperAlgebra heisenberg3() {
  auto A = make_algebra("heisenberg3", SuperBasis({"x", "y", "z"}, {Parity::even, Parity::even, Parity::even}));
  A.circ = StructureTensor(3);
  A.bracket = StructureTensor(3);
  auto& c = *A.circ;
  c.at(0, 0, 0) = 1;  // x∘x = x - y
  c.at(0, 0, 1) = -1;
  c.at(1, 0, 1) = 1;  // y∘x = y
  c.at(0, 1, 1) = -1;  // x∘y = -y
  A.bracket->at(0, 1, 2) = 1;
  A.bracket->at(1, 0, 2) = -1;
  return A;
}

inline SuperAlgebra virasoro_source() {
  auto A = make_algebra("virasoro-source", SuperBasis({"v"}, {Parity::even}));
  A.circ = StructureTensor(1);
  A.circ->at(0, 0, 0) = 1;
  A.bracket = StructureTensor(1);
  return A;
}

/// v∘v = v + u, u∘v = u; no bracket.
inline SuperAlgebra novikov2() {
  auto A = make_algebra("novikov2", SuperBasis({"v", "u"}, {Parity::even, Parity::even}));
  A.circ = StructureTensor(2);
  A.circ->at(0, 0, 0) = 1;
  A.circ->at(0, 0, 1) = 1;
  A.circ->at(1, 0, 1) = 1;
  return A;
}

inline SuperAlgebra zero_algebra(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i + 1));
  auto A = make_algebra("zero" + std::to_string(n), SuperBasis(names, std::vector<Parity>(n, Parity::even)));
  A.circ = StructureTensor(n);
  A.bracket = StructureTensor(n);
  return A;
}

inline Vec vec(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace testsupport
