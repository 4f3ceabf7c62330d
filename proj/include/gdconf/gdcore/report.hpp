#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gdconf::gdcore {

struct Violation {
  std::string axiom;
  std::vector<std::string> witness;  // generator labels of the failing tuple
  std::string residual;              // nonzero residual, rendered exactly

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct AxiomReport {
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }

  void add(std::string axiom, std::vector<std::string> witness, std::string residual) {
    violations.push_back({std::move(axiom), std::move(witness), std::move(residual)});
  }
  void merge(const AxiomReport& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
  bool has(const std::string& axiom) const {
    for (const auto& v : violations)
      if (v.axiom == axiom) return true;
    return false;
  }
};

}  // namespace gdconf::gdcore
