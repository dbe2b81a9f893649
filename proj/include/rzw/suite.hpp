#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rzw/opca.hpp"

namespace rzw {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  size_t fuel = 10000;
};

struct BundledOpca {
  std::string name;
  FiniteOpca opca;
};

// The workbench's stock finite models: the one-point algebra, the
// two-element and three-element chains and the diamond, all meet
// semilattices with phi = inhabited downsets.
const std::vector<BundledOpca>& bundled_opcas();

std::vector<std::string> suite_names();

// name is one of suite_names() or "all".
std::vector<CriterionResult> run_suite(const std::string& name,
                                       const SuiteOptions& opts);

}  // namespace rzw
