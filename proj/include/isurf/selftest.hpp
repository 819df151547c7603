#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace isurf {

struct CriterionResult {
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double limit = 0.0;   // runtime budget, enforced at full scale only
  std::string detail;   // failing property and counterexample when !pass
};

// Runs the nine randomized/oracle invariant suites. scale_div divides the
// instance counts: 1 is the full acceptance scale, 10 the smoke scale.
std::vector<CriterionResult> run_acceptance(int scale_div, std::uint64_t seed);

}  // namespace isurf
