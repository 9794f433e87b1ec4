#pragma once

#include <string>
#include <vector>

namespace kpp {

struct CriterionResult {
  std::string id;
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

enum class SuiteScale { Quick, Full };

// Runs the acceptance criteria; Full adds the time-domain simulation
// cross-checks on top of Quick.
std::vector<CriterionResult> run_acceptance(SuiteScale scale);

}  // namespace kpp
