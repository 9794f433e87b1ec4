#include <cstdio>
#include <cstring>

#include "kpp/acceptance.hpp"

int main(int argc, char** argv) {
  kpp::SuiteScale scale = kpp::SuiteScale::Full;
  if (argc > 1 && std::strcmp(argv[1], "--quick") == 0) {
    scale = kpp::SuiteScale::Quick;
  }

  const auto results = kpp::run_acceptance(scale);
  int failures = 0;
  for (const auto& r : results) {
    std::printf("%-4s %-4s %-52s measured=%-13.6g tol=%-10.3g %s\n", r.passed ? "PASS" : "FAIL",
                r.id.c_str(), r.name.c_str(), r.measured, r.tolerance, r.detail.c_str());
    if (!r.passed) ++failures;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 1;
}
