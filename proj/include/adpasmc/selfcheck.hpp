#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace adpasmc {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;       // worst observed error (or margin for positivity checks)
  double tolerance = 0.0;
};

/// Randomized algebraic property checks of the library kernels. Fast enough
/// to run from the command line.
std::vector<CheckResult> run_property_checks(std::uint64_t seed = 1);

}  // namespace adpasmc
