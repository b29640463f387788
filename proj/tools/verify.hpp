#pragma once

#include <string>
#include <vector>

namespace morphosim::verify {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

enum class Suite { fast, full };

/// Criteria run by a suite: fast skips the time-stepping cross-checks.
std::vector<int> suite_criteria(Suite suite);

/// Runs one acceptance criterion (1..10). Never throws: failures, including
/// exceptions, are reported in the result.
CheckResult run_criterion(int id);

/// Runs the criteria on a pool of `jobs` workers; results ordered by id.
std::vector<CheckResult> run_criteria(const std::vector<int>& ids, int jobs);

constexpr int criterion_count = 10;

}  // namespace morphosim::verify
