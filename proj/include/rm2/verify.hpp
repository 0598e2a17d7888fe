#pragma once

// Named self-check suites. Every check records the measured quantity next to
// the threshold it was held to, so a report is auditable on its own.

#include <string>
#include <string_view>
#include <vector>

#include "rm2/config.hpp"
#include "rm2/types.hpp"

namespace rm2::verify {

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  double seconds = 0.0;

  bool passed() const;
};

struct SuiteOptions {
  double lambda = 5.4;
  double beta = 1.0;
  double alpha = 2.4;
  int big_n = 3;
  Grid grid{-10.0, 10.0, 2001};
  Tolerances tol = default_tolerances();
};

/// "criterion-1" .. "criterion-10", "acceptance" (all criteria), and the
/// parameterised suites "equivalence", "shape-invariance", "intertwining",
/// "energies", "flux".
std::vector<std::string> suite_names();

/// Throws InvalidArgument for an unknown suite name.
SuiteReport run_suite(std::string_view name, const SuiteOptions& options = {});

/// Acceptance criterion `id` (1..10) at its fixed parameters.
SuiteReport criterion(int id, const Tolerances& tol = default_tolerances());

inline constexpr int kCriterionCount = 10;

}  // namespace rm2::verify
