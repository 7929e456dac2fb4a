#pragma once

// Named self-checks that exercise the library end to end. Each check
// returns a measured error and compares it with a tolerance; some also carry
// a runtime budget that counts toward pass/fail.

#include <map>
#include <string>
#include <vector>

#include "dunkl/kernel.hpp"

namespace dunkl {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  double runtime_s = 0.0;
  /// Runtime budget in seconds; 0 means unbudgeted.
  double budget_s = 0.0;
  std::string detail;
};

struct VerifyOptions {
  /// Run only these checks (all when empty). Unknown names raise ConfigError.
  std::vector<std::string> only;
  /// Replacement tolerances by check name.
  std::map<std::string, double> tolerance_overrides;
};

/// Names of all checks in execution order.
const std::vector<std::string>& check_names();

double default_tolerance(const std::string& name);

CheckResult run_check(const std::string& name, double tolerance);

std::vector<CheckResult> run_checks(const VerifyOptions& options);

/// Standard one-dimensional oscillator propagator
///   sqrt(m omega / (2 pi i hbar sin(omega T)))
///   exp[i m omega ((x_i^2 + x_f^2) cos(omega T) - 2 x_i x_f) / (2 hbar sin(omega T))],
/// used as the nu -> 0 reference.
Complex textbook_oscillator_kernel(double m, double omega, double x_i, double x_f, double T,
                                   double hbar);

}  // namespace dunkl
