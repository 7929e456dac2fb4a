// Acceptance suite: one PASS/FAIL line per numbered criterion. Exits nonzero
// when any criterion fails.

#include <cstdio>
#include <string>
#include <vector>

#include "../cli_support.hpp"
#include "dunkl/verify.hpp"

namespace {

struct Criterion {
  std::string id;
  std::string title;
  std::vector<std::string> checks;
};

const std::vector<Criterion> kCriteria = {
    {"1", "Hille-Hardy bilinear sum vs Bessel closed form", {"hille_hardy"}},
    {"2", "Ermakov residual of closed-form solutions", {"ermakov_closed"}},
    {"3", "numeric Ermakov solve vs closed form", {"ermakov_numeric"}},
    {"4", "frequency constraint (closed and numeric)", {"constraint_closed", "constraint_numeric"}},
    {"5", "nu -> 0 textbook reduction", {"static_limit"}},
    {"6", "closed forms vs general kernel", {"closed_vs_general"}},
    {"7", "Gram matrix of eigenfunctions", {"orthonormality"}},
    {"8a", "damped spectral sum (eps = 1e-3, N = 200)", {"spectral_damped"}},
    {"8b", "Wick-rotated spectral sum (tau = 0.5)", {"spectral_wick"}},
    {"9", "Crank-Nicolson vs kernel evolution", {"oracle_cn_vs_kernel"}},
    {"10", "semigroup composition", {"semigroup"}},
    {"11", "independence of the Ermakov solution", {"rho_independence"}},
    {"12", "Schrodinger residual of eigenfunctions", {"tdse_residual"}},
    {"13", "k = 0 and upsilon = 0 reductions", {"reductions"}},
};

std::string describe(const dunkl::CheckResult& r) {
  char buf[256];
  if (r.budget_s > 0.0) {
    std::snprintf(buf, sizeof buf, "%s measured=%.3e tol=%.1e time=%.2fs/%.0fs", r.name.c_str(), r.measured,
                  r.tolerance, r.runtime_s, r.budget_s);
  } else {
    std::snprintf(buf, sizeof buf, "%s measured=%.3e tol=%.1e time=%.2fs", r.name.c_str(), r.measured, r.tolerance,
                  r.runtime_s);
  }
  return buf;
}

// Criterion 14: kernel and verify runs repeated with a fixed config give
// byte-identical data files, equal to the checked-in golden copies.
bool cli_determinism(std::string& detail) {
  using namespace cli_support;
  bool ok = true;
  int compared = 0;
  for (const GoldenCase& c : golden_cases()) {
    const fs::path a = scratch_dir("accept_a"), b = scratch_dir("accept_b");
    const RunResult ra = run_cli(c.args, a), rb = run_cli(c.args, b);
    if (ra.exit_code != 0 || rb.exit_code != 0) {
      detail += " " + c.name + ":exit";
      ok = false;
      continue;
    }
    const std::string first = read_file(a / c.file);
    if (first != read_file(b / c.file)) {
      detail += " " + c.name + ":nondeterministic";
      ok = false;
    }
    if (first != read_file(golden_path(c.name))) {
      detail += " " + c.name + ":golden-mismatch";
      ok = false;
    }
    ++compared;
  }
  detail = std::to_string(compared) + " golden files compared" + detail;
  return ok;
}

}  // namespace

int main() {
  int failures = 0;
  for (const Criterion& c : kCriteria) {
    bool passed = true;
    std::string detail;
    for (const std::string& name : c.checks) {
      const dunkl::CheckResult r = dunkl::run_check(name, dunkl::default_tolerance(name));
      passed = passed && r.passed;
      detail += (detail.empty() ? "" : "; ") + describe(r);
    }
    failures += passed ? 0 : 1;
    std::printf("%s criterion %-3s %s: %s\n", passed ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(),
                detail.c_str());
    std::fflush(stdout);
  }
  std::string detail;
  const bool cli_ok = cli_determinism(detail);
  failures += cli_ok ? 0 : 1;
  std::printf("%s criterion %-3s %s: %s\n", cli_ok ? "PASS" : "FAIL", "14", "CLI determinism and golden files",
              detail.c_str());
  std::printf("%d of %zu criteria failed\n", failures, kCriteria.size() + 1);
  return failures == 0 ? 0 : 1;
}
