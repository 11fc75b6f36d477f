#pragma once

#include <string>
#include <vector>

#include "mcm/quiver.hpp"

namespace mcm {

struct CheckResult {
  std::string name;
  std::string status;  // "pass", "fail" or "inconclusive"
  std::string detail;
};

/// Suites over a catalog: symmetry, periodicity, ar, ulrich, lifting,
/// components, or all of them.
std::vector<std::string> suite_names();

/// Runs one suite on the quiver of the catalog. Bounded computations that
/// stop early report "inconclusive" instead of failing.
std::vector<CheckResult> run_suite(const std::string& suite, const Catalog& catalog, const Bounds& bounds);

/// "fail" if any check failed, else "inconclusive" if any was, else "pass".
std::string overall_status(const std::vector<CheckResult>& results);

}  // namespace mcm
