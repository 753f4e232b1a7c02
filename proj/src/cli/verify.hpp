#pragma once

#include <string>
#include <vector>

#include "cli/format.hpp"

namespace wbalg::cli {

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  bool skipped = false;
  std::string reason;
  std::vector<Check> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

const std::vector<std::string>& suite_names();

// Runs one named suite, or every applicable suite for "all".
std::vector<SuiteResult> run_verify(const std::string& suite, int p, int d, double tol);

Json suite_json(const SuiteResult& s);

}  // namespace wbalg::cli
