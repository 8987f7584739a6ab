#pragma once

#include <string>
#include <vector>

#include "lzn/solver.hpp"

namespace lzn {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;  // sorted by name

  bool ok() const;
  std::string to_string() const;
};

struct VerifyOptions {
  int seager_max_n = 10;
  int subdivision_max_n = 5;
  int sn_random_seeds = 100;
  int comb_random_seeds = 100;
  SolverOptions solver;
};

std::vector<std::string> suite_names();

/// Suites: seager, sn, comb, subdivision, ends, pruning.
SuiteReport run_suite(const std::string& name, const VerifyOptions& opts = {});

}  // namespace lzn
