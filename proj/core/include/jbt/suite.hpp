#pragma once

#include "jbt/types.hpp"

#include <string>
#include <vector>

namespace jbt::oracle {

/// Outcome of one named cross-check over many seeded trials.
struct OracleReport {
  std::string name;
  double max_residual = 0.0;
  int samples = 0;
  bool passed = false;  // max_residual <= tolerance
  unsigned long long seed = 0;
  double tolerance = 0.0;
};

struct SuiteConfig {
  int n = 8;
  int r = 3;
  int trials = 100;
  unsigned long long seed = 1;
  double tol = 1e-8;  // used where a check has no pinned tolerance
};

/// Run every cross-check against the independent oracles with seeded
/// randomness: deterministic given the config, failures reported rather
/// than thrown. trials = 0 yields an empty list.
std::vector<OracleReport> run_suite(const SuiteConfig& config);

}  // namespace jbt::oracle
