#pragma once

// Built-in numerical checks of the equivalence and image-equality results on
// the worked examples and on randomized families.

#include <cstdint>
#include <string>
#include <vector>

namespace bohr {

struct CheckResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double measured = 0.0;   // the quantity compared against threshold
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct VerificationOptions {
  double fill_tolerance = 0.05;  // disk-fill probe distance
  std::uint64_t seed = 20240607;
};

std::vector<CheckResult> run_acceptance_suite(const VerificationOptions& options = {});

/// Runs a single check by id (1..11); throws ErrorCode::invalid_input otherwise.
CheckResult run_acceptance_check(int id, const VerificationOptions& options = {});

constexpr int kAcceptanceCheckCount = 11;

}  // namespace bohr
