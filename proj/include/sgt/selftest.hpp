#pragma once

#include <string>
#include <vector>

namespace sgt::selftest {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // deterministic summary values, no timings
};

/// Runs acceptance criteria 1..11 with the given worker count.
std::vector<CriterionResult> run_criteria(unsigned workers);

/// Canonical report text for a batch of results (one line per criterion).
std::string format_report(const std::vector<CriterionResult>& results);

/// Full suite: criteria 1..11 plus the determinism criterion 12 (byte-equal
/// reports at worker counts 1 and 8). Returns the complete report and sets
/// all_passed.
std::string run_full(bool* all_passed);

}  // namespace sgt::selftest
