#pragma once

#include <string>
#include <vector>

namespace pfister {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Runs the acceptance criteria (all of them when `only` is empty).
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {});

/// One "PASS"/"FAIL" line per criterion.
std::string format_results(const std::vector<CriterionResult>& results);

inline bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace pfister
