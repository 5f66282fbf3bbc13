#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace riffle {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0.0;
  std::vector<std::string> details;
};

inline constexpr int kCriterionCount = 10;

// Runs one verification criterion (1-based id).
CriterionResult run_criterion(int id);

// Runs every criterion, printing one PASS/FAIL line each (plus detail
// lines for failures and reported tables). Returns true when all pass.
bool run_acceptance(std::ostream& os);

}  // namespace riffle
