#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace autfam {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs the nine computational release criteria in order.  The tenth
// (determinism) is a re-run comparison handled by run_acceptance_suite.
std::vector<CriterionResult> run_acceptance_criteria();

// One line per criterion, stable byte-for-byte across runs.
std::string render_acceptance(const std::vector<CriterionResult>& results);

// Executes the criteria twice (the second pass feeds the determinism check),
// streams one pass/fail line per criterion to `out`, and returns the number
// of failed criteria.
int run_acceptance_suite(std::ostream& out);

}  // namespace autfam
