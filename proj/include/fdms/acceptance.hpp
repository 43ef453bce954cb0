#pragma once

#include <string>
#include <vector>

namespace fdms {

// One verification entry: a named check with a single numeric gate.  Checks
// with runtime budgets fold the budget into pass and record the elapsed time
// (kept out of serialized reports so identical runs stay byte-identical).
struct CriterionResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  double runtime_s = 0.0;
  std::string detail;
};

std::vector<std::string> acceptance_names();

// Run all checks (or the one named by `only`).  tolerance_scale multiplies
// every gate, including runtime budgets; 0 forces every check to fail, which
// exercises the failure path end to end.
std::vector<CriterionResult> run_acceptance(const std::string& only = "",
                                            double tolerance_scale = 1.0);

} // namespace fdms
