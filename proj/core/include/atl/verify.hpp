#pragma once

#include <string>
#include <vector>

#include "atl/options.hpp"

namespace atl {

// One verification check.  criterion groups checks for the acceptance
// summary; criterion 0 marks supporting invariants that belong to no single
// headline property.
struct CheckResult {
  std::string name;  // "group/check"
  int criterion = 0;
  bool pass = false;
  std::string detail;  // empty on pass, explanation on failure
  double seconds = 0.0;
};

// Runs the named group of checks ("terms", "mazzanti", "sequences",
// "generators", "counters") or all of them ("all").  Heavy checks raise the
// bit budget above `opts` where the mathematics requires it.
std::vector<CheckResult> verify_suite(const std::string& selector, const EvalOptions& opts = {});

const char* criterion_title(int criterion);

}  // namespace atl
