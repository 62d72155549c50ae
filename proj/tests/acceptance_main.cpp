// Acceptance gate: runs the complete verification suite and reports one
// pass/fail line per acceptance criterion, with per-criterion time limits
// enforced.  Exit code = number of failing criteria (plus one if any
// supporting-invariant check fails).
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "atl/verify.hpp"

int main() {
  using atl::CheckResult;

  // hard time limits, in seconds, per criterion
  const std::map<int, double> limits = {{1, 10.0},  {2, 60.0},  {3, 60.0},  {4, 5.0},
                                        {5, 120.0}, {6, 60.0},  {7, 120.0}, {8, 300.0},
                                        {9, 120.0}, {10, 120.0}, {11, 10.0}};

  std::vector<CheckResult> results = atl::verify_suite("all", atl::EvalOptions{});

  struct Bucket {
    std::vector<const CheckResult*> checks;
    double seconds = 0.0;
    bool all_pass = true;
  };
  std::map<int, Bucket> by_criterion;
  for (const CheckResult& r : results) {
    Bucket& b = by_criterion[r.criterion];
    b.checks.push_back(&r);
    b.seconds += r.seconds;
    if (!r.pass) b.all_pass = false;
  }

  int failing_criteria = 0;
  bool supporting_failed = false;
  for (int crit = 1; crit <= 11; ++crit) {
    const Bucket& b = by_criterion[crit];
    const double limit = limits.at(crit);
    const bool in_time = b.seconds < limit;
    const bool pass = b.all_pass && in_time && !b.checks.empty();
    if (!pass) ++failing_criteria;
    std::printf("[%s] criterion %2d: %s (%zu checks, %.2fs / limit %.0fs)\n",
                pass ? "PASS" : "FAIL", crit, atl::criterion_title(crit), b.checks.size(),
                b.seconds, limit);
    if (!in_time) std::printf("        time limit exceeded\n");
    for (const CheckResult* c : b.checks)
      if (!c->pass) std::printf("        %s: %s\n", c->name.c_str(), c->detail.c_str());
  }
  const Bucket& sup = by_criterion[0];
  if (!sup.checks.empty()) {
    bool pass = sup.all_pass;
    if (!pass) supporting_failed = true;
    std::printf("[%s] supporting: %s (%zu checks, %.2fs)\n", pass ? "PASS" : "FAIL",
                atl::criterion_title(0), sup.checks.size(), sup.seconds);
    for (const CheckResult* c : sup.checks)
      if (!c->pass) std::printf("        %s: %s\n", c->name.c_str(), c->detail.c_str());
  }

  int exit_code = failing_criteria + (supporting_failed ? 1 : 0);
  std::printf("result: %d of 11 criteria failing%s\n", failing_criteria,
              supporting_failed ? ", with supporting-invariant failures" : "");
  return exit_code;
}
