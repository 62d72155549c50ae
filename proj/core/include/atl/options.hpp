#pragma once

#include <cstdint>

namespace atl {

// Resource budgets for explicit evaluation.  bit_budget caps the size (in
// bits) of any single integer an evaluation is allowed to materialize;
// point_budget caps the number of grid points an exhaustive enumeration may
// visit.  Operations that would exceed a budget throw BudgetExceeded rather
// than thrash.
struct EvalOptions {
  std::uint64_t bit_budget = std::uint64_t(1) << 24;  // 16 Mbit ~ 2 MB values
  std::uint64_t point_budget = 10'000'000;
};

}  // namespace atl
