#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "atl/bigint.hpp"
#include "atl/options.hpp"

namespace atl {

// One unknown's contribution to an exponential monomial: v^x * x^r,
// where x is the unknown's value.  v >= 1; (v,r) = (1,0) means "absent".
struct ExpFactor {
  Int v = 1;
  unsigned r = 0;
  bool trivial() const { return v == 1 && r == 0; }
  bool operator==(const ExpFactor&) const = default;
};

// c * prod_i v_i^{x_i} * x_i^{r_i}, factors aligned positionally with the
// owning container's name list.
struct ExpMonomial {
  Int c = 0;
  std::vector<ExpFactor> f;
  bool constant() const {
    for (const auto& e : f)
      if (!e.trivial()) return false;
    return true;
  }
  bool operator==(const ExpMonomial&) const = default;
};

// Sum of exponential monomials over named unknowns.
struct ExpPolynomial {
  std::vector<std::string> names;
  std::vector<ExpMonomial> ms;

  std::size_t arity() const { return names.size(); }
  // Merge equal-shape monomials, drop zero coefficients, sort
  // deterministically.
  void canonicalize();
};

// A system sum_j (L_j - R_j)^2 with all monomial coefficients nonnegative on
// each side.  An optional distinguished name acts as an outer parameter: it
// occupies the last factor slot and is bound (not counted among unknowns) by
// the counting machinery.
struct SquareSystem {
  std::vector<std::string> unknowns;
  std::optional<std::string> param;
  struct Square {
    std::vector<ExpMonomial> l, r;
  };
  std::vector<Square> squares;

  std::vector<std::string> all_names() const;  // unknowns then param
};

using Witness = std::map<std::string, Int>;

// Expands sum_j (L_j - R_j)^2 into a single canonical ExpPolynomial over
// all_names().
ExpPolynomial expand_squares(const SquareSystem& s);

// Exact signed value of the polynomial at a point.  Throws UnboundVariable
// for missing names and BudgetExceeded when an intermediate would exceed the
// bit budget.
Int eval_poly(const ExpPolynomial& p, const Witness& at, const EvalOptions& opts = {});

// Replaces one name by a constant value, folding its factors into the
// coefficients.  The result ranges over the remaining names.
ExpPolynomial bind_name(const ExpPolynomial& p, const std::string& name, const Int& value,
                        const EvalOptions& opts = {});

// Counts zeros of p over [0,t)^arity by exhaustive enumeration.
// Throws BudgetExceeded if t^arity exceeds the point budget.
std::uint64_t brute_count(const ExpPolynomial& p, const Int& t, const EvalOptions& opts = {});

// Given f = pos - neg (both sides sums of nonnegative-coefficient
// monomials over `names`), builds the equivalent sum-of-squares system in
// fresh unknowns y1..ym appended after `names`:
//   sum_i (y_i - m_i)^2  +  (2^{sum of positive-side y} - 2^{sum of
//   negative-side y})^2.
// The expansion has exactly 3m+3 monomials before merging (m = |pos|+|neg|),
// and its zero set projects onto {f = 0}.
SquareSystem nonneg_singlefold_transform(const std::vector<std::string>& names,
                                         const std::vector<ExpMonomial>& pos,
                                         const std::vector<ExpMonomial>& neg);

// ---- JSON -------------------------------------------------------------------
nlohmann::json poly_to_json(const ExpPolynomial& p);
ExpPolynomial poly_from_json(const nlohmann::json& j);
nlohmann::json system_to_json(const SquareSystem& s);
SquareSystem system_from_json(const nlohmann::json& j);

}  // namespace atl
