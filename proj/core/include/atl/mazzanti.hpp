#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "atl/exp_poly.hpp"

namespace atl {

// S_r(q,t) = sum_{j=0}^{t-1} j^r q^j, in closed form for r <= 2 and by direct
// summation (point-budgeted) for r >= 3.  Preconditions: q >= 1, t >= 1.
Int geo_sum(unsigned r, const Int& q, const Int& t, const EvalOptions& opts = {});

// delta(a,b) = (2^b - 1)(2^b - a + 1) for 0 <= a < 2^b; its Hamming weight is
// 2b when a = 0 and exactly b when 1 <= a < 2^b.
Int delta(const Int& a, unsigned long b);

// Identity-based scalar helpers (each evaluates a closed formula rather than
// calling the obvious primitive; used to validate the formulas at scale).
Int binom_via_formula(const Int& a, const Int& b, const EvalOptions& opts = {});
Int gcd_via_formula(const Int& a, const Int& b, const EvalOptions& opts = {});
unsigned long nu2_via_formula(const Int& x, const EvalOptions& opts = {});
unsigned long hw_via_term(const Int& n, const EvalOptions& opts = {});
Int marchenkov_pow(const Int& a, const Int& b, const EvalOptions& opts = {});

// A fully bound counting instance: a polynomial f over k unknowns, a box
// bound t, and a word width w with 0 <= f < 2^w guaranteed on [0,t)^k.
struct CountingInstance {
  ExpPolynomial poly;
  Int t;
  Int w;
};

// The master number M = sum_{a in [0,t)^k} 2^{2 w beta(a)} delta(f(a), w)
// where beta is the base-t digit packing of the point a (first unknown =
// least significant digit).  build_M computes it in closed form from the
// monomials; direct_sum_M computes the same sum pointwise (oracle).
Int build_M(const CountingInstance& inst, const EvalOptions& opts = {});
Int direct_sum_M(const CountingInstance& inst, const EvalOptions& opts = {});

// Number of zeros of f on [0,t)^k, read off the Hamming weight of M:
//   count = hw(M)/w - t^k.
Int count_solutions(const CountingInstance& inst, const EvalOptions& opts = {});

// Smallest sound word width for f on [0,t)^k: the bit length of
// sum_m |c_m| * prod_i v_i^{t-1} * (t-1)^{r_i}.
Int choose_w(const ExpPolynomial& p, const Int& t);

// Symbolic width w(t) = alpha*t + beta that is sound for every t >= 1.
struct SymbolicW {
  unsigned long alpha = 0;
  unsigned long beta = 0;
};
SymbolicW choose_w_symbolic(const ExpPolynomial& p);

// Census of the geometric-sum products appearing in the closed form of M:
// non-constant monomials grouped by the multiset of their nonzero power
// degrees r (a monomial with all r = 0 contributes the empty multiset).
struct MProfile {
  std::map<std::vector<unsigned>, std::size_t> products;  // sorted desc key
  std::size_t nonconstant = 0;
  std::size_t constants = 0;
};
MProfile m_profile(const ExpPolynomial& p);
std::string m_profile_to_string(const MProfile& mp);

// ---- JSON -------------------------------------------------------------------
nlohmann::json instance_to_json(const CountingInstance& inst);
CountingInstance instance_from_json(const nlohmann::json& j);

}  // namespace atl
