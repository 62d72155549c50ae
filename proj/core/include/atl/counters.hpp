#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "atl/exp_poly.hpp"
#include "atl/generators.hpp"
#include "atl/mazzanti.hpp"
#include "atl/term.hpp"

namespace atl {

enum class Family { MERSENNE, FERMAT, TWIN, SOPHIE };
const char* family_name(Family f);

// One step of the deterministic derivation chain that pins every unknown of
// a counting system from the parameter n and the leading unknown k.
struct ChainStep {
  std::string defines;
  std::vector<std::string> uses;
  std::string how;
};

// A parameterized counting system: for each n, the system's solutions over
// [0, t(n))^k are in bijection with the objects being counted, and
//   count(n) = hw(M)/w - t^k + offset
// for the master number M built from the bound instance.
struct CountingSpec {
  std::string family;
  SquareSystem system;  // param = "n"
  Term t_of_n;
  Term w_of_n;
  std::function<Int(const Int&, const EvalOptions&)> t_func;
  std::function<Int(const Int&, const EvalOptions&)> w_func;
  // approximate decimal digit counts of t(n) and w(n) (usable far beyond
  // materializable sizes)
  std::function<Int(const Int&)> t_digits10;
  std::function<Int(const Int&)> w_digits10;
  long offset = 0;
  std::vector<std::string> chain_roots;  // typically {"n", "k"}
  std::vector<ChainStep> chain;
};

CountingSpec build_mersenne_system();
CountingSpec build_fermat_system();
CountingSpec build_twin_system(FactorialScheme scheme = FactorialScheme::MINIMAL);

// Small, fully computable example instance: f = (x + 2 - y)^2 on [0,6)^2
// with w = 8; it has exactly 4 zeros.
CountingInstance demo_counting_instance();

// A witness whose huge coordinates may be left unmaterialized ("absent")
// when they would exceed the bit budget.
struct PartialWitness {
  Witness values;
  std::vector<std::string> absent;
  bool complete() const { return absent.empty(); }
};

// Deterministic witness chains.  Each returns the unique candidate solution
// for the given leading unknown, or nullopt when none exists (which is
// exactly the non-prime / non-twin case).
std::optional<PartialWitness> mersenne_witness(unsigned k, const Int& n,
                                               const EvalOptions& opts = {});
std::optional<PartialWitness> fermat_witness(std::uint64_t g, const Int& n,
                                             const EvalOptions& opts = {});
std::optional<PartialWitness> twin_witness(unsigned k, const Int& n,
                                           FactorialScheme scheme = FactorialScheme::MINIMAL,
                                           const EvalOptions& opts = {});

// Square-by-square verification of a witness.  Squares whose sides are both
// single power-of-two monomials are compared exactly through their exponent
// linear forms; everything else is evaluated directly.  Squares touching an
// absent coordinate (or exceeding the bit budget) are counted as skipped.
struct SquareCheckReport {
  std::size_t verified = 0;
  std::size_t skipped = 0;
  std::vector<std::size_t> failed;  // square indices
  bool clean() const { return failed.empty(); }
};
SquareCheckReport satisfied_by(const SquareSystem& sys, const PartialWitness& w, const Int& n,
                               const EvalOptions& opts = {});

// Names of materialized coordinates whose value is >= bound.
std::vector<std::string> coords_not_below(const PartialWitness& w, const Int& bound);

// ---- primality criteria -------------------------------------------------------
// Lucas-Lehmer: 2^p - 1 prime iff it divides s(p-1); p = 2 special-cased.
bool lucas_lehmer_test(std::uint64_t p);
// Jones: 6g+5 is a Fermat prime iff (3g+2) | 12^{3g+2} and (6g+5) | 12^{3g+2}+1.
bool jones_test(std::uint64_t g);
// Pepin with base 12: for m >= 2, N = 2^m + 1 is prime iff
// 12^{(N-1)/2} = -1 mod N.
bool pepin_test(unsigned long m, const EvalOptions& opts = {});
// Clement: k+2 and k+4 are both prime iff (k+2)(k+4) | 4((k+1)! + 1) + k+2,
// equivalently 4(k+1)! + k + 6 = 0 mod (k+2)(k+4).  Budget: k <= 10^5.
bool clement_test(std::uint64_t k);
// Sophie Germain: p and 2p+1 both prime; implemented through the Wilson form
// (p | (p-1)!+1 and 2p+1 | (2p)!+1) and the Rotondo form
// (p = 2 or p(2p+1) | ((p-1)!)^2 + 6p - 1), which must agree.
bool sg_test(std::uint64_t p);

// ---- count oracles -----------------------------------------------------------
Int mersenne_count_oracle(std::uint64_t n);  // #{0<=k<=n : 2^{k+2}-1 prime}, n <= 60
Int fermat_count_oracle(std::uint64_t n);    // #{0<=g<=n : 6g+5 a Fermat prime}, n <= 20000
Int twin_count_oracle(std::uint64_t n);      // #{p<=n : p, p+2 prime}
Int sg_count_oracle(std::uint64_t n);        // #{p<=n : p, 2p+1 prime}

// Validates that the derivation chain introduces every unknown exactly once
// from already-known names, i.e. that each choice of (n, k) pins at most one
// solution.
struct ChainReport {
  bool deterministic = false;
  std::string detail;
};
ChainReport chain_determinism_check(const CountingSpec& spec);

// Counting through the closed form.  Exact when every quantity fits the
// budget (only toy families do); otherwise returns a symbolic report with
// the instance's shape, t/w sizes, and the oracle count for comparison.
struct CountResult {
  bool exact = false;
  Int count = 0;
  nlohmann::json report;
};
CountResult count_via_term(Family fam, const Int& n, const EvalOptions& opts = {},
                           FactorialScheme scheme = FactorialScheme::MINIMAL);

}  // namespace atl
