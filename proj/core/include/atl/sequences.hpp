#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "atl/term.hpp"

namespace atl {

// A C-recursive integer sequence presented as a rational generating
// function A(x)/B(x) with deg A < deg B and B(0) = 1:
//   sum_n t(n) x^n = A(x) / B(x),
// together with a base c for the div-mod closed form.
struct CRecSpec {
  std::vector<Int> A;  // constant term first
  std::vector<Int> B;  // B[0] must be 1
  Int c = 0;
};

// t(n) from the recurrence t(n) = a_n - sum_{i>=1} b_i t(n-i).
Int crec_eval(const CRecSpec& spec, std::uint64_t n);

// Validity of the closed form
//   t(n) = floor(c^{n^2} A~(c^n) / B~(c^n)) mod c^n
// (A~, B~ the degree-d reciprocals of A, B) in one of two regimes:
//   variant "direct":  c >= 8, 1/c < R, and t(n) < c^{n/3}  => valid n >= 1
//   variant "offset":  c >= 2, some m >= 2 with c^{-m} < R and
//                      t(n) < c^{n-2} for n >= m             => valid n >= m
// where R is the smallest modulus of a root of B.
struct ValidityReport {
  bool ok = false;
  std::string variant;        // "direct" or "offset"
  unsigned valid_from = 1;    // first n the closed form is guaranteed at
  double min_root_modulus = 0.0;
  std::string detail;
};
ValidityReport validity_check(const CRecSpec& spec, unsigned prefix = 64);

// Builds the closed-form term over the variable "n".  Throws
// ValidityCheckFailed when validity_check fails.
Term extract_divmod_term(const CRecSpec& spec);

// Direct big-integer evaluation of the same closed form (no Term machinery).
Int divmod_closed_form(const CRecSpec& spec, std::uint64_t n, const EvalOptions& opts = {});

// Smallest base c >= 8 for which the "direct" regime validates.
Int minimal_admissible_base(const CRecSpec& spec, unsigned prefix = 64);

// ---- Pell / Lehmer -----------------------------------------------------------
// x(n): x(0)=1, x(1)=2, x(n+2) = 4 x(n+1) - x(n); generating function
// (1-2x)/(1-4x+x^2), base c = 11.
CRecSpec pell_x_spec();

// Closed form x(n) = floor((11^{n^2+2n} - 2*11^{n^2+n}) / (11^{2n} - 4*11^n + 1)) mod 11^n,
// valid for n >= 1.
Int pell_x_term_eval(std::uint64_t n, const EvalOptions& opts = {});

// Lehmer chain s(1) = 4, s(n+1) = s(n)^2 - 2; s(n) = 2 x(2^{n-1}).
Int lehmer_s(std::uint64_t n);
Int lehmer_s_mod(std::uint64_t n, const Int& modulus);

// Closed form for s(n) obtained by substituting n := 2^{n-1} into the x(n)
// formula; budgeted (default max_n = 8).
Int lehmer_s_term_eval(std::uint64_t n, const EvalOptions& opts = {}, std::uint64_t max_n = 8);

// The x(n) closed form as a Term over "n".
Term pell_x_term();

// ---- JSON -------------------------------------------------------------------
// {"A":["1","-2"],"B":["1","-4","1"],"c":"11"}
nlohmann::json crec_to_json(const CRecSpec& spec);
CRecSpec crec_from_json(const nlohmann::json& j);

}  // namespace atl
