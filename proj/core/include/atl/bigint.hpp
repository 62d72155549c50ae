#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "atl/errors.hpp"

namespace atl {

// Arbitrary-precision integer used throughout the library.
using Int = mpz_class;

// Number of bits in |x|; bit_length(0) == 0.
inline std::size_t bit_length(const Int& x) {
  if (sgn(x) == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

inline unsigned long to_ulong(const Int& x, const char* what) {
  if (sgn(x) < 0 || !x.fits_ulong_p())
    throw DomainError(std::string(what) + ": value does not fit in an unsigned word");
  return x.get_ui();
}

// 2^e for machine-word e.  Callers are responsible for budget checks.
inline Int pow2_ui(unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

inline Int pow_ui(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int ui_pow_ui(unsigned long base, unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

// Floor division; divisor must be nonzero.
inline Int fdiv_q(const Int& a, const Int& b) {
  if (sgn(b) == 0) throw DivisionByZero("floor division by zero");
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Floor remainder (result has the divisor's sign; nonneg for nonneg b).
inline Int fdiv_r(const Int& a, const Int& b) {
  if (sgn(b) == 0) throw DivisionByZero("remainder by zero");
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Truncated monus: max(a - b, 0).
inline Int monus(const Int& a, const Int& b) {
  if (a <= b) return Int(0);
  return a - b;
}

inline bool is_power_of_two(const Int& x) {
  return sgn(x) > 0 && mpz_popcount(x.get_mpz_t()) == 1;
}

// Number of ones in the binary expansion of x >= 0.
inline unsigned long popcount(const Int& x) {
  if (sgn(x) < 0) throw DomainError("popcount of a negative number");
  return mpz_popcount(x.get_mpz_t());
}

// 2-adic valuation of x >= 1.
inline unsigned long nu2(const Int& x) {
  if (sgn(x) == 0) throw Nu2Zero("nu2(0) is undefined");
  if (sgn(x) < 0) throw DomainError("nu2 of a negative number");
  return mpz_scan1(x.get_mpz_t(), 0);
}

inline std::string dec(const Int& x) { return x.get_str(); }

}  // namespace atl
