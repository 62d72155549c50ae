#pragma once

#include <cstdint>
#include <vector>

#include "atl/bigint.hpp"

namespace atl {

// Deterministic primality for n < 2^64 (Miller-Rabin with the proven witness
// set {2,3,5,7,...,37}).  For larger n: exact Lucas-Lehmer for 2^p - 1,
// exact Pepin for 2^{2^k} + 1, otherwise a strong probabilistic test with
// error probability below 4^-40.
bool is_prime(const Int& n);

// Primes <= n, n <= 10^8.
std::vector<std::uint32_t> sieve(std::uint64_t n);

// Frozen reference values used across the test suite.
struct FixtureSet {
  std::vector<Int> mersenne_primes_prefix;  // 3, 7, 31, 127, ...
  std::vector<Int> fermat_primes;           // 3, 5, 17, 257, 65537
  std::vector<Int> twin_lower_prefix;       // 3, 5, 11, 17, ...
  std::vector<Int> sophie_prefix;           // 2, 3, 5, 11, ...
  std::vector<Int> s_values;                // s(1..6) = 4, 14, 194, ...
  std::vector<Int> pell_x_values;           // x(0..7) = 1, 2, 7, ...
};
const FixtureSet& fixtures();

}  // namespace atl
