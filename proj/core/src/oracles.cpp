#include "atl/oracles.hpp"

#include "atl/counters.hpp"

namespace atl {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin below 2^64: this witness set decides primality
// for every n < 2^64 (Sorenson-Webster bound).
bool mr_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n.fits_ulong_p()) return mr_u64(n.get_ui());
  // special exact paths for the forms this library cares about
  if (is_power_of_two(n + 1)) {
    // n = 2^p - 1
    return lucas_lehmer_test(bit_length(n));
  }
  const Int m = n - 1;
  if (is_power_of_two(m)) {
    const std::size_t e = bit_length(m) - 1;  // n = 2^e + 1
    if ((e & (e - 1)) == 0 && e >= 2)         // e itself a power of two
      return pepin_test(static_cast<unsigned long>(e));
    return false;  // 2^e + 1 with e not a power of two is composite (e >= 2)
  }
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::vector<std::uint32_t> sieve(std::uint64_t n) {
  if (n > 100'000'000) throw BudgetExceeded("sieve: capped at 10^8");
  std::vector<std::uint32_t> primes;
  if (n < 2) return primes;
  std::vector<bool> comp(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
  }
  return primes;
}

const FixtureSet& fixtures() {
  static const FixtureSet fs = [] {
    FixtureSet f;
    auto fill = [](std::vector<Int>& v, std::initializer_list<const char*> xs) {
      for (const char* x : xs) v.emplace_back(x);
    };
    fill(f.mersenne_primes_prefix, {"3", "7", "31", "127", "8191", "131071", "524287"});
    fill(f.fermat_primes, {"3", "5", "17", "257", "65537"});
    fill(f.twin_lower_prefix, {"3", "5", "11", "17", "29", "41", "59", "71", "101", "107"});
    fill(f.sophie_prefix, {"2", "3", "5", "11", "23", "29", "41", "53", "83", "89"});
    fill(f.s_values, {"4", "14", "194", "37634", "1416317954", "2005956546822746114"});
    fill(f.pell_x_values, {"1", "2", "7", "26", "97", "362", "1351", "5042"});
    return f;
  }();
  return fs;
}

}  // namespace atl
