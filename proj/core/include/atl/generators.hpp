#pragma once

#include <cstdint>
#include <utility>

#include "atl/term.hpp"

namespace atl {

// The factorial closed form n! = floor(r^n / C(r,n)) needs r >= (n+1)^{n+2}.
// POW8SQ uses r = 8^{n^2} (valid for n >= 1 and convenient as a pure term);
// MINIMAL uses r = (n+1)^{n+2} (the smallest admissible bound, much smaller
// numerically).
enum class FactorialScheme { POW8SQ, MINIMAL };

Int factorial_semantic(std::uint64_t n);  // budget: n <= 5000
std::uint64_t factorial_mod(std::uint64_t n, std::uint64_t m);

// The factorial closed form as a Term over "n", and its direct evaluation.
Term factorial_term(FactorialScheme scheme = FactorialScheme::POW8SQ);
Int factorial_term_eval(std::uint64_t n, FactorialScheme scheme = FactorialScheme::POW8SQ,
                        const EvalOptions& opts = {});

// Wilson-quotient generator: for c in {2,3},
//   wilson_gen(c, n) = c + (c * n!) mod (n+1).
// By Wilson's theorem n! = -1 mod (n+1) when n+1 is prime, so the value is
// n+1 for prime n+1 > c+1 and collapses to c for composite n+1 > 4.
std::uint64_t wilson_gen(unsigned c, std::uint64_t n);

// t(n) = 2 + (2 n!) mod (n+1): n+1 if n+1 is prime, else 2.
std::uint64_t wilson_t(std::uint64_t n);
// z(n) = 3 + (3 n!) mod (n+1): n+1 if n+1 is a prime > 3; small cases
// z(1) = 4, z(2) = 3, z(3) = 5; composite n+1 > 4 gives 3.
std::uint64_t wilson_z(std::uint64_t n);

// Mersenne-prime generators: variant 1 is z(2^{n+1}-2) (budget n <= 20),
// variant 2 is z(2^{t(n)}-2).
std::uint64_t mersenne_gen(std::uint64_t n, int variant = 1);

// Fermat-prime generators: variant 1 is z(2^{n+2}) (budget n <= 16),
// variant 2 is z(2^{2^n}) (budget n <= 4).
std::uint64_t fermat_gen(std::uint64_t n, int variant = 1);

// Twin pair generator: p1 = min(z(n+2), z(n+4)), p2 = p1 + 2.
std::pair<std::uint64_t, std::uint64_t> twin_gen(std::uint64_t n);

// Sophie Germain generator: g = min(t(n), t(2n+2)).
std::uint64_t sophie_gen(std::uint64_t n);

// Term forms of the generators above (over variable "n"), used to check that
// the term language really expresses them.
Term mersenne_gen_term(int variant = 1);
Term fermat_gen_term(int variant = 1);
Term twin_gen_term();   // lower member of the pair
Term sophie_gen_term();

}  // namespace atl
