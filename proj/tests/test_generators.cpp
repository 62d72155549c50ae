#include <doctest.h>

#include "atl/errors.hpp"
#include "atl/generators.hpp"

using namespace atl;

TEST_CASE("wilson helpers and their quirks") {
  CHECK(wilson_t(0) == 2);   // n+1 = 1 not prime
  CHECK(wilson_t(1) == 2);
  CHECK(wilson_t(4) == 5);
  CHECK(wilson_t(5) == 2);   // 6 not prime
  CHECK(wilson_t(100) == 101);
  // z agrees with t except at two small exceptional points
  CHECK(wilson_z(1) == 4);
  CHECK(wilson_z(2) == 3);
  CHECK(wilson_z(3) == 5);   // 3*3! = 18 = 2 mod 4, so z(3) = 2+3
  CHECK(wilson_z(4) == 5);
  CHECK(wilson_z(5) == 3);
  CHECK(wilson_gen(2, 7) == wilson_t(7));
  CHECK(wilson_gen(3, 7) == wilson_z(7));
  CHECK_THROWS_AS(wilson_gen(4, 7), DomainError);
}

TEST_CASE("family generators") {
  CHECK(mersenne_gen(0, 1) == 3);
  CHECK(mersenne_gen(4, 1) == 31);
  CHECK(mersenne_gen(5, 1) == 3);   // 63 composite
  CHECK(mersenne_gen(4, 2) == 31);
  CHECK(fermat_gen(0, 1) == 5);
  CHECK(fermat_gen(2, 1) == 17);
  CHECK(fermat_gen(6, 1) == 257);
  CHECK(fermat_gen(14, 1) == 65537);
  CHECK(fermat_gen(4, 2) == 65537);
  CHECK(twin_gen(0) == std::pair<std::uint64_t, std::uint64_t>{3, 5});
  CHECK(twin_gen(2) == std::pair<std::uint64_t, std::uint64_t>{5, 7});
  CHECK(twin_gen(1) == std::pair<std::uint64_t, std::uint64_t>{3, 5});  // 4,6 not prime
  CHECK(sophie_gen(1) == 2);
  CHECK(sophie_gen(2) == 3);  // 3 and 7 prime
  CHECK(sophie_gen(10) == 11);
}

TEST_CASE("generator budgets") {
  CHECK_THROWS_AS(mersenne_gen(21, 1), BudgetExceeded);
  CHECK_THROWS_AS(fermat_gen(17, 1), BudgetExceeded);
  CHECK_THROWS_AS(fermat_gen(5, 2), BudgetExceeded);
}

TEST_CASE("factorial closed forms") {
  for (std::uint64_t n = 0; n <= 6; ++n) {
    CHECK(factorial_term_eval(n, FactorialScheme::POW8SQ) == factorial_semantic(n));
    CHECK(factorial_term_eval(n, FactorialScheme::MINIMAL) == factorial_semantic(n));
  }
  CHECK(factorial_semantic(5) == 120);
  CHECK(factorial_mod(5, 7) == 120 % 7);
}
