#include <doctest.h>

#include <fstream>

#include <nlohmann/json.hpp>

#include "atl/oracles.hpp"

using namespace atl;

TEST_CASE("prime fixtures match the shipped data file") {
  std::ifstream in(ATL_FIXTURES_JSON);
  REQUIRE(in.good());
  nlohmann::json j = nlohmann::json::parse(in);
  auto check = [&j](const char* key, const std::vector<Int>& vals) {
    REQUIRE(j.contains(key));
    const auto& arr = j.at(key);
    REQUIRE(arr.size() == vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i)
      CHECK(Int(arr[i].get<std::string>()) == vals[i]);
  };
  const FixtureSet& f = fixtures();
  check("mersenne_primes_prefix", f.mersenne_primes_prefix);
  check("fermat_primes", f.fermat_primes);
  check("twin_lower_prefix", f.twin_lower_prefix);
  check("sophie_prefix", f.sophie_prefix);
  check("s_values", f.s_values);
  check("pell_x_values", f.pell_x_values);
}

TEST_CASE("primality and sieve spot values") {
  CHECK(is_prime(Int(2)));
  CHECK(is_prime(Int("2305843009213693951")));  // 2^61 - 1
  CHECK(!is_prime(Int(1)));
  CHECK(!is_prime(Int("4294967297")));  // 2^32 + 1 = 641 * 6700417
  auto ps = sieve(100);
  CHECK(ps.size() == 25);
  CHECK(ps.front() == 2);
  CHECK(ps.back() == 97);
}
