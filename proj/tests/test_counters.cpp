#include <doctest.h>

#include <algorithm>

#include "atl/counters.hpp"
#include "atl/errors.hpp"

using namespace atl;

TEST_CASE("system shapes") {
  CountingSpec m = build_mersenne_system();
  CHECK(m.system.unknowns.size() == 19);
  CHECK(m.system.squares.size() == 16);
  CHECK(expand_squares(m.system).ms.size() == 48);
  CHECK(m.offset == 1);
  CHECK(chain_determinism_check(m).deterministic);

  CountingSpec f = build_fermat_system();
  CHECK(f.system.unknowns.size() == 7);
  CHECK(f.system.squares.size() == 6);
  CHECK(expand_squares(f.system).ms.size() == 17);
  CHECK(f.offset == 0);
  CHECK(chain_determinism_check(f).deterministic);

  CountingSpec t1 = build_twin_system(FactorialScheme::MINIMAL);
  CHECK(t1.system.unknowns.size() == 39);
  CHECK(t1.system.squares.size() == 31);
  CountingSpec t2 = build_twin_system(FactorialScheme::POW8SQ);
  CHECK(t2.system.unknowns.size() == 34);
  CHECK(t2.system.squares.size() == 27);
  CHECK(chain_determinism_check(t1).deterministic);
  CHECK(chain_determinism_check(t2).deterministic);
}

TEST_CASE("witness spot values") {
  auto wm = mersenne_witness(1, Int(1));
  REQUIRE(wm.has_value());
  CHECK(wm->complete());
  CHECK(wm->values.at("g") == 214358881);
  CHECK(wm->values.at("K") == 218004490);
  CHECK(!mersenne_witness(9, Int(9)).has_value());  // 2047 = 23 * 89

  auto wf = fermat_witness(0, Int(0));
  REQUIRE(wf.has_value());
  CHECK(wf->values.at("c") == 144);
  CHECK(wf->values.at("b") == 29);
  CHECK(!fermat_witness(1, Int(1)).has_value());

  auto wt = twin_witness(1, Int(3), FactorialScheme::MINIMAL);
  REQUIRE(wt.has_value());
  CHECK(wt->complete());
  CHECK(wt->values.at("r") == 81);
  auto w3 = twin_witness(3, Int(5), FactorialScheme::MINIMAL);
  REQUIRE(w3.has_value());
  CHECK(w3->absent.size() == 12);
  CHECK(!twin_witness(5, Int(7), FactorialScheme::MINIMAL).has_value());  // 7,9 not twin
}

TEST_CASE("primality criteria spot values") {
  CHECK(lucas_lehmer_test(2));
  CHECK(lucas_lehmer_test(13));
  CHECK(!lucas_lehmer_test(11));
  CHECK(jones_test(2));
  CHECK(!jones_test(1));
  CHECK(pepin_test(4));
  CHECK(!pepin_test(5));
  CHECK(clement_test(1));
  CHECK(!clement_test(2));
  CHECK(sg_test(23));
  CHECK(!sg_test(7));
}

TEST_CASE("count oracles") {
  CHECK(mersenne_count_oracle(11) == 5);
  CHECK(fermat_count_oracle(10922) == 4);
  CHECK(twin_count_oracle(30) == 5);
  CHECK(sg_count_oracle(30) == 6);
  CHECK_THROWS_AS(mersenne_count_oracle(61), BudgetExceeded);
}

TEST_CASE("symbolic count reports") {
  CountResult r = count_via_term(Family::MERSENNE, Int(0));
  CHECK(!r.exact);
  CHECK(r.report.at("mode") == "symbolic");
  CHECK(r.report.at("t_digits10") == "3");
  CHECK(r.report.at("oracle_count") == "1");
  CHECK_THROWS_AS(count_via_term(Family::SOPHIE, Int(3)), DomainError);
}

TEST_CASE("coordinate bound reporting") {
  auto wm = mersenne_witness(1, Int(1));
  REQUIRE(wm.has_value());
  CountingSpec m = build_mersenne_system();
  Int t1 = m.t_func(Int(1), EvalOptions{});
  std::vector<std::string> viol = coords_not_below(*wm, t1);
  viol.erase(std::remove(viol.begin(), viol.end(), "n"), viol.end());
  std::sort(viol.begin(), viol.end());
  // the k=1 witness genuinely reaches the box bound in two coordinates
  CHECK(viol == std::vector<std::string>{"K", "g"});
}
