#include <doctest.h>

#include "atl/counters.hpp"
#include "atl/errors.hpp"
#include "atl/mazzanti.hpp"

using namespace atl;

TEST_CASE("geometric power sums") {
  CHECK(geo_sum(1, Int(2), Int(4)) == 34);    // 0+2+8+24
  CHECK(geo_sum(2, Int(3), Int(3)) == 39);    // 0+3+36
  CHECK(geo_sum(3, Int(2), Int(4)) == 250);   // 0+2+32+216
  CHECK(geo_sum(0, Int(1), Int(7)) == 7);     // degenerate base
  CHECK(geo_sum(2, Int(1), Int(4)) == 14);    // 0+1+4+9
  CHECK(geo_sum(0, Int(5), Int(1)) == 1);
}

TEST_CASE("delta digit spreading") {
  CHECK(popcount(delta(Int(0), 3)) == 6);
  CHECK(popcount(delta(Int(1), 3)) == 3);
  CHECK(popcount(delta(Int(7), 3)) == 3);
  CHECK_THROWS_AS(delta(Int(8), 3), DomainError);
}

TEST_CASE("demo instance counts its zeros") {
  CountingInstance d = demo_counting_instance();
  CHECK(count_solutions(d) == 4);
  CHECK(build_M(d) == direct_sum_M(d));
  CountingInstance rt = instance_from_json(instance_to_json(d));
  CHECK(count_solutions(rt) == 4);
  CHECK(rt.t == d.t);
  CHECK(rt.w == d.w);
}

TEST_CASE("width selection") {
  CountingInstance d = demo_counting_instance();
  CHECK(choose_w(d.poly, d.t) <= d.w);
  SymbolicW sw = choose_w_symbolic(d.poly);
  CHECK(sw.alpha >= 1);
  // numeric width at several t never exceeds the symbolic line
  for (long t = 1; t <= 9; ++t)
    CHECK(choose_w(d.poly, Int(t)) <= Int(sw.alpha) * t + Int(sw.beta));
}

TEST_CASE("term formulas on spot values") {
  CHECK(binom_via_formula(Int(10), Int(3)) == 120);
  CHECK(binom_via_formula(Int(64), Int(32)) == Int("1832624140942590534"));
  CHECK(gcd_via_formula(Int(24), Int(9)) == 3);
  CHECK(gcd_via_formula(Int(1), Int(1)) == 1);
  CHECK_THROWS_AS(gcd_via_formula(Int(0), Int(5)), DomainError);
  CHECK(nu2_via_formula(Int(48)) == 4);
  CHECK_THROWS_AS(nu2_via_formula(Int(0)), Nu2Zero);
  CHECK(hw_via_term(Int(255)) == 8);
  CHECK(hw_via_term(Int(256)) == 1);
  CHECK(marchenkov_pow(Int(3), Int(4)) == 81);
  CHECK(marchenkov_pow(Int(0), Int(0)) == 1);
}

TEST_CASE("m profile census strings") {
  MProfile mp = m_profile(demo_counting_instance().poly);
  CHECK(mp.nonconstant + mp.constants == demo_counting_instance().poly.ms.size());
  CHECK(!m_profile_to_string(mp).empty());
}
