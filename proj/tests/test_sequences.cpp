#include <doctest.h>

#include "atl/errors.hpp"
#include "atl/sequences.hpp"

using namespace atl;

TEST_CASE("pell values and spec") {
  const CRecSpec spec = pell_x_spec();
  CHECK(spec.A == std::vector<Int>{Int(1), Int(-2)});
  CHECK(spec.B == std::vector<Int>{Int(1), Int(-4), Int(1)});
  CHECK(spec.c == 11);
  const long want[] = {1, 2, 7, 26, 97, 362, 1351, 5042};
  for (std::uint64_t n = 0; n < 8; ++n) CHECK(crec_eval(spec, n) == want[n]);
  for (std::uint64_t n = 1; n <= 8; ++n) CHECK(pell_x_term_eval(n) == crec_eval(spec, n));
}

TEST_CASE("lehmer values") {
  CHECK(lehmer_s(1) == 4);
  CHECK(lehmer_s(2) == 14);
  CHECK(lehmer_s(3) == 194);
  CHECK(lehmer_s(4) == 37634);
  CHECK(lehmer_s(5) == 1416317954);
  CHECK(lehmer_s(6) == Int("2005956546822746114"));
  CHECK(lehmer_s_term_eval(3) == 194);
  CHECK(lehmer_s_mod(5, Int(8191)) == fdiv_r(Int(1416317954), Int(8191)));
  // s(n) = s(n-1)^2 - 2
  for (std::uint64_t n = 2; n <= 8; ++n)
    CHECK(lehmer_s(n) == lehmer_s(n - 1) * lehmer_s(n - 1) - 2);
}

TEST_CASE("validity regimes") {
  CRecSpec fib{{Int(0), Int(1)}, {Int(1), Int(-1), Int(-1)}, Int(8)};
  ValidityReport vf = validity_check(fib);
  CHECK(vf.ok);
  CHECK(vf.variant == "direct");
  CHECK(vf.valid_from == 1);
  CHECK(minimal_admissible_base(fib) == 8);

  ValidityReport vp = validity_check(pell_x_spec());
  CHECK(vp.ok);
  CHECK(vp.variant == "offset");
  CHECK(vp.valid_from == 4);
  CHECK(minimal_admissible_base(pell_x_spec()) == 52);

  CRecSpec p9{{Int(1)}, {Int(1), Int(-9)}, Int(8)};
  CHECK(!validity_check(p9).ok);
  CHECK_THROWS_AS(extract_divmod_term(p9), ValidityCheckFailed);
}

TEST_CASE("closed forms agree with recurrences") {
  CRecSpec p3{{Int(1)}, {Int(1), Int(-3)}, Int(8)};
  ValidityReport v3 = validity_check(p3);
  CHECK(v3.ok);
  CHECK(v3.variant == "offset");
  CHECK(v3.valid_from == 5);
  for (std::uint64_t n = 5; n <= 12; ++n) CHECK(divmod_closed_form(p3, n) == pow_ui(Int(3), n));
  CRecSpec rt = crec_from_json(crec_to_json(p3));
  CHECK(rt.A == p3.A);
  CHECK(rt.B == p3.B);
  CHECK(rt.c == p3.c);
}
