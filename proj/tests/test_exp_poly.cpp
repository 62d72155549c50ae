#include <doctest.h>

#include "atl/counters.hpp"
#include "atl/exp_poly.hpp"

using namespace atl;

namespace {
ExpMonomial mono(long c, std::vector<std::pair<long, unsigned>> fs) {
  ExpMonomial m;
  m.c = c;
  for (const auto& [v, r] : fs) m.f.push_back(ExpFactor{Int(v), r});
  return m;
}
}  // namespace

TEST_CASE("canonicalize merges and drops") {
  ExpPolynomial p;
  p.names = {"x"};
  p.ms = {mono(2, {{2, 1}}), mono(3, {{2, 1}}), mono(1, {{1, 0}}), mono(-1, {{1, 0}})};
  p.canonicalize();
  REQUIRE(p.ms.size() == 1);
  CHECK(p.ms[0].c == 5);
  CHECK(p.ms[0].f[0].v == 2);
  CHECK(p.ms[0].f[0].r == 1);
}

TEST_CASE("eval_poly and bind_name") {
  // f = 2^x * y - 3 x
  ExpPolynomial p;
  p.names = {"x", "y"};
  p.ms = {mono(1, {{2, 0}, {1, 1}}), mono(-3, {{1, 1}, {1, 0}})};
  Witness at{{"x", Int(3)}, {"y", Int(5)}};
  CHECK(eval_poly(p, at) == 8 * 5 - 9);
  ExpPolynomial q = bind_name(p, "y", Int(5), EvalOptions{});
  CHECK(q.names == std::vector<std::string>{"x"});
  CHECK(eval_poly(q, Witness{{"x", Int(3)}}) == 31);
}

TEST_CASE("expand_squares of the demo instance") {
  // (x + 2 - y)^2 has the expected monomial census after merging
  CountingInstance d = demo_counting_instance();
  CHECK(d.poly.names == std::vector<std::string>{"x", "y"});
  CHECK(brute_count(d.poly, d.t) == 4);
}

TEST_CASE("square systems serialize") {
  SquareSystem s;
  s.unknowns = {"x"};
  SquareSystem::Square sq;
  sq.l = {mono(1, {{1, 1}})};
  sq.r = {mono(2, {{1, 0}})};
  s.squares.push_back(sq);
  SquareSystem rt = system_from_json(system_to_json(s));
  CHECK(rt.unknowns == s.unknowns);
  REQUIRE(rt.squares.size() == 1);
  ExpPolynomial diff = expand_squares(s);
  ExpPolynomial diff2 = expand_squares(rt);
  Witness at{{"x", Int(5)}};
  CHECK(eval_poly(diff, at) == eval_poly(diff2, at));
  CHECK(eval_poly(diff, at) == 9);  // (x - 2)^2 at x=5
}
