#include <doctest.h>

#include "atl/errors.hpp"
#include "atl/term.hpp"

using namespace atl;

TEST_CASE("grammar round trips and precedence") {
  for (const char* s : {"2^n - 1", "x + y*z", "(a+b)%7", "gcd(a, b)", "hw(2^k - 1)",
                        "binom(n, k) / fact(k)", "min(a, absdiff(a, b))", "nu2(x)*x^2"}) {
    Term t = parse(s);
    CHECK(term_equal(parse(render(t)), t));
  }
  CHECK(term_equal(parse("a-b-c"), t_monus(t_monus(t_var("a"), t_var("b")), t_var("c"))));
  CHECK(term_equal(parse("a^b^c"), t_pow(t_var("a"), t_pow(t_var("b"), t_var("c")))));
  CHECK(term_equal(parse("2^(x+1)"), t_pow2(t_add(t_var("x"), t_const(1L)))));
  CHECK_THROWS_AS(parse("2 +"), ParseError);
  CHECK_THROWS_AS(parse("foo(3)"), ParseError);
}

TEST_CASE("evaluation semantics") {
  Env env{{"a", Int(7)}, {"b", Int(10)}};
  CHECK(eval(parse("a - b"), env) == 0);       // truncated subtraction
  CHECK(eval(parse("b - a"), env) == 3);
  CHECK(eval(parse("b / a"), env) == 1);       // floor division
  CHECK(eval(parse("b % a"), env) == 3);
  CHECK(eval(parse("2^b"), env) == 1024);
  CHECK(eval(parse("a^0"), env) == 1);
  CHECK(eval(parse("0^0"), Env{}) == 1);
  CHECK(eval(parse("absdiff(a, b)"), env) == 3);
  CHECK(eval(parse("min(a, b)"), env) == 7);
  CHECK(eval(parse("binom(b, a)"), env) == 120);
  CHECK(eval(parse("binom(a, b)"), env) == 0);  // k > n
  CHECK(eval(parse("fact(a)"), env) == 5040);
  CHECK(eval(parse("gcd(a*3, b*3)"), env) == 3);
  CHECK(eval(parse("nu2(b*b*b)"), env) == 3);
  CHECK(eval(parse("hw(b)"), env) == 2);
  CHECK_THROWS_AS(eval(parse("x"), env), UnboundVariable);
  CHECK_THROWS_AS(eval(parse("a / (b - b)"), env), DivisionByZero);
  CHECK_THROWS_AS(eval(parse("nu2(a - a)"), env), Nu2Zero);
  EvalOptions tiny;
  tiny.bit_budget = 64;
  CHECK_THROWS_AS(eval(parse("2^(2^b)"), env, tiny), BudgetExceeded);
}

TEST_CASE("sugar expansion stays in the base language") {
  for (const char* s : {"a^b", "binom(a, b)", "gcd(a, b)", "nu2(a)", "hw(a)", "fact(a)",
                        "min(a, b)", "absdiff(a, b)", "a % b"}) {
    Term t = parse(s);
    CHECK(!is_pure(t));
    CHECK(is_pure(expand_sugar(t)));
  }
  // semantics preserved on a spot value
  Env env{{"a", Int(6)}, {"b", Int(4)}};
  for (const char* s : {"a^b", "binom(a, b)", "gcd(a, b)", "min(a, b)", "a % b"})
    CHECK(eval(parse(s), env) == eval(expand_sugar(parse(s)), env));
}

TEST_CASE("JSON round trip and metrics") {
  Term t = parse("hw(2^n - 1) + binom(n, 2)");
  CHECK(term_equal(term_from_json(term_to_json(t)), t));
  Metrics m = metrics(t);
  CHECK(m.node_count > 5);
  CHECK(m.depth >= 3);
}
