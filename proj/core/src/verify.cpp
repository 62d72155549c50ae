#include "atl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <future>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include <nlohmann/json.hpp>

#include "atl/counters.hpp"
#include "atl/exp_poly.hpp"
#include "atl/generators.hpp"
#include "atl/mazzanti.hpp"
#include "atl/oracles.hpp"
#include "atl/sequences.hpp"
#include "atl/term.hpp"

namespace atl {

namespace {

// ---- small utilities -----------------------------------------------------

template <typename T>
std::string show(const T& v) {
  if constexpr (std::is_same_v<std::decay_t<T>, Int>) {
    return v.get_str();
  } else if constexpr (std::is_same_v<std::decay_t<T>, bool>) {
    return v ? "true" : "false";
  } else if constexpr (std::is_convertible_v<T, std::string>) {
    return std::string(v);
  } else if constexpr (std::is_integral_v<std::decay_t<T>>) {
    return std::to_string(v);
  } else {
    return "<value>";
  }
}

// Failure accumulator for one check; keeps the first few mismatches.
class Ex {
 public:
  void fail(const std::string& what) {
    ++count_;
    if (count_ <= 4) {
      if (!msg_.empty()) msg_ += "; ";
      msg_ += what;
    }
  }
  void that(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  template <typename A, typename B>
  void eq(const A& got, const B& want, const std::string& what) {
    if (!(got == want)) fail(what + ": got " + show(got) + ", want " + show(want));
  }
  std::string done() const {
    if (count_ == 0) return {};
    std::string m = msg_;
    if (count_ > 4) m += "; (+" + std::to_string(count_ - 4) + " more)";
    return m;
  }

 private:
  std::string msg_;
  std::size_t count_ = 0;
};

EvalOptions raise_bits(const EvalOptions& o, std::uint64_t bits) {
  EvalOptions h = o;
  if (h.bit_budget < bits) h.bit_budget = bits;
  return h;
}

std::vector<bool> prime_flags(std::uint64_t n) {
  std::vector<bool> f(n + 1, false);
  for (std::uint32_t p : sieve(n)) f[p] = true;
  return f;
}

ExpMonomial mono(long c, std::vector<std::pair<long, unsigned>> fs) {
  ExpMonomial m;
  m.c = c;
  for (const auto& [v, r] : fs) m.f.push_back(ExpFactor{Int(v), r});
  return m;
}

std::string join_names(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) {
    if (!s.empty()) s += ",";
    s += x;
  }
  return s;
}

std::uint64_t digits10(const Int& x) { return x.get_str().size(); }

// ---- terms -----------------------------------------------------------------

Term random_term(std::mt19937_64& rng, int depth) {
  auto pick = [&rng](std::uint64_t k) { return static_cast<unsigned>(rng() % k); };
  if (depth <= 0 || pick(4) == 0) {
    if (pick(2) == 0) return t_const(static_cast<long>(pick(13)));
    return t_var(std::string(1, static_cast<char>('a' + pick(3))));
  }
  Term x = random_term(rng, depth - 1);
  switch (pick(14)) {
    case 0: return t_add(x, random_term(rng, depth - 1));
    case 1: return t_monus(x, random_term(rng, depth - 1));
    case 2: return t_mul(x, random_term(rng, depth - 1));
    case 3: return t_divfloor(x, random_term(rng, depth - 1));
    case 4: return t_pow2(x);
    case 5: return t_mod(x, random_term(rng, depth - 1));
    case 6: return t_pow(x, random_term(rng, depth - 1));
    case 7: return t_absdiff(x, random_term(rng, depth - 1));
    case 8: return t_min(x, random_term(rng, depth - 1));
    case 9: return t_binom(x, random_term(rng, depth - 1));
    case 10: return t_fact(x);
    case 11: return t_gcd(x, random_term(rng, depth - 1));
    case 12: return t_nu2(x);
    default: return t_hw(x);
  }
}

void chk_roundtrip_random_asts(Ex& ex, const EvalOptions&) {
  std::mt19937_64 rng(424242);
  for (int i = 0; i < 200; ++i) {
    Term t = random_term(rng, 4);
    Term reparsed = parse(render(t));
    if (!term_equal(reparsed, t))
      ex.fail("sample " + std::to_string(i) + ": parse(render(t)) differs; rendered \"" +
              render(t) + "\"");
    Term fromjson = term_from_json(term_to_json(t));
    if (!term_equal(fromjson, t))
      ex.fail("sample " + std::to_string(i) + ": JSON round trip differs");
    if (!is_pure(expand_sugar(t)))
      ex.fail("sample " + std::to_string(i) + ": expand_sugar left a sugared operator");
    ex.that(metrics(t).node_count >= 1, "metrics node count");
  }
  // fixed grammar facts
  ex.that(term_equal(parse("a-b-c"), t_monus(t_monus(t_var("a"), t_var("b")), t_var("c"))),
          "\"-\" associates left");
  ex.that(term_equal(parse("a^b^c"), t_pow(t_var("a"), t_pow(t_var("b"), t_var("c")))),
          "\"^\" associates right");
  ex.that(term_equal(parse("3*x%5"), t_mod(t_mul(t_const(3L), t_var("x")), t_const(5L))),
          "\"*\" and \"%\" share one level, left to right");
  ex.that(term_equal(parse("2^(x+1)"), t_pow2(t_add(t_var("x"), t_const(1L)))),
          "base-2 powers parse to the dedicated operator");
}

void chk_sugar_expansion_semantics(Ex& ex, const EvalOptions& opts) {
  const EvalOptions heavy = raise_bits(opts, std::uint64_t(1) << 26);
  const Term va = t_var("a"), vb = t_var("b");
  auto both = [&](const Term& t, long a, long b, const char* what) {
    Env env{{"a", Int(a)}, {"b", Int(b)}};
    Int direct = eval(t, env, heavy);
    Int expanded = eval(expand_sugar(t), env, heavy);
    if (direct != expanded)
      ex.fail(std::string(what) + "(" + std::to_string(a) + "," + std::to_string(b) +
              "): direct " + direct.get_str() + " vs expanded " + expanded.get_str());
  };
  for (long a = 0; a <= 12; ++a)
    for (long b = 1; b <= 12; ++b) both(t_mod(va, vb), a, b, "mod");
  for (long a = 0; a <= 10; ++a)
    for (long b = 0; b <= 6; ++b) both(t_pow(va, vb), a, b, "pow");
  for (long a = 0; a <= 12; ++a)
    for (long b = 0; b <= 12; ++b) {
      both(t_absdiff(va, vb), a, b, "absdiff");
      both(t_min(va, vb), a, b, "min");
    }
  for (long a = 1; a <= 8; ++a)
    for (long b = 0; b <= a + 2; ++b) both(t_binom(va, vb), a, b, "binom");
  for (long a = 0; a <= 1; ++a) both(t_fact(va), a, 0, "fact");
  for (long a = 1; a <= 4; ++a)
    for (long b = 1; b <= 4; ++b) both(t_gcd(va, vb), a, b, "gcd");
  for (long a = 1; a <= 3; ++a) both(t_nu2(va), a, 0, "nu2");
  both(t_hw(va), 1, 0, "hw");
  // division by zero propagates identically through the rewrite
  for (const Term& t : {t_mod(va, vb), t_divfloor(va, vb)}) {
    for (const Term& u : {t, expand_sugar(t)}) {
      try {
        eval(u, Env{{"a", Int(5)}, {"b", Int(0)}}, heavy);
        ex.fail("zero divisor must throw");
      } catch (const DivisionByZero&) {
      }
    }
  }
}

// ---- sequences ---------------------------------------------------------------

void chk_pell_fixture_values(Ex& ex, const EvalOptions& opts) {
  const std::vector<long> want = {1, 2, 7, 26, 97, 362, 1351, 5042};
  const auto& fx = fixtures().pell_x_values;
  ex.eq(fx.size(), want.size(), "fixture length");
  const CRecSpec spec = pell_x_spec();
  for (std::size_t n = 0; n < want.size(); ++n) {
    ex.eq(crec_eval(spec, n), Int(want[n]), "x(" + std::to_string(n) + ")");
    if (n < fx.size()) ex.eq(fx[n], Int(want[n]), "fixture x(" + std::to_string(n) + ")");
    if (n >= 1)
      ex.eq(pell_x_term_eval(n, opts), Int(want[n]),
            "closed form x(" + std::to_string(n) + ")");
  }
}

void chk_pell_term_matches_recurrence(Ex& ex, const EvalOptions& opts) {
  const CRecSpec spec = pell_x_spec();
  for (std::uint64_t n = 1; n <= 300; ++n) {
    Int want = crec_eval(spec, n);
    Int got = pell_x_term_eval(n, opts);
    if (got != want) {
      ex.fail("n=" + std::to_string(n) + ": closed form " + got.get_str() +
              " != recurrence " + want.get_str());
      if (n > 5) break;
    }
    if (n <= 300)
      ex.eq(divmod_closed_form(spec, n, opts), want,
            "generic div-mod form at n=" + std::to_string(n));
  }
  for (std::uint64_t n = 1; n <= 6; ++n)
    ex.eq(eval(pell_x_term(), Env{{"n", Int(n)}}, opts), crec_eval(spec, n),
          "term-language form at n=" + std::to_string(n));
}

void chk_pell_doubling(Ex& ex, const EvalOptions&) {
  const CRecSpec spec = pell_x_spec();
  for (std::uint64_t n = 1; n <= 150; ++n) {
    Int xn = crec_eval(spec, n);
    ex.eq(crec_eval(spec, 2 * n), Int(2 * xn * xn - 1),
          "x(2n) = 2x(n)^2 - 1 at n=" + std::to_string(n));
  }
}

void chk_lehmer_closed_form(Ex& ex, const EvalOptions& opts) {
  for (std::uint64_t n = 1; n <= 8; ++n)
    ex.eq(lehmer_s_term_eval(n, opts), lehmer_s(n), "s(" + std::to_string(n) + ")");
}

void chk_lehmer_fixture_values(Ex& ex, const EvalOptions&) {
  const std::vector<Int> want = {Int(4),          Int(14),
                                 Int(194),        Int(37634),
                                 Int(1416317954), Int("2005956546822746114")};
  const auto& fx = fixtures().s_values;
  ex.eq(fx.size(), want.size(), "fixture length");
  const CRecSpec spec = pell_x_spec();
  for (std::size_t i = 0; i < want.size(); ++i) {
    ex.eq(lehmer_s(i + 1), want[i], "s(" + std::to_string(i + 1) + ")");
    if (i < fx.size()) ex.eq(fx[i], want[i], "fixture s(" + std::to_string(i + 1) + ")");
  }
  for (std::uint64_t n = 1; n <= 10; ++n)
    ex.eq(lehmer_s(n), Int(2 * crec_eval(spec, std::uint64_t(1) << (n - 1))),
          "s(n) = 2 x(2^{n-1}) at n=" + std::to_string(n));
  for (std::uint64_t n = 1; n <= 6; ++n)
    for (long m : {97L, 8191L})
      ex.eq(lehmer_s_mod(n, Int(m)), fdiv_r(lehmer_s(n), Int(m)),
            "s(" + std::to_string(n) + ") mod " + std::to_string(m));
}

void chk_extraction_corpus(Ex& ex, const EvalOptions& opts) {
  // Fibonacci: direct regime at the minimal base 8
  CRecSpec fib{{Int(0), Int(1)}, {Int(1), Int(-1), Int(-1)}, Int(8)};
  ValidityReport vf = validity_check(fib);
  ex.that(vf.ok, "fib: validity at c=8");
  ex.eq(vf.variant, std::string("direct"), "fib: regime");
  ex.eq(vf.valid_from, 1u, "fib: valid from");
  for (std::uint64_t n = 1; n <= 40; ++n)
    ex.eq(divmod_closed_form(fib, n, opts), crec_eval(fib, n),
          "fib closed form at n=" + std::to_string(n));
  ex.eq(minimal_admissible_base(fib), Int(8), "fib: minimal direct base");
  ex.eq(eval(extract_divmod_term(fib), Env{{"n", Int(10)}}, opts), Int(55),
        "fib term at n=10");

  // 3^n at c=8 only works in the offset regime, from n=5 on
  CRecSpec p3{{Int(1)}, {Int(1), Int(-3)}, Int(8)};
  ValidityReport v3 = validity_check(p3);
  ex.that(v3.ok, "3^n: validity at c=8");
  ex.eq(v3.variant, std::string("offset"), "3^n: regime");
  ex.eq(v3.valid_from, 5u, "3^n: valid from");
  for (std::uint64_t n = 5; n <= 20; ++n)
    ex.eq(divmod_closed_form(p3, n, opts), pow_ui(Int(3), n),
          "3^n closed form at n=" + std::to_string(n));

  // Pell x(n) at c=11: offset regime, guaranteed from n=4
  const CRecSpec pell = pell_x_spec();
  ValidityReport vp = validity_check(pell);
  ex.that(vp.ok, "pell: validity at c=11");
  ex.eq(vp.variant, std::string("offset"), "pell: regime");
  ex.eq(vp.valid_from, 4u, "pell: valid from");
  ex.eq(minimal_admissible_base(pell), Int(52), "pell: minimal direct base");

  // JSON round trip of the spec
  CRecSpec rt = crec_from_json(crec_to_json(pell));
  ex.that(rt.A == pell.A && rt.B == pell.B && rt.c == pell.c, "crec JSON round trip");
}

void chk_extraction_rejects(Ex& ex, const EvalOptions&) {
  // 9^n grows too fast for base 8 in either regime
  CRecSpec p9{{Int(1)}, {Int(1), Int(-9)}, Int(8)};
  ex.that(!validity_check(p9).ok, "9^n at c=8 must fail validation");
  try {
    extract_divmod_term(p9);
    ex.fail("extract_divmod_term(9^n, c=8) must throw");
  } catch (const ValidityCheckFailed&) {
  }
}

// ---- generators ----------------------------------------------------------------

void chk_wilson_small_values(Ex& ex, const EvalOptions&) {
  auto flags = prime_flags(302);
  for (std::uint64_t n = 0; n <= 300; ++n) {
    std::uint64_t tw = flags[n + 1] ? n + 1 : 2;
    ex.eq(wilson_t(n), tw, "t(" + std::to_string(n) + ")");
    std::uint64_t zw;
    if (n == 1) zw = 4;        // 3*1! mod 2 = 1
    else if (n == 3) zw = 5;   // 3*3! mod 4 = 2
    else if (flags[n + 1] && n + 1 > 3) zw = n + 1;
    else zw = 3;
    ex.eq(wilson_z(n), zw, "z(" + std::to_string(n) + ")");
  }
  ex.eq(wilson_z(1), std::uint64_t(4), "z(1)");
  ex.eq(wilson_z(2), std::uint64_t(3), "z(2)");
  ex.eq(wilson_z(3), std::uint64_t(5), "z(3)");
  try {
    wilson_gen(4, 10);
    ex.fail("wilson_gen offset must be 2 or 3");
  } catch (const DomainError&) {
  }
}

void chk_mersenne_image(Ex& ex, const EvalOptions&) {
  std::set<std::uint64_t> img;
  for (std::uint64_t n = 0; n <= 12; ++n) {
    std::uint64_t v = mersenne_gen(n, 1);
    img.insert(v);
    ex.eq(mersenne_gen(n, 2), v, "variant agreement at n=" + std::to_string(n));
    std::uint64_t mers = (std::uint64_t(1) << (n + 1)) - 1;
    ex.that(v == 3 || v == mers,
            "value at n=" + std::to_string(n) + " must be 3 or 2^{n+1}-1, got " +
                std::to_string(v));
  }
  const std::set<std::uint64_t> want = {3, 7, 31, 127, 8191};
  if (img != want) {
    std::string got;
    for (auto v : img) got += (got.empty() ? "" : ",") + std::to_string(v);
    ex.fail("image over n <= 12 is {" + got + "}, want {3,7,31,127,8191}");
  }
}

void chk_fermat_values(Ex& ex, const EvalOptions&) {
  const std::vector<std::uint64_t> f1 = {5, 3, 17, 3, 3,     3, 257, 3, 3,
                                         3, 3, 3,  3, 3, 65537, 3, 3};
  const std::set<std::uint64_t> fermat = {3, 5, 17, 257, 65537};
  for (std::uint64_t n = 0; n < f1.size(); ++n) {
    std::uint64_t v = fermat_gen(n, 1);
    ex.eq(v, f1[n], "first form at n=" + std::to_string(n));
    ex.that(fermat.count(v) == 1,
            "value at n=" + std::to_string(n) + " outside the Fermat-prime set");
  }
  const std::vector<std::uint64_t> f2 = {3, 5, 17, 257, 65537};
  for (std::uint64_t n = 0; n < f2.size(); ++n)
    ex.eq(fermat_gen(n, 2), f2[n], "second form at n=" + std::to_string(n));
}

void chk_twin_pairs_against_sieve(Ex& ex, const EvalOptions&) {
  auto flags = prime_flags(10007);
  for (std::uint64_t n = 0; n <= 10000; ++n) {
    auto [p1, p2] = twin_gen(n);
    ex.that(p2 == p1 + 2 && flags[p1] && flags[p2],
            "output at n=" + std::to_string(n) + " is not a twin pair: (" +
                std::to_string(p1) + "," + std::to_string(p2) + ")");
    bool tw = flags[n + 3] && flags[n + 5];
    std::uint64_t w1 = tw ? n + 3 : 3;
    if (p1 != w1)
      ex.fail("n=" + std::to_string(n) + ": pair starts at " + std::to_string(p1) +
              ", want " + std::to_string(w1));
  }
}

void chk_sophie_against_sieve(Ex& ex, const EvalOptions&) {
  auto flags = prime_flags(20005);
  for (std::uint64_t n = 0; n <= 10000; ++n) {
    std::uint64_t g = sophie_gen(n);
    ex.that(flags[g] && flags[2 * g + 1],
            "output at n=" + std::to_string(n) + " is not Sophie Germain: " +
                std::to_string(g));
    std::uint64_t want = (flags[n + 1] && flags[2 * n + 3]) ? n + 1 : 2;
    if (g != want)
      ex.fail("n=" + std::to_string(n) + ": got " + std::to_string(g) + ", want " +
              std::to_string(want));
  }
}

void chk_term_forms_agree(Ex& ex, const EvalOptions& opts) {
  for (std::uint64_t n = 0; n <= 10; ++n)
    ex.eq(eval(mersenne_gen_term(1), Env{{"n", Int(n)}}, opts), Int(mersenne_gen(n, 1)),
          "Mersenne form 1 term at n=" + std::to_string(n));
  for (std::uint64_t n = 0; n <= 12; ++n)
    ex.eq(eval(mersenne_gen_term(2), Env{{"n", Int(n)}}, opts), Int(mersenne_gen(n, 2)),
          "Mersenne form 2 term at n=" + std::to_string(n));
  for (std::uint64_t n = 0; n <= 8; ++n)
    ex.eq(eval(fermat_gen_term(1), Env{{"n", Int(n)}}, opts), Int(fermat_gen(n, 1)),
          "Fermat form 1 term at n=" + std::to_string(n));
  for (std::uint64_t n = 0; n <= 4; ++n)
    ex.eq(eval(fermat_gen_term(2), Env{{"n", Int(n)}}, opts), Int(fermat_gen(n, 2)),
          "Fermat form 2 term at n=" + std::to_string(n));
  for (std::uint64_t n = 0; n <= 60; ++n) {
    ex.eq(eval(twin_gen_term(), Env{{"n", Int(n)}}, opts), Int(twin_gen(n).first),
          "twin term at n=" + std::to_string(n));
    ex.eq(eval(sophie_gen_term(), Env{{"n", Int(n)}}, opts), Int(sophie_gen(n)),
          "Sophie Germain term at n=" + std::to_string(n));
  }
}

void chk_factorial_closed_form(Ex& ex, const EvalOptions& opts) {
  for (std::uint64_t n = 0; n <= 8; ++n) {
    ex.eq(factorial_term_eval(n, FactorialScheme::POW8SQ, opts), factorial_semantic(n),
          "r=8^{n^2} scheme at n=" + std::to_string(n));
    ex.eq(factorial_term_eval(n, FactorialScheme::MINIMAL, opts), factorial_semantic(n),
          "r=(n+1)^{n+2} scheme at n=" + std::to_string(n));
  }
  for (std::uint64_t n : {20, 30})
    ex.eq(factorial_term_eval(n, FactorialScheme::MINIMAL, opts), factorial_semantic(n),
          "minimal scheme at n=" + std::to_string(n));
  ex.eq(factorial_term_eval(20, FactorialScheme::POW8SQ, opts), factorial_semantic(20),
        "power scheme at n=20");
  ex.that(is_pure(expand_sugar(factorial_term(FactorialScheme::POW8SQ))),
          "factorial term expands into the base language");
}

// ---- mazzanti -------------------------------------------------------------------

void chk_delta_hamming_law(Ex& ex, const EvalOptions&) {
  for (unsigned long b = 1; b <= 12; ++b) {
    const Int top = pow2_ui(b);
    for (Int a = 0; a < top; ++a) {
      unsigned long want = (a == 0) ? 2 * b : b;
      unsigned long got = popcount(delta(a, b));
      if (got != want) {
        ex.fail("popcount(delta(" + a.get_str() + "," + std::to_string(b) + ")) = " +
                std::to_string(got) + ", want " + std::to_string(want));
        if (b > 3) return;
      }
    }
  }
  // spot values at machine width
  ex.eq(popcount(delta(Int(0), 64)), 128ul, "delta(0,64)");
  ex.eq(popcount(delta(Int(1), 64)), 64ul, "delta(1,64)");
  ex.eq(popcount(delta(pow2_ui(64) - 1, 64)), 64ul, "delta(2^64-1,64)");
  try {
    delta(pow2_ui(12), 12);
    ex.fail("delta must reject a >= 2^b");
  } catch (const DomainError&) {
  }
}

void chk_geo_sum_closed_forms(Ex& ex, const EvalOptions& opts) {
  for (unsigned r = 0; r <= 2; ++r)
    for (long q = 1; q <= 7; ++q)
      for (long t = 1; t <= 50; ++t) {
        Int direct = 0, qj = 1;
        for (long j = 0; j < t; ++j) {
          if (j) qj *= q;
          direct += ui_pow_ui(j, r) * qj;
        }
        ex.eq(geo_sum(r, Int(q), Int(t), opts), direct,
              "S_" + std::to_string(r) + "(" + std::to_string(q) + "," + std::to_string(t) +
                  ")");
      }
  ex.eq(geo_sum(1, Int(2), Int(4), opts), Int(34), "S_1(2,4)");
  ex.eq(geo_sum(2, Int(3), Int(3), opts), Int(39), "S_2(3,3)");
  ex.eq(geo_sum(3, Int(2), Int(4), opts), Int(250), "S_3(2,4)");
}

void chk_c_term_divisibility(Ex& ex, const EvalOptions&) {
  // (2^w+1) | (2^w - c0 + 1)(2^{2wT} - 1) for every 0 <= c0 <= 2^w
  for (unsigned long w : {3ul, 5ul, 8ul})
    for (unsigned long T : {2ul, 4ul, 8ul}) {
      const Int m = pow2_ui(w) + 1;
      const Int big = pow2_ui(2 * w * T) - 1;
      for (Int c0 = 0; c0 <= pow2_ui(w); ++c0) {
        Int prod = (pow2_ui(w) - c0 + 1) * big;
        if (fdiv_r(prod, m) != 0)
          ex.fail("w=" + std::to_string(w) + " T=" + std::to_string(T) +
                  " c0=" + c0.get_str() + ": product not divisible by 2^w+1");
      }
    }
}

void chk_fixed_instances_count(Ex& ex, const EvalOptions& opts) {
  // (x-1)^2 on [0,3): exactly one zero; the packed number is fully frozen
  ExpPolynomial p1;
  p1.names = {"x"};
  p1.ms = {mono(1, {{1, 2}}), mono(-2, {{1, 1}}), mono(1, {{1, 0}})};
  p1.canonicalize();
  ex.eq(choose_w(p1, Int(3)), Int(4), "(x-1)^2: width");
  CountingInstance i1{p1, Int(3), Int(4)};
  ex.eq(build_M(i1, opts), Int(15794160), "(x-1)^2: packed number");
  ex.eq(direct_sum_M(i1, opts), Int(15794160), "(x-1)^2: direct sum");
  ex.eq(count_solutions(i1, opts), Int(1), "(x-1)^2: count");
  ex.eq(Int(brute_count(p1, Int(3), opts)), Int(1), "(x-1)^2: brute count");

  // (x+2-y)^2 on [0,6): four zeros (the library's demo instance)
  CountingInstance d = demo_counting_instance();
  ex.eq(d.t, Int(6), "demo: box");
  ex.eq(d.w, Int(8), "demo: width");
  ex.eq(count_solutions(d, opts), Int(4), "demo: count");
  ex.eq(Int(brute_count(d.poly, d.t, opts)), Int(4), "demo: brute count");
  ex.eq(build_M(d, opts), direct_sum_M(d, opts), "demo: packed number vs direct sum");

  // (x+1)^2 on [0,4): no zeros
  ExpPolynomial p2;
  p2.names = {"x"};
  p2.ms = {mono(1, {{1, 2}}), mono(2, {{1, 1}}), mono(1, {{1, 0}})};
  p2.canonicalize();
  CountingInstance i2{p2, Int(4), choose_w(p2, Int(4))};
  ex.eq(count_solutions(i2, opts), Int(0), "(x+1)^2: count");
  ex.eq(Int(brute_count(p2, Int(4), opts)), Int(0), "(x+1)^2: brute count");

  // (x+y-3)^2 on [0,4): four zeros
  ExpPolynomial p3;
  p3.names = {"x", "y"};
  p3.ms = {mono(1, {{1, 2}, {1, 0}}), mono(1, {{1, 0}, {1, 2}}), mono(2, {{1, 1}, {1, 1}}),
           mono(-6, {{1, 1}, {1, 0}}), mono(-6, {{1, 0}, {1, 1}}), mono(9, {})};
  for (auto& m : p3.ms) m.f.resize(2);
  p3.canonicalize();
  CountingInstance i3{p3, Int(4), choose_w(p3, Int(4))};
  ex.eq(count_solutions(i3, opts), Int(4), "(x+y-3)^2: count");
  ex.eq(Int(brute_count(p3, Int(4), opts)), Int(4), "(x+y-3)^2: brute count");

  // the constant 5 on the empty box [0,1)^0: no zeros, M = delta(5,3) = 28
  ExpPolynomial p4;
  p4.ms = {mono(5, {})};
  CountingInstance i4{p4, Int(1), Int(3)};
  ex.eq(build_M(i4, opts), Int(28), "constant 5: packed number");
  ex.eq(count_solutions(i4, opts), Int(0), "constant 5: count");

  // negative constant column: f = 3*4^x - 2*2^x + x - 1 on [0,4): f(0) = 0 only
  ExpPolynomial p5;
  p5.names = {"x"};
  p5.ms = {mono(3, {{4, 0}}), mono(-2, {{2, 0}}), mono(1, {{1, 1}}), mono(-1, {{1, 0}})};
  p5.canonicalize();
  ex.eq(choose_w(p5, Int(4)), Int(8), "mixed-sign instance: width");
  CountingInstance i5{p5, Int(4), Int(8)};
  ex.eq(count_solutions(i5, opts), Int(1), "mixed-sign instance: count");
  ex.eq(build_M(i5, opts), direct_sum_M(i5, opts), "mixed-sign: packed vs direct");
}

void chk_randomized_instances(Ex& ex, const EvalOptions& opts) {
  std::mt19937_64 rng(20260816);
  auto pick = [&rng](std::uint64_t k) { return rng() % k; };
  std::size_t accepted = 0, attempts = 0;
  while (accepted < 100 && attempts < 4000) {
    ++attempts;
    const unsigned k = 1 + unsigned(pick(3));
    const Int t = Int(long(2 + pick(4)));  // box size 2..5
    ExpPolynomial f;
    for (unsigned i = 0; i < k; ++i) f.names.push_back(std::string(1, char('x' + i)));
    const unsigned mc = 1 + unsigned(pick(3));
    for (unsigned mi = 0; mi < mc; ++mi) {
      long c = long(pick(9)) - 4;  // coefficients in [-4,4]
      if (c == 0) c = 1;
      ExpMonomial m;
      m.c = c;
      for (unsigned i = 0; i < k; ++i)
        m.f.push_back(ExpFactor{Int(long(1 + pick(3))), unsigned(pick(3))});
      f.ms.push_back(std::move(m));
    }
    f.canonicalize();
    if (f.ms.empty()) continue;

    // independent zero count; also rejects instances that go negative anywhere
    Int tk = 1;
    for (unsigned i = 0; i < k; ++i) tk *= t;
    bool nonneg = true;
    std::uint64_t zeros = 0;
    for (Int idx = 0; idx < tk; ++idx) {
      Int rem = idx;
      Witness at;
      for (unsigned i = 0; i < k; ++i) {
        at[f.names[i]] = fdiv_r(rem, t);
        rem = fdiv_q(rem, t);
      }
      Int val = eval_poly(f, at, opts);
      if (val < 0) {
        nonneg = false;
        break;
      }
      if (val == 0) ++zeros;
    }
    if (!nonneg) continue;
    ++accepted;

    CountingInstance inst{f, t, choose_w(f, t)};
    ex.eq(count_solutions(inst, opts), Int(zeros),
          "instance " + std::to_string(accepted) + ": closed-form count");
    ex.eq(Int(brute_count(f, t, opts)), Int(zeros),
          "instance " + std::to_string(accepted) + ": brute count");
    if (accepted <= 25)
      ex.eq(build_M(inst, opts), direct_sum_M(inst, opts),
            "instance " + std::to_string(accepted) + ": packed number vs direct sum");
  }
  ex.eq(accepted, std::size_t(100), "accepted instance count");
}

void chk_binom_formula(Ex& ex, const EvalOptions& opts) {
  auto reference = [](unsigned long a, unsigned long b) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), a, b);
    return r;
  };
  for (unsigned long a = 1; a <= 128; ++a)
    for (unsigned long b = 0; b <= a; ++b) {
      Int got = binom_via_formula(Int(a), Int(b), opts);
      if (got != reference(a, b)) {
        ex.fail("C(" + std::to_string(a) + "," + std::to_string(b) + ") = " + got.get_str() +
                " via the formula, want " + reference(a, b).get_str());
        if (a > 4) return;
      }
    }
  for (unsigned long a : {200ul, 256ul})
    for (unsigned long b : {1ul, 100ul, a - 1})
      ex.eq(binom_via_formula(Int(a), Int(b), opts), reference(a, b),
            "C(" + std::to_string(a) + "," + std::to_string(b) + ")");
  ex.eq(binom_via_formula(Int(10), Int(11), opts), Int(0), "C(10,11)");
}

void chk_gcd_formula_sweep(Ex& ex, const EvalOptions& opts) {
  const EvalOptions heavy = raise_bits(opts, std::uint64_t(1) << 26);
  // the formula is literally symmetric under swapping (a,b), so a <= b covers
  // the whole square [1,60]^2
  std::vector<std::pair<unsigned, unsigned>> pairs;
  for (unsigned b = 1; b <= 60; ++b)
    for (unsigned a = 1; a <= b; ++a) pairs.emplace_back(a, b);
  std::sort(pairs.begin(), pairs.end(), [](const auto& p, const auto& q) {
    return std::uint64_t(p.first) * p.first * p.second * p.second >
           std::uint64_t(q.first) * q.first * q.second * q.second;
  });
  unsigned nt = std::thread::hardware_concurrency();
  if (nt == 0) nt = 1;
  nt = std::min(nt, 8u);
  std::vector<std::vector<std::pair<unsigned, unsigned>>> buckets(nt);
  for (std::size_t i = 0; i < pairs.size(); ++i) buckets[i % nt].push_back(pairs[i]);
  std::vector<std::future<std::string>> futs;
  for (auto& bucket : buckets)
    futs.push_back(std::async(std::launch::async, [&heavy, bucket]() -> std::string {
      for (auto [a, b] : bucket) {
        Int got = gcd_via_formula(Int(long(a)), Int(long(b)), heavy);
        unsigned long want = std::gcd(a, b);
        if (got != want)
          return "gcd(" + std::to_string(a) + "," + std::to_string(b) + ") = " +
                 got.get_str() + " via the formula, want " + std::to_string(want);
      }
      return {};
    }));
  for (auto& f : futs) {
    std::string m = f.get();
    if (!m.empty()) ex.fail(m);
  }
  // a > b spot values witness the symmetry directly
  ex.eq(gcd_via_formula(Int(24), Int(9), heavy), Int(3), "gcd(24,9)");
  ex.eq(gcd_via_formula(Int(9), Int(24), heavy), Int(3), "gcd(9,24)");
  ex.eq(gcd_via_formula(Int(1), Int(1), heavy), Int(1), "gcd(1,1)");
}

void chk_nu2_formula(Ex& ex, const EvalOptions& opts) {
  for (long x = 1; x <= 4096; ++x) {
    unsigned long got = nu2_via_formula(Int(x), opts);
    unsigned long want = nu2(Int(x));
    if (got != want) {
      ex.fail("nu2(" + std::to_string(x) + ") = " + std::to_string(got) + ", want " +
              std::to_string(want));
      if (x > 64) return;
    }
  }
  try {
    nu2_via_formula(Int(0), opts);
    ex.fail("nu2(0) must throw");
  } catch (const Nu2Zero&) {
  }
}

void chk_nu2_of_central_binomials(Ex& ex, const EvalOptions& opts) {
  // full formula chain at feasible scale: the 2-adic valuation of C(2n,n),
  // with C itself produced by its formula, equals popcount(n) (Kummer)
  const EvalOptions heavy = raise_bits(opts, std::uint64_t(1) << 26);
  for (long n = 1; n <= 12; ++n) {
    Int c = binom_via_formula(Int(2 * n), Int(n), heavy);
    ex.eq(nu2_via_formula(c, heavy), popcount(Int(n)),
          "nu2(C(" + std::to_string(2 * n) + "," + std::to_string(n) + "))");
  }
}

void chk_hw_term(Ex& ex, const EvalOptions& opts) {
  for (long n = 1; n <= 4096; ++n) {
    unsigned long got = hw_via_term(Int(n), opts);
    unsigned long want = popcount(Int(n));
    if (got != want) {
      ex.fail("hw(" + std::to_string(n) + ") = " + std::to_string(got) + ", want " +
              std::to_string(want));
      if (n > 64) return;
    }
  }
}

void chk_marchenkov_pow(Ex& ex, const EvalOptions& opts) {
  for (long a = 0; a <= 20; ++a)
    for (long b = 0; b <= 12; ++b) {
      Int want = (b == 0) ? Int(1) : pow_ui(Int(a), (unsigned long)b);
      ex.eq(marchenkov_pow(Int(a), Int(b), opts), want,
            std::to_string(a) + "^" + std::to_string(b));
    }
  const EvalOptions heavy = raise_bits(opts, std::uint64_t(1) << 26);
  ex.eq(marchenkov_pow(Int(65536), Int(3), heavy), pow2_ui(48), "65536^3");
  ex.eq(marchenkov_pow(Int(12345), Int(5), heavy), pow_ui(Int(12345), 5), "12345^5");
}

// ---- counters: shared helpers ------------------------------------------------

const std::vector<std::string> kMersenneUnknowns = {
    "K", "a", "b", "c", "d", "e", "f", "g", "h", "i",
    "j", "k", "l", "m", "p", "v", "x", "y", "z"};
const std::vector<std::string> kFermatUnknowns = {"a", "b", "c", "d", "e", "g", "v"};
const std::vector<std::string> kTwinPowUnknowns = {
    "a",  "b",  "ba", "bb", "bc", "bj", "bl", "c2", "c3", "e2", "e4", "e5",
    "e6", "f",  "k",  "q2", "q3", "q4", "q5", "r",  "r3", "r6", "ro", "s1",
    "s2", "s3", "s4", "s6", "s7", "t2", "u",  "v",  "w",  "x"};

std::vector<std::string> twin_minimal_unknowns() {
  std::vector<std::string> u = kTwinPowUnknowns;
  for (const char* e : {"dm", "e3", "pm", "qm", "sm"}) u.push_back(e);
  std::sort(u.begin(), u.end());
  return u;
}

// samples `points` random lattice points of [0,t)^names and checks
// 0 <= poly < 2^{alpha t + beta}
void surrogate_bound(Ex& ex, const ExpPolynomial& poly, unsigned long alpha,
                     unsigned long beta, const EvalOptions& opts, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (unsigned long t = 2; t <= 8; ++t) {
    const Int bound = pow2_ui(alpha * t + beta);
    for (int i = 0; i < 100; ++i) {
      Witness at;
      for (const auto& nm : poly.names) at[nm] = Int((unsigned long)(rng() % t));
      Int val = eval_poly(poly, at, opts);
      if (val < 0 || val >= bound) {
        ex.fail("t=" + std::to_string(t) + " sample " + std::to_string(i) +
                ": value has " + std::to_string(bit_length(val)) +
                " bits, outside [0, 2^" + std::to_string(alpha * t + beta) + ")");
        return;
      }
    }
  }
}

// ---- counters: Mersenne ---------------------------------------------------------

void chk_mersenne_shape(Ex& ex, const EvalOptions&) {
  CountingSpec spec = build_mersenne_system();
  ex.eq(join_names(spec.system.unknowns), join_names(kMersenneUnknowns), "unknowns");
  ex.eq(spec.system.param.value_or("-"), std::string("n"), "parameter");
  ex.eq(spec.system.squares.size(), std::size_t(16), "square count");
  ex.eq(spec.offset, 1L, "count offset");
  ex.eq(spec.chain.size(), std::size_t(18), "derivation chain length");
  ChainReport cr = chain_determinism_check(spec);
  ex.that(cr.deterministic, "chain determinism: " + cr.detail);
  ExpPolynomial poly = expand_squares(spec.system);
  ex.eq(poly.ms.size(), std::size_t(48), "expansion monomial count");
  EvalOptions o;
  ex.eq(spec.t_func(Int(0), o), Int(121), "t(0)");
  ex.eq(spec.t_func(Int(1), o), Int(214358881), "t(1)");
  ex.eq(spec.w_func(Int(1), o), Int("7716919722"), "w(1) = 36 t(1) + 6");
  ex.eq(spec.t_digits10(Int(0)), Int(3), "digits of t(0)");
  ex.eq(spec.w_digits10(Int(0)), Int(4), "digits of w(0)");
  ex.eq(spec.t_digits10(Int(1)), Int(9), "digits of t(1)");
  ex.eq(spec.w_digits10(Int(1)), Int(10), "digits of w(1)");
  ex.eq(spec.t_digits10(Int(5)), Int(2133), "digits of t(5)");
}

void chk_mersenne_witnesses(Ex& ex, const EvalOptions& opts) {
  CountingSpec spec = build_mersenne_system();
  ExpPolynomial poly = expand_squares(spec.system);
  const EvalOptions heavy = raise_bits(opts, std::uint64_t(1) << 30);
  // The square-wise pass needs ~1.7e7-bit values at k = 11 (g = 11^{2a+f}),
  // a shade over the default evaluation budget.
  const EvalOptions sq_opts = raise_bits(opts, std::uint64_t(1) << 26);
  for (unsigned k : {1u, 3u, 5u, 11u}) {
    auto pw = mersenne_witness(k, Int(long(k)), opts);
    if (!pw) {
      ex.fail("k=" + std::to_string(k) + ": no witness though 2^" + std::to_string(k + 2) +
              "-1 is prime");
      continue;
    }
    ex.that(pw->complete(), "k=" + std::to_string(k) + ": fully materialized");
    SquareCheckReport rep = satisfied_by(spec.system, *pw, Int(long(k)), sq_opts);
    ex.that(rep.clean() && rep.verified == 16 && rep.skipped == 0,
            "k=" + std::to_string(k) + ": squares verified/skipped/failed = " +
                std::to_string(rep.verified) + "/" + std::to_string(rep.skipped) + "/" +
                std::to_string(rep.failed.size()));
    // All 16 squares individually zero makes the whole sum zero.  A literal
    // evaluation of the expanded polynomial is possible only at k = 1: already
    // at k = 3 one monomial is 2-adically ~2*11^64 bits wide.
    if (k == 1) {
      Int val = eval_poly(bind_name(poly, "n", Int(long(k)), heavy), pw->values, heavy);
      ex.eq(val, Int(0), "k=" + std::to_string(k) + ": sum of squares at the witness");
    }
  }
  auto w1 = mersenne_witness(1, Int(1), opts);
  if (w1) {
    const Witness& V = w1->values;
    auto at = [&V](const char* n) { return V.at(n); };
    ex.eq(at("a"), Int(2), "k=1: a");
    ex.eq(at("f"), Int(4), "k=1: f");
    ex.eq(at("g"), Int(214358881), "k=1: g");
    ex.eq(at("h"), Int(1771561), "k=1: h");
    ex.eq(at("i"), Int(121), "k=1: i");
    ex.eq(at("j"), Int(14641), "k=1: j");
    ex.eq(at("b"), Int(14890), "k=1: b");
    ex.eq(at("c"), Int(3139), "k=1: c");
    ex.eq(at("d"), Int(11018), "k=1: d");
    ex.eq(at("e"), Int(123), "k=1: e");
    ex.eq(at("x"), Int(7), "k=1: x");
    ex.eq(at("y"), Int(113), "k=1: y");
    ex.eq(at("K"), Int(218004490), "k=1: K");
    ex.eq(at("l"), Int(1801690), "k=1: l");
    ex.eq(at("m"), Int(14883), "k=1: m");
    ex.eq(at("z"), Int(1), "k=1: z");
    ex.eq(at("p"), Int(8), "k=1: p");
    ex.eq(at("v"), Int(0), "k=1: v");
  }
  for (unsigned k : {0u, 2u, 4u, 6u, 7u, 8u, 9u, 10u})
    ex.that(!mersenne_witness(k, Int(long(k)), opts),
            "k=" + std::to_string(k) + ": must yield no witness (2^" +
                std::to_string(k + 2) + "-1 is not usable)");
}

void chk_mersenne_coords_below_box(Ex& ex, const EvalOptions& opts) {
  CountingSpec spec = build_mersenne_system();
  const EvalOptions heavy = raise_bits(opts, std::uint64_t(1) << 30);
  for (unsigned k : {1u, 3u, 5u, 11u}) {
    auto pw = mersenne_witness(k, Int(long(k)), opts);
    if (!pw) {
      ex.fail("k=" + std::to_string(k) + ": witness missing");
      continue;
    }
    Int t = spec.t_func(Int(long(k)), heavy);
    std::vector<std::string> viol = coords_not_below(*pw, t);
    viol.erase(std::remove(viol.begin(), viol.end(), "n"), viol.end());
    if (!viol.empty()) {
      std::string detail = "k=" + std::to_string(k) + ": coordinates {" + join_names(viol) +
                           "} are not below the box bound t(" + std::to_string(k) + ")";
      if (k == 1)
        detail += " (g = 11^8 = t(1) exactly, and K = 218004490 > t(1) = 214358881)";
      ex.fail(detail);
    }
  }
}

void chk_mersenne_surrogate_bound(Ex& ex, const EvalOptions& opts) {
  // 0 <= R < 2^{36t+6} on random points of [0,t)^20 for t = 2..8
  ExpPolynomial poly = expand_squares(build_mersenne_system().system);
  surrogate_bound(ex, poly, 36, 6, opts, 90071);
}

// ---- counters: Fermat ------------------------------------------------------------

void chk_fermat_shape(Ex& ex, const EvalOptions&) {
  CountingSpec spec = build_fermat_system();
  ex.eq(join_names(spec.system.unknowns), join_names(kFermatUnknowns), "unknowns");
  ex.eq(spec.system.param.value_or("-"), std::string("n"), "parameter");
  ex.eq(spec.system.squares.size(), std::size_t(6), "square count");
  ex.eq(spec.offset, 0L, "count offset");
  ex.eq(spec.chain.size(), std::size_t(6), "derivation chain length");
  ChainReport cr = chain_determinism_check(spec);
  ex.that(cr.deterministic, "chain determinism: " + cr.detail);
  ExpPolynomial poly = expand_squares(spec.system);
  ex.eq(poly.ms.size(), std::size_t(17), "expansion monomial count");
  EvalOptions o;
  ex.eq(spec.t_func(Int(0), o), Int(1728), "t(0)");
  ex.eq(spec.w_func(Int(0), o), Int(38043), "w(0) = 22 t(0) + 27");
  ex.eq(spec.t_digits10(Int(0)), Int(4), "digits of t(0)");
  ex.eq(spec.w_digits10(Int(0)), Int(5), "digits of w(0)");
  ex.eq(spec.t_digits10(Int(42)), Int(140), "digits of t(42)");
}

void chk_fermat_monomial_enumeration(Ex& ex, const EvalOptions&) {
  // The displayed census of the 17 monomials: two products carrying a square
  // factor pair, three with one square factor, two with three linear factors,
  // and ten with geometric factors only.
  MProfile mp = m_profile(expand_squares(build_fermat_system().system));
  ex.eq(mp.products[{2u, 2u}], std::size_t(2), "products with two square factors");
  ex.eq(mp.products[{2u}], std::size_t(3), "products with one square factor");
  ex.eq(mp.products[{1u, 1u, 1u}], std::size_t(2), "products with three linear factors");
  std::size_t plain = mp.products[{}] + mp.constants;
  if (plain != 10)
    ex.fail("products with geometric factors only: got " + std::to_string(plain) +
            ", the displayed breakdown says 10 (the expansion has 9, and one further "
            "monomial with a single linear factor that the breakdown omits)");
  if (mp.products[{1u}] != 0)
    ex.fail("found " + std::to_string(mp.products[{1u}]) +
            " product(s) with exactly one linear factor, a shape absent from the "
            "displayed breakdown");
}

void chk_fermat_jones_sweep(Ex& ex, const EvalOptions&) {
  std::set<std::uint64_t> hits;
  for (std::uint64_t g = 0; g <= 11000; ++g)
    if (jones_test(g)) hits.insert(g);
  const std::set<std::uint64_t> want = {0, 2, 42, 10922};
  if (hits != want) {
    std::string got;
    for (auto g : hits) got += (got.empty() ? "" : ",") + std::to_string(g);
    ex.fail("sweep found {" + got + "}, want {0,2,42,10922}");
  }
}

void chk_fermat_witnesses(Ex& ex, const EvalOptions& opts) {
  CountingSpec spec = build_fermat_system();
  ExpPolynomial poly = expand_squares(spec.system);
  const EvalOptions heavy = raise_bits(opts, std::uint64_t(1) << 30);
  for (std::uint64_t g : {0ull, 2ull, 42ull, 10922ull}) {
    auto pw = fermat_witness(g, Int((long)g), opts);
    if (!pw) {
      ex.fail("g=" + std::to_string(g) + ": no witness though 6g+5 is a Fermat prime");
      continue;
    }
    ex.that(pw->complete(), "g=" + std::to_string(g) + ": fully materialized");
    SquareCheckReport rep = satisfied_by(spec.system, *pw, Int((long)g), opts);
    ex.that(rep.clean() && rep.verified == 6 && rep.skipped == 0,
            "g=" + std::to_string(g) + ": squares verified/skipped/failed = " +
                std::to_string(rep.verified) + "/" + std::to_string(rep.skipped) + "/" +
                std::to_string(rep.failed.size()));
    // All 6 squares individually zero makes the whole sum zero.  Literal
    // evaluation stays feasible through g = 2 (one monomial is 2-adically
    // 8d ~ 8.6e8 bits wide there); at g = 42 it would need ~2^460 bits.
    if (g <= 2) {
      Int val = eval_poly(bind_name(poly, "n", Int((long)g), heavy), pw->values, heavy);
      ex.eq(val, Int(0), "g=" + std::to_string(g) + ": sum of squares at the witness");
    }
  }
  auto w0 = fermat_witness(0, Int(0), opts);
  if (w0) {
    ex.eq(w0->values.at("c"), Int(144), "g=0: c");
    ex.eq(w0->values.at("a"), Int(72), "g=0: a");
    ex.eq(w0->values.at("b"), Int(29), "g=0: b");
    ex.eq(w0->values.at("d"), Int(0), "g=0: d");
    ex.eq(w0->values.at("e"), Int(0), "g=0: e");
    ex.eq(w0->values.at("v"), Int(0), "g=0: v");
  }
  for (std::uint64_t g : {1ull, 3ull, 4ull, 5ull, 10ull, 100ull, 1000ull, 5000ull})
    ex.that(!fermat_witness(g, Int((long)g), opts),
            "g=" + std::to_string(g) + ": must yield no witness");
}

void chk_fermat_surrogate_bound(Ex& ex, const EvalOptions& opts) {
  // 0 <= S < 2^{22t+27} on random points of [0,t)^8 for t = 2..8
  ExpPolynomial poly = expand_squares(build_fermat_system().system);
  surrogate_bound(ex, poly, 22, 27, opts, 90072);
}

// ---- counters: primality criteria and oracles ------------------------------------

void chk_primality_criteria(Ex& ex, const EvalOptions& opts) {
  auto flags = prime_flags(20005);
  for (std::uint64_t k = 0; k <= 10000; ++k) {
    bool want = flags[k + 2] && flags[k + 4];
    if (clement_test(k) != want) {
      ex.fail("Clement at k=" + std::to_string(k) + ": got " +
              (want ? "false" : "true") + ", sieve says " + (want ? "true" : "false"));
      if (k > 50) break;
    }
  }
  for (std::uint64_t p = 0; p <= 10000; ++p) {
    bool want = p >= 2 && flags[p] && flags[2 * p + 1];
    if (sg_test(p) != want) {
      ex.fail("Sophie Germain test at p=" + std::to_string(p) + " disagrees with the sieve");
      if (p > 50) break;
    }
  }
  ex.eq(sg_test(0), false, "sg(0)");
  ex.eq(sg_test(1), false, "sg(1)");
  // Lucas-Lehmer against an independent deterministic test below 2^64, and
  // against the classical exponent list beyond it
  for (std::uint64_t p = 0; p <= 63; ++p) {
    bool want = p >= 2 && is_prime(pow2_ui((unsigned long)p) - 1);
    ex.eq(lucas_lehmer_test(p), want, "Lucas-Lehmer at p=" + std::to_string(p));
  }
  const std::set<std::uint64_t> exps = {89, 107, 127, 521, 607, 1279};
  for (std::uint64_t p = 64; p <= 1300; ++p) {
    bool want = exps.count(p) == 1;
    if (lucas_lehmer_test(p) != want) {
      ex.fail("Lucas-Lehmer at p=" + std::to_string(p) + ": got " + (want ? "false" : "true"));
      break;
    }
  }
  // Pepin with base 12
  for (unsigned long m = 2; m <= 16; ++m) {
    bool want = (m == 2 || m == 4 || m == 8 || m == 16);
    ex.eq(pepin_test(m, opts), want, "Pepin at m=" + std::to_string(m));
  }
  ex.eq(pepin_test(32, opts), false, "Pepin at m=32 (2^32+1 = 641*6700417)");
  try {
    pepin_test(1, opts);
    ex.fail("Pepin at m=1 must throw");
  } catch (const DomainError&) {
  }
  for (std::uint64_t g : {0ull, 2ull, 42ull, 10922ull})
    ex.eq(jones_test(g), true, "Jones at g=" + std::to_string(g));
  for (std::uint64_t g : {1ull, 3ull, 7ull, 100ull, 5000ull})
    ex.eq(jones_test(g), false, "Jones at g=" + std::to_string(g));
}

void chk_count_oracles(Ex& ex, const EvalOptions&) {
  ex.eq(mersenne_count_oracle(0), Int(1), "Mersenne count at 0");
  ex.eq(mersenne_count_oracle(11), Int(5), "Mersenne count at 11");
  ex.eq(mersenne_count_oracle(12), Int(5), "Mersenne count at 12");
  ex.eq(mersenne_count_oracle(60), Int(9), "Mersenne count at 60");
  ex.eq(fermat_count_oracle(0), Int(1), "Fermat count at 0");
  ex.eq(fermat_count_oracle(2), Int(2), "Fermat count at 2");
  ex.eq(fermat_count_oracle(41), Int(2), "Fermat count at 41");
  ex.eq(fermat_count_oracle(42), Int(3), "Fermat count at 42");
  ex.eq(fermat_count_oracle(10922), Int(4), "Fermat count at 10922");
  ex.eq(fermat_count_oracle(20000), Int(4), "Fermat count at 20000");
  ex.eq(twin_count_oracle(2), Int(0), "twin count at 2");
  ex.eq(twin_count_oracle(3), Int(1), "twin count at 3");
  ex.eq(twin_count_oracle(30), Int(5), "twin count at 30");
  ex.eq(twin_count_oracle(100), Int(8), "twin count at 100");
  ex.eq(twin_count_oracle(107), Int(10), "twin count at 107");
  ex.eq(sg_count_oracle(1), Int(0), "Sophie Germain count at 1");
  ex.eq(sg_count_oracle(2), Int(1), "Sophie Germain count at 2");
  ex.eq(sg_count_oracle(30), Int(6), "Sophie Germain count at 30");
  ex.eq(sg_count_oracle(89), Int(10), "Sophie Germain count at 89");
  ex.eq(sg_count_oracle(100), Int(10), "Sophie Germain count at 100");
  // larger values cross-checked against an independent sieve walk
  auto flags = prime_flags(2003);
  std::uint64_t tw = 0, sg = 0;
  for (std::uint64_t p = 2; p <= 1000; ++p) {
    if (flags[p] && flags[p + 2]) ++tw;
    if (flags[p] && flags[2 * p + 1]) ++sg;
  }
  ex.eq(twin_count_oracle(1000), Int((long)tw), "twin count at 1000");
  ex.eq(sg_count_oracle(1000), Int((long)sg), "Sophie Germain count at 1000");
}

// ---- counters: twin system ---------------------------------------------------------

void chk_twin_shape(Ex& ex, const EvalOptions& opts) {
  for (FactorialScheme scheme : {FactorialScheme::MINIMAL, FactorialScheme::POW8SQ}) {
    const bool minimal = scheme == FactorialScheme::MINIMAL;
    const char* tag = minimal ? "minimal" : "pow8sq";
    CountingSpec spec = build_twin_system(scheme);
    ex.eq(join_names(spec.system.unknowns),
          join_names(minimal ? twin_minimal_unknowns() : kTwinPowUnknowns),
          std::string(tag) + ": unknowns");
    ex.eq(spec.system.squares.size(), std::size_t(minimal ? 31 : 27),
          std::string(tag) + ": square count");
    ex.eq(spec.chain.size(), std::size_t(minimal ? 38 : 33),
          std::string(tag) + ": chain length");
    ex.eq(spec.offset, 0L, std::string(tag) + ": count offset");
    ChainReport cr = chain_determinism_check(spec);
    ex.that(cr.deterministic, std::string(tag) + ": chain determinism: " + cr.detail);
    // "simple": every base constant >= 1 and every square side nonnegative
    for (const auto& sq : spec.system.squares)
      for (const auto* side : {&sq.l, &sq.r})
        for (const auto& m : *side) {
          ex.that(m.c >= 0, std::string(tag) + ": side coefficients are nonnegative");
          for (const auto& f : m.f)
            ex.that(f.v >= 1, std::string(tag) + ": exponential bases are >= 1");
        }
    ExpPolynomial poly = expand_squares(spec.system);
    for (const auto& m : poly.ms)
      for (const auto& f : m.f)
        ex.that(f.v >= 1, std::string(tag) + ": expanded bases are >= 1");
    // everywhere >= 0 (it is a sum of squares); sampled
    std::mt19937_64 rng(77100);
    for (int i = 0; i < 50; ++i) {
      Witness at;
      for (const auto& nm : poly.names) at[nm] = Int((unsigned long)(rng() % 3));
      ex.that(eval_poly(poly, at, opts) >= 0, std::string(tag) + ": nonnegative at sample");
    }
    ex.eq(spec.t_func(Int(0), opts), Int(65536), std::string(tag) + ": t(0)");
    try {
      spec.t_func(Int(5), opts);
      ex.fail(std::string(tag) + ": t(5) must exceed any budget");
    } catch (const BudgetExceeded&) {
    }
  }
  // minimal-scheme t(2) is the largest materializable box bound
  CountingSpec spec = build_twin_system(FactorialScheme::MINIMAL);
  ex.eq(Int((long)bit_length(spec.t_func(Int(2), opts))), Int(4194305), "minimal: t(2) bits");
}

void chk_twin_k1_full_witness(Ex& ex, const EvalOptions& opts) {
  CountingSpec spec = build_twin_system(FactorialScheme::MINIMAL);
  auto pw = twin_witness(1, Int(3), FactorialScheme::MINIMAL, opts);
  if (!pw) {
    ex.fail("k=1: no witness though (3,5) is a twin pair");
    return;
  }
  ex.that(pw->complete(), "k=1: fully materialized (absent: " + join_names(pw->absent) + ")");
  SquareCheckReport rep = satisfied_by(spec.system, *pw, Int(3), opts);
  ex.that(rep.clean() && rep.verified == 31 && rep.skipped == 0,
          "k=1: squares verified/skipped/failed = " + std::to_string(rep.verified) + "/" +
              std::to_string(rep.skipped) + "/" + std::to_string(rep.failed.size()));
  const Witness& V = pw->values;
  ex.eq(V.at("k"), Int(1), "k=1: k");
  ex.eq(V.at("b"), Int(1), "k=1: b");
  ex.eq(V.at("a"), Int(0), "k=1: a");
  ex.eq(V.at("f"), Int(2), "k=1: f");
  ex.eq(V.at("r"), Int(81), "k=1: r");
  ex.eq(V.at("c2"), Int(19926), "k=1: c2");
  ex.eq(V.at("c3"), Int(1633932), "k=1: c3");
  ex.eq(V.at("bb"), Int(3240), "k=1: bb = C(81,2)");
  ex.eq(V.at("v"), Int(6561), "k=1: v = 81^2");
  ex.eq(V.at("s7"), Int(3158), "k=1: s7");
  ex.eq(V.at("e5"), Int(244), "k=1: e5");
  ex.eq(V.at("e6"), Int(488), "k=1: e6");
  ex.eq(Int((long)bit_length(V.at("ba"))), Int(1633933), "k=1: bits of ba");
  const EvalOptions heavy = raise_bits(opts, std::uint64_t(1) << 30);
  ExpPolynomial poly = expand_squares(spec.system);
  Int val = eval_poly(bind_name(poly, "n", Int(3), heavy), pw->values, heavy);
  ex.eq(val, Int(0), "k=1: sum of squares at the witness");
}

void chk_twin_existence(Ex& ex, const EvalOptions& opts) {
  CountingSpec spec = build_twin_system(FactorialScheme::MINIMAL);
  auto flags = prime_flags(32);
  for (unsigned k = 0; k <= 10; ++k) {
    bool want = flags[k + 2] && flags[k + 4];
    ex.eq(clement_test(k), want, "Clement at k=" + std::to_string(k));
    auto pw = twin_witness(k, Int(long(k) + 2), FactorialScheme::MINIMAL, opts);
    ex.eq(bool(pw), want, "witness existence at k=" + std::to_string(k));
    if (pw) {
      SquareCheckReport rep = satisfied_by(spec.system, *pw, Int(long(k) + 2), opts);
      ex.that(rep.clean(), "k=" + std::to_string(k) + ": " +
                               std::to_string(rep.failed.size()) + " square(s) failed");
      ex.eq(rep.verified + rep.skipped, std::size_t(31),
            "k=" + std::to_string(k) + ": squares accounted for");
    }
  }
}

// ---- counters: supporting analyses --------------------------------------------------

void chk_expansion_profiles(Ex& ex, const EvalOptions&) {
  MProfile mr = m_profile(expand_squares(build_mersenne_system().system));
  ex.eq(mr.nonconstant, std::size_t(48), "19-unknown system: nonconstant monomials");
  ex.eq(mr.constants, std::size_t(0), "19-unknown system: constant monomials");
  ex.eq(mr.products[{2u}], std::size_t(14), "19-unknown system: one square factor");
  ex.eq(mr.products[{1u}], std::size_t(6), "19-unknown system: one linear factor");
  ex.eq(mr.products[{1u, 1u}], std::size_t(4), "19-unknown system: two linear factors");
  ex.eq(mr.products[{}], std::size_t(24), "19-unknown system: geometric factors only");
  ex.eq(mr.products.size(), std::size_t(4), "19-unknown system: distinct shapes");

  MProfile mf = m_profile(expand_squares(build_fermat_system().system));
  ex.eq(mf.nonconstant, std::size_t(17), "7-unknown system: nonconstant monomials");
  ex.eq(mf.constants, std::size_t(0), "7-unknown system: constant monomials");
  ex.eq(mf.products[{2u, 2u}], std::size_t(2), "7-unknown system: two square factors");
  ex.eq(mf.products[{2u}], std::size_t(3), "7-unknown system: one square factor");
  ex.eq(mf.products[{1u, 1u, 1u}], std::size_t(2), "7-unknown system: three linear factors");
  ex.eq(mf.products[{1u}], std::size_t(1), "7-unknown system: one linear factor");
  ex.eq(mf.products[{}], std::size_t(9), "7-unknown system: geometric factors only");

  ExpPolynomial tw = expand_squares(build_twin_system(FactorialScheme::MINIMAL).system);
  MProfile mt = m_profile(tw);
  ex.eq(mt.nonconstant + mt.constants, tw.ms.size(), "twin system: census is total");
  ex.that(!m_profile_to_string(mt).empty(), "twin system: printable census");
}

void chk_width_bounds(Ex& ex, const EvalOptions&) {
  EvalOptions o;
  // 19-unknown system: printed width 36t+6 dominates the derived alpha t + beta
  ExpPolynomial pm = expand_squares(build_mersenne_system().system);
  SymbolicW sm = choose_w_symbolic(pm);
  ex.eq(sm.alpha, 21ul, "19-unknown system: derived alpha");
  ex.eq(sm.beta, 7ul, "19-unknown system: derived beta");
  ex.that(sm.alpha <= 36 && sm.alpha + sm.beta <= 42,
          "19-unknown system: printed width 36t+6 is sound for every t >= 1");
  ex.that(choose_w(bind_name(pm, "n", Int(0), o), Int(121)) <= Int(4362),
          "19-unknown system: numeric width at t(0)");

  ExpPolynomial pf = expand_squares(build_fermat_system().system);
  SymbolicW sf = choose_w_symbolic(pf);
  ex.eq(sf.alpha, 22ul, "7-unknown system: derived alpha");
  ex.eq(sf.beta, 15ul, "7-unknown system: derived beta");
  ex.that(sf.alpha <= 22 && sf.alpha + sf.beta <= 49,
          "7-unknown system: printed width 22t+27 is sound for every t >= 1");
  ex.that(choose_w(bind_name(pf, "n", Int(0), o), Int(1728)) <= Int(38043),
          "7-unknown system: numeric width at t(0)");

  for (FactorialScheme scheme : {FactorialScheme::MINIMAL, FactorialScheme::POW8SQ}) {
    const char* tag = scheme == FactorialScheme::MINIMAL ? "minimal" : "pow8sq";
    CountingSpec spec = build_twin_system(scheme);
    ExpPolynomial pt = expand_squares(spec.system);
    SymbolicW st = choose_w_symbolic(pt);
    Int t0 = spec.t_func(Int(0), o);
    ex.eq(spec.w_func(Int(0), o), Int(st.alpha) * t0 + Int(st.beta),
          std::string(tag) + ": w(0) follows the symbolic width");
    ex.that(choose_w(bind_name(pt, "n", Int(0), o), t0) <= spec.w_func(Int(0), o),
            std::string(tag) + ": numeric width at t(0)");
  }
}

void chk_fermat_coords_below_box(Ex& ex, const EvalOptions& opts) {
  CountingSpec spec = build_fermat_system();
  for (std::uint64_t g : {0ull, 2ull, 42ull, 10922ull}) {
    auto pw = fermat_witness(g, Int((long)g), opts);
    if (!pw) {
      ex.fail("g=" + std::to_string(g) + ": witness missing");
      continue;
    }
    Int t = spec.t_func(Int((long)g), opts);
    std::vector<std::string> viol = coords_not_below(*pw, t);
    viol.erase(std::remove(viol.begin(), viol.end(), "n"), viol.end());
    ex.that(viol.empty(), "g=" + std::to_string(g) + ": coordinates {" + join_names(viol) +
                              "} reach the box bound");
  }
}

void chk_twin_partial_witnesses(Ex& ex, const EvalOptions& opts) {
  CountingSpec spec = build_twin_system(FactorialScheme::MINIMAL);
  // k=3: the power-device coordinates exceed the default budget and stay symbolic
  auto w3 = twin_witness(3, Int(5), FactorialScheme::MINIMAL, opts);
  if (!w3) {
    ex.fail("k=3: no witness though (5,7) is a twin pair");
  } else {
    std::vector<std::string> absent = w3->absent;
    std::sort(absent.begin(), absent.end());
    std::vector<std::string> want = {"ba", "bc", "q2", "q3", "q4", "r3",
                                     "ro", "s1", "s2", "s3", "w",  "x"};
    std::sort(want.begin(), want.end());
    ex.eq(join_names(absent), join_names(want), "k=3: unmaterialized coordinates");
    SquareCheckReport rep = satisfied_by(spec.system, *w3, Int(5), opts);
    ex.that(rep.clean(), "k=3: failed squares: " + std::to_string(rep.failed.size()));
    ex.eq(rep.verified + rep.skipped, std::size_t(31), "k=3: squares accounted for");
    ex.that(rep.verified >= 22, "k=3: verified " + std::to_string(rep.verified) +
                                    " squares, expected at least 22");
    ex.eq(w3->values.at("r"), Int(15625), "k=3: r = 5^6");
    ex.eq(w3->values.at("f"), Int(24), "k=3: f = 4!");
    ex.eq(w3->values.at("b"), Int(3), "k=3: b = (4*24+9)/35");
  }
  // k=9: the boundary case r = 11^12
  auto w9 = twin_witness(9, Int(11), FactorialScheme::MINIMAL, opts);
  if (!w9) {
    ex.fail("k=9: no witness though (11,13) is a twin pair");
  } else {
    ex.eq(w9->values.at("r"), pow_ui(Int(11), 12), "k=9: r = 11^12");
    ex.eq(w9->values.at("f"), Int(3628800), "k=9: f = 10!");
    ex.eq(w9->values.at("b"), Int(101505), "k=9: b");
    SquareCheckReport rep = satisfied_by(spec.system, *w9, Int(11), opts);
    ex.that(rep.clean(), "k=9: failed squares: " + std::to_string(rep.failed.size()));
    ex.eq(rep.verified + rep.skipped, std::size_t(31), "k=9: squares accounted for");
    ex.that(rep.verified >= 15, "k=9: verified " + std::to_string(rep.verified) +
                                    " squares, expected at least 15");
  }
  // the 8^{(k+1)^2} scheme at k=1: w = (2^4096+1)^4096 needs 16781314 bits,
  // just over the default budget; a raised budget materializes it
  auto p1 = twin_witness(1, Int(3), FactorialScheme::POW8SQ, opts);
  if (!p1) {
    ex.fail("pow8sq k=1: no witness");
  } else {
    ex.eq(p1->values.at("e2"), Int(4), "pow8sq k=1: e2");
    ex.eq(p1->values.at("r"), Int(4096), "pow8sq k=1: r = 8^4");
    ex.that(p1->values.count("u") == 1, "pow8sq k=1: u = 2^4096 materialized");
    auto has = [&p1](const char* nm) {
      return std::find(p1->absent.begin(), p1->absent.end(), nm) != p1->absent.end();
    };
    ex.that(has("w"), "pow8sq k=1: w stays symbolic at the default budget");
    ex.that(has("bc"), "pow8sq k=1: bc stays symbolic at the default budget");
    ex.that(has("ba"), "pow8sq k=1: ba stays symbolic at every budget");
  }
  const EvalOptions heavy = raise_bits(opts, std::uint64_t(1) << 30);
  auto p1h = twin_witness(1, Int(3), FactorialScheme::POW8SQ, heavy);
  if (p1h) {
    ex.that(p1h->values.count("w") == 1, "pow8sq k=1: w materializes at 2^30 bits");
    ex.that(p1h->values.count("bc") == 1, "pow8sq k=1: bc materializes at 2^30 bits");
    ex.that(std::find(p1h->absent.begin(), p1h->absent.end(), "ba") != p1h->absent.end(),
            "pow8sq k=1: ba needs 3r^3+6r^2+3r+1 bits, beyond 2^30");
    CountingSpec pspec = build_twin_system(FactorialScheme::POW8SQ);
    SquareCheckReport rep = satisfied_by(pspec.system, *p1h, Int(3), heavy);
    ex.that(rep.clean(), "pow8sq k=1: failed squares: " + std::to_string(rep.failed.size()));
    ex.eq(rep.verified + rep.skipped, std::size_t(27), "pow8sq k=1: squares accounted for");
  }
}

void chk_twin_coords_below_box(Ex& ex, const EvalOptions& opts) {
  // t(n) = 2^{2^E} cannot be materialized, but coordinate < t(n) is exactly
  // bit_length(coordinate) <= 2^E, and every unmaterialized coordinate is
  // bounded by 2^{c3+1}, so c3 + 1 <= 2^E covers them.
  struct Case {
    unsigned k;
    FactorialScheme scheme;
  };
  for (const Case c : {Case{1, FactorialScheme::MINIMAL}, Case{3, FactorialScheme::MINIMAL},
                       Case{9, FactorialScheme::MINIMAL}, Case{1, FactorialScheme::POW8SQ}}) {
    const long n = long(c.k) + 2;
    const bool minimal = c.scheme == FactorialScheme::MINIMAL;
    const std::string tag = std::string(minimal ? "minimal" : "pow8sq") +
                            " k=" + std::to_string(c.k);
    auto pw = twin_witness(c.k, Int(n), c.scheme, opts);
    if (!pw) {
      ex.fail(tag + ": witness missing");
      continue;
    }
    const long E = minimal ? 3 * n * n + 3 * n + 4 : 9 * n * n + 4;
    const Int lim = pow2_ui((unsigned long)E);
    for (const auto& [nm, val] : pw->values)
      if (Int((long)bit_length(val)) > lim)
        ex.fail(tag + ": coordinate " + nm + " reaches the box bound");
    ex.that(pw->values.at("c3") + 1 <= lim,
            tag + ": 2^{c3+1} (the largest symbolic coordinate bound) stays below t(n)");
  }
}

// ---- counters: symbolic reports ----------------------------------------------------

void chk_symbolic_reports(Ex& ex, const EvalOptions& opts) {
  // digit counts reported symbolically must match direct big-integer computation
  CountResult rm = count_via_term(Family::MERSENNE, Int(0), opts);
  ex.that(!rm.exact, "19-unknown system at n=0 is not exactly countable");
  ex.eq(rm.report.at("mode").get<std::string>(), std::string("symbolic"), "mode");
  ex.eq(rm.report.at("monomials").get<std::size_t>(), std::size_t(48), "monomials");
  Int t0 = pow_ui(Int(11), 2);  // 11^{2^{2*0+1}}
  Int w0 = 36 * t0 + 6;
  ex.eq(rm.report.at("t_digits10").get<std::string>(), std::to_string(digits10(t0)),
        "digits of t(0)");
  ex.eq(rm.report.at("w_digits10").get<std::string>(), std::to_string(digits10(w0)),
        "digits of w(0)");
  ex.eq(rm.report.at("oracle_count").get<std::string>(), std::string("1"), "oracle count");
  ex.eq(rm.report.at("count_expression").get<std::string>(),
        std::string("hw(M)/w - t^19 + 1"), "count expression");

  CountResult rf = count_via_term(Family::FERMAT, Int(0), opts);
  ex.that(!rf.exact, "7-unknown system at n=0 is not exactly countable");
  ex.eq(rf.report.at("monomials").get<std::size_t>(), std::size_t(17), "monomials");
  Int tf = pow_ui(Int(12), 3);  // 12^{3*0+3}
  Int wf = 22 * tf + 27;
  ex.eq(rf.report.at("t_digits10").get<std::string>(), std::to_string(digits10(tf)),
        "digits of t(0)");
  ex.eq(rf.report.at("w_digits10").get<std::string>(), std::to_string(digits10(wf)),
        "digits of w(0)");
  ex.eq(rf.report.at("oracle_count").get<std::string>(), std::string("1"), "oracle count");
  ex.eq(rf.report.at("count_expression").get<std::string>(), std::string("hw(M)/w - t^7"),
        "count expression");

  // the estimates keep matching direct computation away from n=0
  CountingSpec ms = build_mersenne_system();
  ex.eq(ms.t_digits10(Int(1)), Int((long)digits10(pow_ui(Int(11), 8))), "digits of t(1)");
  ex.eq(ms.w_digits10(Int(1)), Int((long)digits10(36 * pow_ui(Int(11), 8) + 6)),
        "digits of w(1)");
  CountingSpec fs = build_fermat_system();
  ex.eq(fs.t_digits10(Int(5)), Int((long)digits10(pow_ui(Int(12), 18))), "digits of t(5)");
  ex.eq(fs.w_digits10(Int(5)), Int((long)digits10(22 * pow_ui(Int(12), 18) + 27)),
        "digits of w(5)");
}

void chk_count_report_details(Ex& ex, const EvalOptions& opts) {
  CountResult rt = count_via_term(Family::TWIN, Int(4), opts, FactorialScheme::MINIMAL);
  ex.that(!rt.exact, "twin system at n=4 is not exactly countable");
  ex.eq(rt.report.at("family").get<std::string>(), std::string("twin"), "family");
  ex.eq(rt.report.at("unknowns").get<std::size_t>(), std::size_t(39), "unknowns");
  ex.eq(rt.report.at("oracle_count").get<std::string>(), std::string("1"),
        "oracle count at n=4");
  ex.eq(rt.report.at("count_expression").get<std::string>(), std::string("hw(M)/w - t^39"),
        "count expression");
  ex.that(!rt.report.at("t_digits10").is_null(), "t digit estimate present");

  CountResult rm = count_via_term(Family::MERSENNE, Int(0), opts);
  ex.eq(rm.report.at("family").get<std::string>(), std::string("mersenne"), "family");
  ex.eq(rm.report.at("offset").get<long>(), 1L, "offset in report");
  ExpPolynomial pm = expand_squares(build_mersenne_system().system);
  ex.eq(rm.report.at("m_profile").get<std::string>(), m_profile_to_string(m_profile(pm)),
        "census string");

  try {
    count_via_term(Family::SOPHIE, Int(5), opts);
    ex.fail("Sophie Germain counting must explain that no single system exists");
  } catch (const DomainError&) {
  }
}

// ---- table and runner ---------------------------------------------------------------

using CheckFn = void (*)(Ex&, const EvalOptions&);

struct CheckDef {
  const char* name;
  int criterion;
  CheckFn fn;
};

const CheckDef kChecks[] = {
    {"terms/roundtrip_random_asts", 0, chk_roundtrip_random_asts},
    {"terms/sugar_expansion_semantics", 0, chk_sugar_expansion_semantics},
    {"sequences/pell_fixture_values", 1, chk_pell_fixture_values},
    {"sequences/pell_term_matches_recurrence", 1, chk_pell_term_matches_recurrence},
    {"sequences/pell_doubling", 0, chk_pell_doubling},
    {"sequences/lehmer_closed_form", 2, chk_lehmer_closed_form},
    {"sequences/lehmer_fixture_values", 2, chk_lehmer_fixture_values},
    {"sequences/extraction_corpus", 0, chk_extraction_corpus},
    {"sequences/extraction_rejects", 0, chk_extraction_rejects},
    {"generators/mersenne_image", 3, chk_mersenne_image},
    {"generators/fermat_values", 3, chk_fermat_values},
    {"generators/twin_pairs_against_sieve", 3, chk_twin_pairs_against_sieve},
    {"generators/sophie_against_sieve", 3, chk_sophie_against_sieve},
    {"generators/wilson_small_values", 0, chk_wilson_small_values},
    {"generators/term_forms_agree", 0, chk_term_forms_agree},
    {"generators/factorial_closed_form", 0, chk_factorial_closed_form},
    {"mazzanti/delta_hamming_law", 4, chk_delta_hamming_law},
    {"mazzanti/fixed_instances_count", 5, chk_fixed_instances_count},
    {"mazzanti/randomized_instances", 5, chk_randomized_instances},
    {"mazzanti/binom_formula", 6, chk_binom_formula},
    {"mazzanti/gcd_formula_sweep", 6, chk_gcd_formula_sweep},
    {"mazzanti/nu2_formula", 6, chk_nu2_formula},
    {"mazzanti/nu2_of_central_binomials", 6, chk_nu2_of_central_binomials},
    {"mazzanti/hw_term", 6, chk_hw_term},
    {"mazzanti/marchenkov_pow", 6, chk_marchenkov_pow},
    {"mazzanti/geo_sum_closed_forms", 0, chk_geo_sum_closed_forms},
    {"mazzanti/c_term_divisibility", 0, chk_c_term_divisibility},
    {"counters/mersenne_shape", 7, chk_mersenne_shape},
    {"counters/mersenne_witnesses", 7, chk_mersenne_witnesses},
    {"counters/mersenne_coords_below_box", 7, chk_mersenne_coords_below_box},
    {"counters/mersenne_surrogate_bound", 7, chk_mersenne_surrogate_bound},
    {"counters/fermat_shape", 8, chk_fermat_shape},
    {"counters/fermat_monomial_enumeration", 8, chk_fermat_monomial_enumeration},
    {"counters/fermat_jones_sweep", 8, chk_fermat_jones_sweep},
    {"counters/fermat_witnesses", 8, chk_fermat_witnesses},
    {"counters/fermat_surrogate_bound", 8, chk_fermat_surrogate_bound},
    {"counters/primality_criteria", 9, chk_primality_criteria},
    {"counters/count_oracles", 9, chk_count_oracles},
    {"counters/twin_shape", 10, chk_twin_shape},
    {"counters/twin_k1_full_witness", 10, chk_twin_k1_full_witness},
    {"counters/twin_existence", 10, chk_twin_existence},
    {"counters/symbolic_reports", 11, chk_symbolic_reports},
    {"counters/expansion_profiles", 0, chk_expansion_profiles},
    {"counters/width_bounds", 0, chk_width_bounds},
    {"counters/fermat_coords_below_box", 0, chk_fermat_coords_below_box},
    {"counters/twin_partial_witnesses", 0, chk_twin_partial_witnesses},
    {"counters/twin_coords_below_box", 0, chk_twin_coords_below_box},
    {"counters/symbolic_report_details", 0, chk_count_report_details},
};

}  // namespace

std::vector<CheckResult> verify_suite(const std::string& selector, const EvalOptions& opts) {
  std::vector<CheckResult> out;
  for (const CheckDef& c : kChecks) {
    const std::string name = c.name;
    const std::string group = name.substr(0, name.find('/'));
    if (!(selector.empty() || selector == "all" || selector == group || selector == name))
      continue;
    CheckResult r;
    r.name = name;
    r.criterion = c.criterion;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      Ex ex;
      c.fn(ex, opts);
      r.detail = ex.done();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = r.detail.empty();
    out.push_back(std::move(r));
  }
  if (out.empty())
    throw DomainError("verify: unknown selector '" + selector +
                      "' (use all, terms, sequences, generators, mazzanti, counters, or a "
                      "full check name)");
  return out;
}

const char* criterion_title(int criterion) {
  switch (criterion) {
    case 0: return "supporting invariants";
    case 1: return "Pell closed form matches the recurrence";
    case 2: return "Lehmer sequence closed form";
    case 3: return "prime generators hit exactly the right primes";
    case 4: return "delta Hamming-weight law";
    case 5: return "closed-form counting matches brute enumeration";
    case 6: return "arithmetic-term identities at scale";
    case 7: return "Mersenne counting system";
    case 8: return "Fermat counting system";
    case 9: return "counting oracles and primality criteria";
    case 10: return "twin-prime counting system";
    case 11: return "symbolic counting reports";
    default: return "unknown";
  }
}

}  // namespace atl
