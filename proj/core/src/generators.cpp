#include "atl/generators.hpp"

namespace atl {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

}  // namespace

Int factorial_semantic(std::uint64_t n) {
  if (n > 5000) throw BudgetExceeded("factorial_semantic: capped at n = 5000");
  Int r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

std::uint64_t factorial_mod(std::uint64_t n, std::uint64_t m) {
  if (m == 0) throw DivisionByZero("factorial_mod: zero modulus");
  std::uint64_t acc = 1 % m;
  for (std::uint64_t i = 2; i <= n && acc != 0; ++i) acc = mulmod(acc, i % m, m);
  return acc;
}

Term factorial_term(FactorialScheme scheme) {
  const Term n = t_var("n");
  Term r;
  if (scheme == FactorialScheme::POW8SQ) {
    r = t_pow2(t_mul(t_const(3), t_mul(n, n)));  // 8^{n^2}
  } else {
    r = t_pow(t_add(n, t_const(1)), t_add(n, t_const(2)));  // (n+1)^{n+2}
  }
  return t_divfloor(t_pow(r, n), t_binom(r, n));
}

Int factorial_term_eval(std::uint64_t n, FactorialScheme scheme, const EvalOptions& opts) {
  return eval(factorial_term(scheme), {{"n", Int(n)}}, opts);
}

std::uint64_t wilson_gen(unsigned c, std::uint64_t n) {
  if (c < 2 || c > 3) throw DomainError("wilson_gen: c must be 2 or 3");
  const std::uint64_t m = n + 1;
  if (m == 0) throw DomainError("wilson_gen: n+1 overflows");
  return c + mulmod(c % m, factorial_mod(n, m), m);
}

std::uint64_t wilson_t(std::uint64_t n) { return wilson_gen(2, n); }
std::uint64_t wilson_z(std::uint64_t n) { return wilson_gen(3, n); }

std::uint64_t mersenne_gen(std::uint64_t n, int variant) {
  if (variant == 1) {
    if (n > 20) throw BudgetExceeded("mersenne_gen variant 1: capped at n = 20");
    return wilson_z((std::uint64_t(1) << (n + 1)) - 2);
  }
  if (variant == 2) {
    const std::uint64_t t = wilson_t(n);
    if (t > 21) throw BudgetExceeded("mersenne_gen variant 2: 2^{t(n)} too large at this n");
    return wilson_z((std::uint64_t(1) << t) - 2);
  }
  throw DomainError("mersenne_gen: variant must be 1 or 2");
}

std::uint64_t fermat_gen(std::uint64_t n, int variant) {
  if (variant == 1) {
    if (n > 16) throw BudgetExceeded("fermat_gen variant 1: capped at n = 16");
    return wilson_z(std::uint64_t(1) << (n + 2));
  }
  if (variant == 2) {
    if (n > 4) throw BudgetExceeded("fermat_gen variant 2: capped at n = 4");
    return wilson_z(std::uint64_t(1) << (std::uint64_t(1) << n));
  }
  throw DomainError("fermat_gen: variant must be 1 or 2");
}

std::pair<std::uint64_t, std::uint64_t> twin_gen(std::uint64_t n) {
  const std::uint64_t p1 = std::min(wilson_z(n + 2), wilson_z(n + 4));
  return {p1, p1 + 2};
}

std::uint64_t sophie_gen(std::uint64_t n) {
  return std::min(wilson_t(n), wilson_t(2 * n + 2));
}

namespace {

// z(m) and t(m) as terms in an inner term m
Term z_term(const Term& m) {
  return t_add(t_const(3), t_mod(t_mul(t_const(3), t_fact(m)), t_add(m, t_const(1))));
}
Term t_term(const Term& m) {
  return t_add(t_const(2), t_mod(t_mul(t_const(2), t_fact(m)), t_add(m, t_const(1))));
}

}  // namespace

Term mersenne_gen_term(int variant) {
  const Term n = t_var("n");
  if (variant == 1)
    return z_term(t_monus(t_pow2(t_add(n, t_const(1))), t_const(2)));
  if (variant == 2)
    return z_term(t_monus(t_pow2(t_term(n)), t_const(2)));
  throw DomainError("mersenne_gen_term: variant must be 1 or 2");
}

Term fermat_gen_term(int variant) {
  const Term n = t_var("n");
  if (variant == 1) return z_term(t_pow2(t_add(n, t_const(2))));
  if (variant == 2) return z_term(t_pow2(t_pow2(n)));
  throw DomainError("fermat_gen_term: variant must be 1 or 2");
}

Term twin_gen_term() {
  const Term n = t_var("n");
  return t_min(z_term(t_add(n, t_const(2))), z_term(t_add(n, t_const(4))));
}

Term sophie_gen_term() {
  const Term n = t_var("n");
  return t_min(t_term(n), t_term(t_add(t_mul(t_const(2), n), t_const(2))));
}

}  // namespace atl
