#include "atl/mazzanti.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include <nlohmann/json.hpp>

namespace atl {

namespace {

void need_bits(const Int& bits, const EvalOptions& o, const char* what) {
  if (bits > Int(o.bit_budget))
    throw BudgetExceeded(std::string(what) + ": needs ~" + bits.get_str() +
                         " bits (budget " + std::to_string(o.bit_budget) + ")");
}

Int divexact_checked(const Int& num, const Int& den, const char* what) {
  if (sgn(den) == 0) throw DivisionByZero(what);
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw InvariantViolation(std::string(what) + ": division is not exact");
  Int q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

}  // namespace

Int geo_sum(unsigned r, const Int& q, const Int& t, const EvalOptions& opts) {
  if (q < 1) throw DomainError("geo_sum: base q must be >= 1");
  if (t < 1) throw DomainError("geo_sum: length t must be >= 1");
  if (q == 1) {
    // Faulhaber sums of j^r for j < t
    if (r == 0) return t;
    if (r == 1) return t * (t - 1) / 2;
    if (r == 2) return (t - 1) * t * (2 * t - 1) / 6;
  } else if (r <= 2) {
    need_bits((t + 1) * Int(bit_length(q)), opts, "geo_sum");
    const unsigned long tu = to_ulong(t, "geo_sum length");
    const Int qt = pow_ui(q, tu);
    if (r == 0) return divexact_checked(qt - 1, q - 1, "geo_sum r=0");
    const Int qt1 = divexact_checked(qt, q, "geo_sum q^(t-1)");  // q^{t-1}
    if (r == 1) {
      // q (1 - t q^{t-1} + (t-1) q^t) / (1-q)^2
      Int num = q * (Int(1) - t * qt1 + (t - 1) * qt);
      Int den = (1 - q) * (1 - q);
      return divexact_checked(num, den, "geo_sum r=1");
    }
    // q (1 + q - t^2 q^{t-1} + (2t^2-2t-1) q^t - (t-1)^2 q^{t+1}) / (1-q)^3
    Int num = q * (Int(1) + q - t * t * qt1 + (2 * t * t - 2 * t - 1) * qt -
                   (t - 1) * (t - 1) * qt * q);
    Int den = (1 - q) * (1 - q) * (1 - q);
    return divexact_checked(num, den, "geo_sum r=2");
  }
  // r >= 3: direct summation
  if (t > Int(opts.point_budget)) throw BudgetExceeded("geo_sum: direct sum over t points");
  need_bits(t * Int(bit_length(q)) + 1, opts, "geo_sum");
  const unsigned long tu = to_ulong(t, "geo_sum length");
  Int sum = 0, qj = 1;
  for (unsigned long j = 0; j < tu; ++j) {
    if (j) qj *= q;
    sum += ui_pow_ui(j, r) * qj;
  }
  return sum;
}

Int delta(const Int& a, unsigned long b) {
  if (b == 0) throw DomainError("delta: width b must be >= 1");
  if (sgn(a) < 0) throw DomainError("delta: a must be nonnegative");
  const Int p = pow2_ui(b);
  if (a >= p) throw DomainError("delta: a must be < 2^b");
  return (p - 1) * (p - a + 1);
}

Int binom_via_formula(const Int& a, const Int& b, const EvalOptions& opts) {
  // C(a,b) = floor((2^a+1)^a / 2^{ab}) mod 2^a
  if (sgn(a) < 0 || sgn(b) < 0) throw DomainError("binom_via_formula: nonnegative arguments");
  if (b > a) return Int(0);
  need_bits(a * a + a, opts, "binom_via_formula");
  const unsigned long au = to_ulong(a, "binom_via_formula upper index");
  Int base = pow2_ui(au) + 1;
  Int big = pow_ui(base, au);
  mpz_fdiv_q_2exp(big.get_mpz_t(), big.get_mpz_t(), to_ulong(a * b, "binom shift"));
  Int r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), big.get_mpz_t(), au);
  return r;
}

Int gcd_via_formula(const Int& a, const Int& b, const EvalOptions& opts) {
  // gcd(a,b) = (floor(5^{ab(ab+a+b)} / ((5^{a^2 b}-1)(5^{a b^2}-1))) mod 5^{ab}) - 1
  if (a < 1 || b < 1) throw DomainError("gcd_via_formula: arguments must be >= 1");
  const Int ab = a * b;
  const Int e = ab * (ab + a + b);
  need_bits(e * 3 + 3, opts, "gcd_via_formula");
  const Int num = pow_ui(Int(5), to_ulong(e, "gcd exponent"));
  const Int d1 = pow_ui(Int(5), to_ulong(a * ab, "gcd exponent")) - 1;
  const Int d2 = pow_ui(Int(5), to_ulong(b * ab, "gcd exponent")) - 1;
  const Int q = fdiv_q(num, d1 * d2);
  const Int m = pow_ui(Int(5), to_ulong(ab, "gcd exponent"));
  return fdiv_r(q, m) - 1;
}

unsigned long nu2_via_formula(const Int& x, const EvalOptions& opts) {
  // nu2(x) = floor((gcd(x,2^x)^{x+1} mod (2^{x+1}-1)^2) / (2^{x+1}-1))
  if (x < 1) throw Nu2Zero("nu2_via_formula: argument must be >= 1");
  need_bits(2 * x + 4, opts, "nu2_via_formula");
  const unsigned long xu = to_ulong(x, "nu2 argument");
  Int g;
  const Int p = pow2_ui(xu);
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  const Int m = pow2_ui(xu + 1) - 1;
  const Int m2 = m * m;
  Int r;
  Int e = x + 1;
  mpz_powm(r.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t(), m2.get_mpz_t());
  return to_ulong(fdiv_q(r, m), "nu2 result");
}

unsigned long hw_via_term(const Int& n, const EvalOptions& opts) {
  // hw(n) = nu2(C(2n,n)): the carries when adding n + n in binary.
  if (n < 1) throw DomainError("hw_via_term: argument must be >= 1");
  need_bits(2 * n + 2, opts, "hw_via_term");
  const unsigned long nu = to_ulong(n, "hw argument");
  Int c;
  mpz_bin_uiui(c.get_mpz_t(), 2 * nu, nu);
  return nu2(c);
}

Int marchenkov_pow(const Int& a, const Int& b, const EvalOptions& opts) {
  // a^b = 2^{(ab+a+1)b} mod (2^{ab+a+1} - a)
  if (sgn(a) < 0 || sgn(b) < 0) throw DomainError("marchenkov_pow: nonnegative arguments");
  const Int s = a * b + a + 1;
  need_bits(s * b + 1, opts, "marchenkov_pow");
  const Int mod = pow2_ui(to_ulong(s, "marchenkov_pow")) - a;
  Int r;
  Int base = 2, e = s * b;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  return r;
}

Int build_M(const CountingInstance& inst, const EvalOptions& opts) {
  const ExpPolynomial& p = inst.poly;
  const Int& t = inst.t;
  const Int& w = inst.w;
  if (t < 1 || w < 1) throw DomainError("build_M: t and w must be >= 1");
  const std::size_t k = p.names.size();
  Int tk = 1;
  for (std::size_t i = 0; i < k; ++i) tk *= t;
  need_bits(2 * w * tk + 2 * w, opts, "build_M");
  const unsigned long wu = to_ulong(w, "build_M width");

  Int c0 = 0;
  for (const auto& m : p.ms)
    if (m.constant()) c0 += m.c;

  // constant part: (2^w - c0 + 1)(2^{2 w t^k} - 1) / (2^w + 1)
  const Int pw = pow2_ui(wu);
  const Int big = pow2_ui(to_ulong(2 * w * tk, "build_M top exponent")) - 1;
  Int M = divexact_checked((pw - c0 + 1) * big, pw + 1, "build_M constant part");

  // each non-constant monomial contributes
  //   -(2^w - 1) c * prod_i S_{r_i}(2^{2 w t^{i-1}} v_i, t)
  for (const auto& m : p.ms) {
    if (m.constant()) continue;
    Int prod = pw - 1;
    prod *= m.c;
    Int digit_weight = 2 * w;  // 2 w t^{i-1}
    for (std::size_t i = 0; i < k; ++i) {
      const Int q = pow2_ui(to_ulong(digit_weight, "build_M digit weight")) * m.f[i].v;
      prod *= geo_sum(m.f[i].r, q, t, opts);
      digit_weight *= t;
    }
    M -= prod;
  }
  if (sgn(M) < 0) throw InvariantViolation("build_M: master number came out negative");
  return M;
}

Int direct_sum_M(const CountingInstance& inst, const EvalOptions& opts) {
  const ExpPolynomial& p = inst.poly;
  if (inst.t < 1 || inst.w < 1) throw DomainError("direct_sum_M: t and w must be >= 1");
  const std::size_t k = p.names.size();
  Int tk = 1;
  for (std::size_t i = 0; i < k; ++i) {
    tk *= inst.t;
    if (tk > Int(opts.point_budget)) throw BudgetExceeded("direct_sum_M: t^k points");
  }
  need_bits(2 * inst.w * tk + 2 * inst.w, opts, "direct_sum_M");
  const unsigned long tu = to_ulong(inst.t, "direct_sum_M box size");
  const unsigned long wu = to_ulong(inst.w, "direct_sum_M width");

  Witness at;
  for (const auto& n : p.names) at[n] = 0;
  std::vector<unsigned long> digit(k, 0);
  Int M = 0;
  Int beta = 0;   // digit packing of the current point
  Int place = 1;  // unused beyond clarity; beta tracked incrementally below
  (void)place;
  for (;;) {
    // beta = sum_i digit[i] * t^i
    Int b = 0, pw = 1;
    for (std::size_t i = 0; i < k; ++i) {
      b += Int(digit[i]) * pw;
      pw *= inst.t;
    }
    beta = b;
    const Int fa = eval_poly(p, at, opts);
    if (sgn(fa) < 0 || bit_length(fa) > wu)
      throw DomainError("direct_sum_M: f out of [0, 2^w) at a grid point");
    Int contrib = delta(fa, wu);
    mpz_mul_2exp(contrib.get_mpz_t(), contrib.get_mpz_t(),
                 to_ulong(2 * inst.w * beta, "direct_sum_M shift"));
    M += contrib;
    std::size_t i = 0;
    for (; i < k; ++i) {
      if (++digit[i] < tu) {
        at[p.names[i]] = digit[i];
        break;
      }
      digit[i] = 0;
      at[p.names[i]] = 0;
    }
    if (i == k) break;
  }
  return M;
}

Int count_solutions(const CountingInstance& inst, const EvalOptions& opts) {
  const Int M = build_M(inst, opts);
  const unsigned long hw = popcount(M);
  const unsigned long wu = to_ulong(inst.w, "count_solutions width");
  if (hw % wu != 0)
    throw InvariantViolation("count_solutions: hw(M) not a multiple of w (width too small?)");
  Int tk = 1;
  for (std::size_t i = 0; i < inst.poly.names.size(); ++i) tk *= inst.t;
  Int count = Int(hw / wu) - tk;
  if (sgn(count) < 0)
    throw InvariantViolation("count_solutions: negative count (width too small?)");
  return count;
}

Int choose_w(const ExpPolynomial& p, const Int& t) {
  if (t < 1) throw DomainError("choose_w: t must be >= 1");
  const unsigned long tu = to_ulong(t, "choose_w box size");
  Int bound = 0;
  for (const auto& m : p.ms) {
    Int mb = abs(m.c);
    for (const auto& e : m.f) {
      if (e.v > 1) mb *= pow_ui(e.v, tu - 1);
      if (e.r > 0 && tu >= 2) mb *= ui_pow_ui(tu - 1, e.r);
      // for t = 1 the only point is 0, so x^r contributes 0 unless r = 0;
      // keeping the |c| term alone stays an upper bound for f(0).
    }
    bound += mb;
  }
  const std::size_t bits = bit_length(bound);
  return Int(bits == 0 ? 1 : bits);
}

SymbolicW choose_w_symbolic(const ExpPolynomial& p) {
  // f on [0,t)^k is bounded by sum |c| * prod v^t * t^r < 2^{beta + alpha t}
  // with alpha = max_m (ceil(log2 prod v) + sum r), beta = bitlen(sum |c|),
  // using (t-1)^r <= 2^{r t} and v^{t-1} <= 2^{t ceil(log2 v)}.
  SymbolicW out;
  Int csum = 0;
  for (const auto& m : p.ms) {
    Int vprod = 1;
    unsigned long rsum = 0;
    for (const auto& e : m.f) {
      vprod *= e.v;
      rsum += e.r;
    }
    unsigned long ceil_log2 = vprod <= 1 ? 0 : bit_length(vprod - 1);
    out.alpha = std::max(out.alpha, ceil_log2 + rsum);
    csum += abs(m.c);
  }
  out.beta = static_cast<unsigned long>(bit_length(csum));
  if (out.beta == 0) out.beta = 1;
  return out;
}

MProfile m_profile(const ExpPolynomial& p) {
  MProfile mp;
  for (const auto& m : p.ms) {
    if (m.constant()) {
      mp.constants++;
      continue;
    }
    mp.nonconstant++;
    std::vector<unsigned> key;
    for (const auto& e : m.f)
      if (e.r > 0) key.push_back(e.r);
    std::sort(key.begin(), key.end(), std::greater<>());
    mp.products[key]++;
  }
  return mp;
}

std::string m_profile_to_string(const MProfile& mp) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, count] : mp.products) {
    if (!first) os << ", ";
    first = false;
    os << count << "x[";
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i) os << ",";
      os << key[i];
    }
    os << "]";
  }
  os << "; nonconstant=" << mp.nonconstant << ", constants=" << mp.constants;
  return os.str();
}

nlohmann::json instance_to_json(const CountingInstance& inst) {
  nlohmann::json j = poly_to_json(inst.poly);
  j["t"] = inst.t.get_str();
  j["w"] = inst.w.get_str();
  return j;
}

CountingInstance instance_from_json(const nlohmann::json& j) {
  CountingInstance inst;
  inst.poly = poly_from_json(j);
  try {
    inst.t = Int(j.at("t").get<std::string>());
    inst.w = Int(j.at("w").get<std::string>());
  } catch (const std::invalid_argument&) {
    throw ParseError("counting instance needs decimal t and w", 0, 0);
  }
  if (inst.t < 1 || inst.w < 1) throw ParseError("counting instance needs t >= 1, w >= 1", 0, 0);
  return inst;
}

}  // namespace atl
