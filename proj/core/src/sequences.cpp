#include "atl/sequences.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include <nlohmann/json.hpp>

namespace atl {

namespace {

void need_bits(const Int& bits, const EvalOptions& o, const char* what) {
  if (bits > Int(o.bit_budget))
    throw BudgetExceeded(std::string(what) + ": needs ~" + bits.get_str() +
                         " bits (budget " + std::to_string(o.bit_budget) + ")");
}

std::size_t degree(const std::vector<Int>& b) {
  std::size_t d = b.size();
  while (d > 0 && sgn(b[d - 1]) == 0) --d;
  if (d == 0) throw DomainError("zero denominator polynomial");
  return d - 1;
}

// Durand-Kerner on b0 + b1 z + ... + bd z^d (monic-normalized internally).
std::vector<std::complex<double>> poly_roots(const std::vector<Int>& b) {
  const std::size_t d = degree(b);
  std::vector<std::complex<double>> cs(d + 1);
  for (std::size_t i = 0; i <= d; ++i) cs[i] = b[i].get_d();
  for (std::size_t i = 0; i <= d; ++i) cs[i] /= cs[d].real();
  std::vector<std::complex<double>> z(d);
  const std::complex<double> seed(0.4, 0.9);
  std::complex<double> acc(1.0, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    acc *= seed;
    z[i] = acc;
  }
  auto horner = [&](std::complex<double> x) {
    std::complex<double> v = cs[d];
    for (std::size_t i = d; i-- > 0;) v = v * x + cs[i];
    return v;
  };
  for (int it = 0; it < 500; ++it) {
    double moved = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      std::complex<double> den(1.0, 0.0);
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) den *= z[i] - z[j];
      const std::complex<double> step = horner(z[i]) / den;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-14) break;
  }
  return z;
}

double min_root_modulus(const std::vector<Int>& b) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : poly_roots(b)) best = std::min(best, std::abs(r));
  return best;
}

}  // namespace

Int crec_eval(const CRecSpec& spec, std::uint64_t n) {
  const std::size_t d = spec.B.size() - 1;
  std::vector<Int> t(n + 1);
  for (std::uint64_t j = 0; j <= n; ++j) {
    Int v = j < spec.A.size() ? spec.A[j] : Int(0);
    const std::uint64_t lim = std::min<std::uint64_t>(j, d);
    for (std::uint64_t i = 1; i <= lim; ++i) v -= spec.B[i] * t[j - i];
    t[j] = v;
  }
  return t[n];
}

ValidityReport validity_check(const CRecSpec& spec, unsigned prefix) {
  ValidityReport rep;
  if (spec.B.empty() || spec.B[0] != 1)
    throw DomainError("validity_check: B must have constant term 1");
  if (spec.A.size() >= spec.B.size())
    throw DomainError("validity_check: need deg A < deg B");
  if (spec.c < 2) throw DomainError("validity_check: base c must be >= 2");

  rep.min_root_modulus = min_root_modulus(spec.B);
  const double R = rep.min_root_modulus;
  const double cd = spec.c.get_d();
  std::ostringstream why;

  std::vector<Int> pre(prefix + 3);
  for (unsigned n = 0; n <= prefix + 2; ++n) {
    pre[n] = crec_eval(spec, n);
    if (sgn(pre[n]) < 0) {
      rep.detail = "sequence is negative at n=" + std::to_string(n);
      return rep;
    }
  }

  // direct regime: c >= 8, 1/c < R^3, t(n)^3 < c^n on the prefix.  The root
  // condition makes the growth bound hold beyond the prefix: the sequence
  // grows like (1/R)^n up to polynomial factors, so t(n)^3 < c^n eventually
  // holds whenever (1/R)^3 < c, and the prefix scan covers the transient.
  if (spec.c >= 8 && 1.0 / cd < R - 1e-12 && 1.0 / cd < R * R * R - 1e-12) {
    bool growth = true;
    Int cn = 1;
    for (unsigned n = 1; n <= prefix; ++n) {
      cn *= spec.c;
      if (pre[n] * pre[n] * pre[n] >= cn) {
        growth = false;
        why << "t(" << n << ")^3 >= c^" << n << "; ";
        break;
      }
    }
    if (growth) {
      rep.ok = true;
      rep.variant = "direct";
      rep.valid_from = 1;
      rep.detail = "c >= 8, 1/c < R^3, and t(n) < c^{n/3} on the checked prefix";
      return rep;
    }
  } else {
    why << "direct regime needs c >= 8 and 1/c < R^3 (R=" << R << "); ";
  }

  // offset regime: some m in [2,64] with c^{-m} < R and t(n) < c^{n-2} for
  // n in [m, m+prefix].  A larger m both weakens the root condition and
  // excludes early points from the growth condition, so try them in order.
  bool any_root_m = false;
  for (unsigned m = 2; m <= 64; ++m) {
    if (std::pow(cd, -double(m)) >= R - 1e-15) continue;
    any_root_m = true;
    bool growth = true;
    for (unsigned n = m; n <= m + prefix; ++n) {
      const Int tn = n <= prefix + 2 ? pre[n] : crec_eval(spec, n);
      Int bound;
      mpz_pow_ui(bound.get_mpz_t(), spec.c.get_mpz_t(), n - 2);
      if (tn >= bound) {
        growth = false;
        if (m <= 4) why << "t(" << n << ") >= c^" << (n - 2) << " at m=" << m << "; ";
        break;
      }
    }
    if (growth) {
      rep.ok = true;
      rep.variant = "offset";
      rep.valid_from = m;
      rep.detail = "c^{-m} < R at m=" + std::to_string(m) +
                   " and t(n) < c^{n-2} on the checked prefix";
      return rep;
    }
  }
  if (!any_root_m) why << "no m <= 64 with c^{-m} < R; ";
  rep.detail = why.str();
  return rep;
}

Term extract_divmod_term(const CRecSpec& spec) {
  const ValidityReport rep = validity_check(spec);
  if (!rep.ok)
    throw ValidityCheckFailed("closed form not valid for this spec: " + rep.detail);

  const std::size_t d = spec.B.size() - 1;
  const Term n = t_var("n");
  const Term nn = t_mul(n, n);
  auto c_pow = [&](const Term& e) { return t_pow(t_const(spec.c), e); };
  auto scaled = [&](const Int& coef, const Term& factor) {
    Int a = abs(coef);
    if (a == 1) return factor;
    return t_mul(t_const(a), factor);
  };
  auto lin_exp = [&](std::size_t j) {  // j * n
    if (j == 1) return n;
    return t_mul(t_const(Int(static_cast<unsigned long>(j))), n);
  };
  auto accumulate = [](Term& acc, Term piece) {
    acc = acc ? t_add(acc, piece) : piece;
  };

  // numerator: c^{n^2} * A~(c^n) = sum_i a_i c^{n^2 + (d-i) n}
  Term num_pos, num_neg;
  for (std::size_t i = 0; i < spec.A.size(); ++i) {
    if (sgn(spec.A[i]) == 0) continue;
    const std::size_t j = d - i;
    Term e = j == 0 ? nn : t_add(nn, lin_exp(j));
    Term piece = scaled(spec.A[i], c_pow(e));
    accumulate(sgn(spec.A[i]) > 0 ? num_pos : num_neg, piece);
  }
  if (!num_pos) num_pos = t_const(0);
  Term num = num_neg ? t_monus(num_pos, num_neg) : num_pos;

  // denominator: B~(c^n) = sum_i b_i c^{(d-i) n}
  Term den_pos, den_neg;
  for (std::size_t i = 0; i <= d; ++i) {
    if (sgn(spec.B[i]) == 0) continue;
    const std::size_t j = d - i;
    Term piece = j == 0 ? t_const(abs(spec.B[i])) : scaled(spec.B[i], c_pow(lin_exp(j)));
    accumulate(sgn(spec.B[i]) > 0 ? den_pos : den_neg, piece);
  }
  Term den = den_neg ? t_monus(den_pos, den_neg) : den_pos;

  return t_mod(t_divfloor(num, den), c_pow(n));
}

Int divmod_closed_form(const CRecSpec& spec, std::uint64_t n, const EvalOptions& opts) {
  if (n == 0) throw DomainError("divmod_closed_form: defined for n >= 1");
  const std::size_t d = spec.B.size() - 1;
  need_bits((Int(n) * Int(n) + Int(d) * Int(n) + 1) * Int(bit_length(spec.c)), opts,
            "divmod_closed_form");
  Int cn;
  mpz_pow_ui(cn.get_mpz_t(), spec.c.get_mpz_t(), n);
  Int num = 0, den = 0;
  // c^{n^2 + (d-i) n} = (c^n)^{n + d - i}
  for (std::size_t i = 0; i < spec.A.size(); ++i)
    num += spec.A[i] * pow_ui(cn, n + d - i);
  for (std::size_t i = 0; i <= d; ++i)
    den += spec.B[i] * pow_ui(cn, d - i);
  return fdiv_r(fdiv_q(num, den), cn);
}

Int minimal_admissible_base(const CRecSpec& spec, unsigned prefix) {
  for (Int c = 8; c <= 1'000'000; ++c) {
    CRecSpec trial = spec;
    trial.c = c;
    ValidityReport rep = validity_check(trial, prefix);
    if (rep.ok && rep.variant == "direct") return c;
  }
  throw ValidityCheckFailed("no base c <= 10^6 validates the direct regime");
}

CRecSpec pell_x_spec() {
  CRecSpec s;
  s.A = {Int(1), Int(-2)};
  s.B = {Int(1), Int(-4), Int(1)};
  s.c = 11;
  return s;
}

Term pell_x_term() { return extract_divmod_term(pell_x_spec()); }

Int pell_x_term_eval(std::uint64_t n, const EvalOptions& opts) {
  if (n == 0) throw DomainError("pell_x_term_eval: closed form valid for n >= 1");
  need_bits(Int(4) * (Int(n) * Int(n) + 2 * Int(n)), opts, "pell_x_term_eval");
  const Int p_n = ui_pow_ui(11, n);
  const Int p_n2 = pow_ui(p_n, n);  // 11^{n^2}
  const Int num = p_n2 * p_n * p_n - 2 * p_n2 * p_n;
  const Int den = p_n * p_n - 4 * p_n + 1;
  return fdiv_r(fdiv_q(num, den), p_n);
}

Int lehmer_s(std::uint64_t n) {
  if (n == 0) throw DomainError("lehmer_s: defined for n >= 1");
  if (n > 25) throw BudgetExceeded("lehmer_s: explicit values capped at n = 25");
  Int s = 4;
  for (std::uint64_t i = 1; i < n; ++i) s = s * s - 2;
  return s;
}

Int lehmer_s_mod(std::uint64_t n, const Int& modulus) {
  if (n == 0) throw DomainError("lehmer_s_mod: defined for n >= 1");
  if (modulus < 1) throw DomainError("lehmer_s_mod: modulus must be >= 1");
  Int s = fdiv_r(Int(4), modulus);
  for (std::uint64_t i = 1; i < n; ++i) s = fdiv_r(s * s - 2, modulus);
  return s;
}

Int lehmer_s_term_eval(std::uint64_t n, const EvalOptions& opts, std::uint64_t max_n) {
  if (n == 0) throw DomainError("lehmer_s_term_eval: defined for n >= 1");
  if (n > max_n)
    throw BudgetExceeded("lehmer_s_term_eval: n exceeds the configured limit of " +
                         std::to_string(max_n));
  // s(n) = 2 x(2^{n-1}) through the x closed form
  const Int half = pow2_ui(static_cast<unsigned long>(n - 1));  // 2^{n-1}
  need_bits(Int(4) * (half * half + 2 * half), opts, "lehmer_s_term_eval");
  const unsigned long m = to_ulong(half, "lehmer_s_term_eval exponent");
  const Int p_n = ui_pow_ui(11, m);
  const Int p_n2 = pow_ui(p_n, m);
  const Int num = p_n2 * p_n * p_n - 2 * p_n2 * p_n;
  const Int den = p_n * p_n - 4 * p_n + 1;
  return 2 * fdiv_r(fdiv_q(num, den), p_n);
}

nlohmann::json crec_to_json(const CRecSpec& spec) {
  auto strs = [](const std::vector<Int>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(x.get_str());
    return out;
  };
  return {{"A", strs(spec.A)}, {"B", strs(spec.B)}, {"c", spec.c.get_str()}};
}

CRecSpec crec_from_json(const nlohmann::json& j) {
  CRecSpec s;
  try {
    for (const auto& a : j.at("A")) s.A.push_back(Int(a.get<std::string>()));
    for (const auto& b : j.at("B")) s.B.push_back(Int(b.get<std::string>()));
    s.c = Int(j.at("c").get<std::string>());
  } catch (const std::invalid_argument&) {
    throw ParseError("c-recursive spec: coefficients must be decimal strings", 0, 0);
  } catch (const nlohmann::json::exception&) {
    throw ParseError("c-recursive spec needs A, B, c", 0, 0);
  }
  if (s.B.empty() || s.B[0] != 1)
    throw ParseError("c-recursive spec: B must start with 1", 0, 0);
  if (s.A.size() >= s.B.size())
    throw ParseError("c-recursive spec: need deg A < deg B", 0, 0);
  if (s.c < 2) throw ParseError("c-recursive spec: base c must be >= 2", 0, 0);
  return s;
}

}  // namespace atl
