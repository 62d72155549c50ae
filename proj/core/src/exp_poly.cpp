#include "atl/exp_poly.hpp"

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

namespace atl {

namespace {

int cmp_factor(const ExpFactor& a, const ExpFactor& b) {
  int c = cmp(a.v, b.v);
  if (c) return c;
  return a.r < b.r ? -1 : a.r > b.r ? 1 : 0;
}

struct ShapeLess {
  bool operator()(const std::vector<ExpFactor>& a, const std::vector<ExpFactor>& b) const {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      int c = cmp_factor(a[i], b[i]);
      if (c) return c < 0;
    }
    return a.size() < b.size();
  }
};

void pad_to(ExpMonomial& m, std::size_t n) {
  if (m.f.size() > n)
    throw InvariantViolation("monomial has more factors than the container has names");
  m.f.resize(n);
}

void need_bits(const Int& bits, const EvalOptions& o, const char* what) {
  if (bits > Int(o.bit_budget))
    throw BudgetExceeded(std::string(what) + ": needs ~" + bits.get_str() +
                         " bits (budget " + std::to_string(o.bit_budget) + ")");
}

// c * 2^shift * odd accumulated separately so that power-of-two bases cost a
// single shift at the end instead of huge multiplications.
Int eval_monomial(const ExpMonomial& m, const std::vector<Int>& vals, const EvalOptions& o) {
  if (sgn(m.c) == 0) return Int(0);
  Int shift = 0;
  Int acc = 1;
  for (std::size_t i = 0; i < m.f.size(); ++i) {
    const ExpFactor& e = m.f[i];
    if (e.trivial()) continue;
    const Int& x = vals[i];
    if (sgn(x) < 0) throw DomainError("exponential monomials take nonnegative points");
    if (e.v > 1) {
      if (is_power_of_two(e.v)) {
        shift += Int(nu2(e.v)) * x;
        need_bits(shift, o, "eval_poly");
      } else {
        Int bits = x * Int(bit_length(e.v));
        need_bits(bits + Int(bit_length(acc)), o, "eval_poly");
        acc *= pow_ui(e.v, to_ulong(x, "eval_poly exponent"));
      }
    }
    if (e.r > 0) {
      need_bits(Int(e.r) * Int(bit_length(x)) + Int(bit_length(acc)), o, "eval_poly");
      acc *= pow_ui(x, e.r);
    }
  }
  Int out = m.c * acc;
  mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), to_ulong(shift, "eval_poly shift"));
  return out;
}

Int eval_at(const ExpPolynomial& p, const std::vector<Int>& vals, const EvalOptions& o) {
  Int sum = 0;
  for (const auto& m : p.ms) sum += eval_monomial(m, vals, o);
  return sum;
}

nlohmann::json monomial_to_json(const ExpMonomial& m) {
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& e : m.f)
    fs.push_back({{"v", e.v.get_str()}, {"r", e.r}});
  return {{"c", m.c.get_str()}, {"factors", std::move(fs)}};
}

ExpMonomial monomial_from_json(const nlohmann::json& j, std::size_t arity) {
  ExpMonomial m;
  try {
    m.c = Int(j.at("c").get<std::string>());
  } catch (const std::invalid_argument&) {
    throw ParseError("invalid monomial coefficient", 0, 0);
  }
  if (j.contains("factors")) {
    for (const auto& jf : j.at("factors")) {
      ExpFactor e;
      try {
        e.v = Int(jf.at("v").get<std::string>());
      } catch (const std::invalid_argument&) {
        throw ParseError("invalid factor base", 0, 0);
      }
      if (e.v < 1) throw ParseError("factor base must be >= 1", 0, 0);
      e.r = jf.at("r").get<unsigned>();
      m.f.push_back(e);
    }
  }
  if (m.f.size() > arity) throw ParseError("monomial factor list longer than unknown list", 0, 0);
  m.f.resize(arity);
  return m;
}

}  // namespace

void ExpPolynomial::canonicalize() {
  for (auto& m : ms) pad_to(m, names.size());
  std::map<std::vector<ExpFactor>, Int, ShapeLess> merged;
  for (auto& m : ms) merged[m.f] += m.c;
  ms.clear();
  for (auto& [shape, c] : merged) {
    if (sgn(c) == 0) continue;
    ms.push_back(ExpMonomial{c, shape});
  }
}

std::vector<std::string> SquareSystem::all_names() const {
  std::vector<std::string> n = unknowns;
  if (param) n.push_back(*param);
  return n;
}

ExpPolynomial expand_squares(const SquareSystem& s) {
  ExpPolynomial p;
  p.names = s.all_names();
  const std::size_t n = p.names.size();
  for (const auto& sq : s.squares) {
    // signed difference L - R, then square
    std::vector<ExpMonomial> diff;
    for (auto m : sq.l) {
      pad_to(m, n);
      if (sgn(m.c) < 0) throw DomainError("square sides must have nonnegative coefficients");
      diff.push_back(std::move(m));
    }
    for (auto m : sq.r) {
      pad_to(m, n);
      if (sgn(m.c) < 0) throw DomainError("square sides must have nonnegative coefficients");
      m.c = -m.c;
      diff.push_back(std::move(m));
    }
    for (const auto& a : diff)
      for (const auto& b : diff) {
        ExpMonomial prod;
        prod.c = a.c * b.c;
        prod.f.resize(n);
        for (std::size_t i = 0; i < n; ++i)
          prod.f[i] = ExpFactor{a.f[i].v * b.f[i].v,
                                a.f[i].r + b.f[i].r};
        p.ms.push_back(std::move(prod));
      }
  }
  p.canonicalize();
  return p;
}

Int eval_poly(const ExpPolynomial& p, const Witness& at, const EvalOptions& opts) {
  std::vector<Int> vals(p.names.size());
  std::vector<bool> have(p.names.size(), false);
  for (std::size_t i = 0; i < p.names.size(); ++i) {
    auto it = at.find(p.names[i]);
    if (it != at.end()) {
      vals[i] = it->second;
      have[i] = true;
    }
  }
  // Only names some monomial actually uses need a value; a polynomial over a
  // wide name list may touch just a few coordinates.
  for (const auto& m : p.ms)
    for (std::size_t i = 0; i < m.f.size() && i < p.names.size(); ++i)
      if (!m.f[i].trivial() && !have[i])
        throw UnboundVariable("eval_poly: no value for '" + p.names[i] + "'");
  return eval_at(p, vals, opts);
}

ExpPolynomial bind_name(const ExpPolynomial& p, const std::string& name, const Int& value,
                        const EvalOptions& opts) {
  auto pos = std::find(p.names.begin(), p.names.end(), name);
  if (pos == p.names.end()) throw UnboundVariable("bind_name: no unknown '" + name + "'");
  if (sgn(value) < 0) throw DomainError("bind_name: value must be nonnegative");
  const std::size_t idx = static_cast<std::size_t>(pos - p.names.begin());
  ExpPolynomial q;
  q.names = p.names;
  q.names.erase(q.names.begin() + static_cast<std::ptrdiff_t>(idx));
  for (auto m : p.ms) {
    pad_to(m, p.names.size());
    const ExpFactor e = m.f[idx];
    m.f.erase(m.f.begin() + static_cast<std::ptrdiff_t>(idx));
    if (!e.trivial()) {
      if (e.v > 1) {
        need_bits(value * Int(bit_length(e.v)), opts, "bind_name");
        m.c *= pow_ui(e.v, to_ulong(value, "bind_name exponent"));
      }
      if (e.r > 0) m.c *= pow_ui(value, e.r);
    }
    q.ms.push_back(std::move(m));
  }
  q.canonicalize();
  return q;
}

std::uint64_t brute_count(const ExpPolynomial& p, const Int& t, const EvalOptions& opts) {
  if (t < 1) throw DomainError("brute_count: box size t must be >= 1");
  const std::size_t k = p.names.size();
  Int total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= t;
    if (total > Int(opts.point_budget))
      throw BudgetExceeded("brute_count: t^k exceeds the point budget");
  }
  const unsigned long tu = to_ulong(t, "brute_count box size");
  std::vector<Int> vals(k, Int(0));
  std::vector<unsigned long> digit(k, 0);
  std::uint64_t zeros = 0;
  for (;;) {
    if (sgn(eval_at(p, vals, opts)) == 0) zeros++;
    std::size_t i = 0;
    for (; i < k; ++i) {
      if (++digit[i] < tu) {
        vals[i] = digit[i];
        break;
      }
      digit[i] = 0;
      vals[i] = 0;
    }
    if (i == k) break;  // wrapped around: done (also handles k == 0)
  }
  return zeros;
}

SquareSystem nonneg_singlefold_transform(const std::vector<std::string>& names,
                                         const std::vector<ExpMonomial>& pos,
                                         const std::vector<ExpMonomial>& neg) {
  for (const auto* side : {&pos, &neg})
    for (const auto& m : *side)
      if (sgn(m.c) < 0)
        throw DomainError("nonneg_singlefold_transform: coefficients must be nonnegative");

  const std::size_t m_count = pos.size() + neg.size();
  SquareSystem s;
  s.unknowns = names;
  std::vector<std::size_t> fresh_idx;
  for (std::size_t i = 0; i < m_count; ++i) {
    std::string cand = "y" + std::to_string(i + 1);
    while (std::find(s.unknowns.begin(), s.unknowns.end(), cand) != s.unknowns.end())
      cand += "_";
    fresh_idx.push_back(s.unknowns.size());
    s.unknowns.push_back(std::move(cand));
  }
  const std::size_t n = s.unknowns.size();

  auto padded = [&](ExpMonomial m) {
    pad_to(m, n);
    return m;
  };
  std::size_t yi = 0;
  auto add_matcher = [&](const ExpMonomial& m) {
    ExpMonomial lhs;
    lhs.c = 1;
    lhs.f.resize(n);
    lhs.f[fresh_idx[yi]].r = 1;  // the fresh unknown itself
    s.squares.push_back({{lhs}, {padded(m)}});
    ++yi;
  };
  for (const auto& m : pos) add_matcher(m);
  for (const auto& m : neg) add_matcher(m);

  // (2^{sum of pos-side y} - 2^{sum of neg-side y})^2 forces the two sums
  // equal, i.e. f = pos - neg = 0.
  ExpMonomial lexp, rexp;
  lexp.c = 1;
  rexp.c = 1;
  lexp.f.resize(n);
  rexp.f.resize(n);
  for (std::size_t i = 0; i < pos.size(); ++i) lexp.f[fresh_idx[i]].v = 2;
  for (std::size_t i = pos.size(); i < m_count; ++i) rexp.f[fresh_idx[i]].v = 2;
  s.squares.push_back({{lexp}, {rexp}});
  return s;
}

// ---- JSON -------------------------------------------------------------------

nlohmann::json poly_to_json(const ExpPolynomial& p) {
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& m : p.ms) ms.push_back(monomial_to_json(m));
  return {{"unknowns", p.names}, {"monomials", std::move(ms)}};
}

ExpPolynomial poly_from_json(const nlohmann::json& j) {
  ExpPolynomial p;
  if (!j.is_object() || !j.contains("unknowns") || !j.contains("monomials"))
    throw ParseError("polynomial JSON needs unknowns/monomials", 0, 0);
  p.names = j.at("unknowns").get<std::vector<std::string>>();
  for (const auto& jm : j.at("monomials"))
    p.ms.push_back(monomial_from_json(jm, p.names.size()));
  p.canonicalize();
  return p;
}

nlohmann::json system_to_json(const SquareSystem& s) {
  nlohmann::json out;
  out["unknowns"] = s.unknowns;
  if (s.param) out["param"] = *s.param;
  nlohmann::json sqs = nlohmann::json::array();
  const std::size_t n = s.all_names().size();
  for (const auto& sq : s.squares) {
    nlohmann::json l = nlohmann::json::array(), r = nlohmann::json::array();
    for (auto m : sq.l) {
      pad_to(m, n);
      l.push_back(monomial_to_json(m));
    }
    for (auto m : sq.r) {
      pad_to(m, n);
      r.push_back(monomial_to_json(m));
    }
    sqs.push_back({{"l", std::move(l)}, {"r", std::move(r)}});
  }
  out["squares"] = std::move(sqs);
  return out;
}

SquareSystem system_from_json(const nlohmann::json& j) {
  SquareSystem s;
  if (!j.is_object() || !j.contains("unknowns") || !j.contains("squares"))
    throw ParseError("system JSON needs unknowns/squares", 0, 0);
  s.unknowns = j.at("unknowns").get<std::vector<std::string>>();
  if (j.contains("param")) s.param = j.at("param").get<std::string>();
  const std::size_t n = s.all_names().size();
  for (const auto& jq : j.at("squares")) {
    SquareSystem::Square sq;
    for (const auto& jm : jq.at("l")) sq.l.push_back(monomial_from_json(jm, n));
    for (const auto& jm : jq.at("r")) sq.r.push_back(monomial_from_json(jm, n));
    s.squares.push_back(std::move(sq));
  }
  return s;
}

}  // namespace atl
