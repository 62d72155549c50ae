#include "atl/term.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include <nlohmann/json.hpp>

namespace atl {

namespace {

Term mk(Op op, Int value, std::string name, std::vector<Term> args) {
  auto n = std::make_shared<TermNode>();
  n->op = op;
  n->value = std::move(value);
  n->name = std::move(name);
  n->args = std::move(args);
  return n;
}

void need_bits(const Int& bits, const EvalOptions& o, const char* what) {
  if (bits > Int(o.bit_budget))
    throw BudgetExceeded(std::string(what) + ": needs ~" + bits.get_str() +
                         " bits (budget " + std::to_string(o.bit_budget) + ")");
}

}  // namespace

const char* op_name(Op op) {
  switch (op) {
    case Op::Const: return "const";
    case Op::Var: return "var";
    case Op::Add: return "add";
    case Op::Monus: return "monus";
    case Op::Mul: return "mul";
    case Op::DivFloor: return "divfloor";
    case Op::Pow2: return "pow2";
    case Op::Mod: return "mod";
    case Op::Pow: return "pow";
    case Op::AbsDiff: return "absdiff";
    case Op::Min: return "min";
    case Op::Binom: return "binom";
    case Op::Fact: return "fact";
    case Op::Gcd: return "gcd";
    case Op::Nu2: return "nu2";
    case Op::Hw: return "hw";
  }
  return "?";
}

Term t_const(Int v) {
  if (sgn(v) < 0) throw DomainError("terms range over nonnegative integers");
  return mk(Op::Const, std::move(v), {}, {});
}
Term t_const(long v) { return t_const(Int(v)); }
Term t_var(std::string name) { return mk(Op::Var, 0, std::move(name), {}); }
Term t_add(Term a, Term b) { return mk(Op::Add, 0, {}, {std::move(a), std::move(b)}); }
Term t_monus(Term a, Term b) { return mk(Op::Monus, 0, {}, {std::move(a), std::move(b)}); }
Term t_mul(Term a, Term b) { return mk(Op::Mul, 0, {}, {std::move(a), std::move(b)}); }
Term t_divfloor(Term a, Term b) { return mk(Op::DivFloor, 0, {}, {std::move(a), std::move(b)}); }
Term t_pow2(Term e) { return mk(Op::Pow2, 0, {}, {std::move(e)}); }
Term t_pow(Term base, Term exp) {
  if (base->op == Op::Const && base->value == 2) return t_pow2(std::move(exp));
  return mk(Op::Pow, 0, {}, {std::move(base), std::move(exp)});
}
Term t_mod(Term a, Term b) { return mk(Op::Mod, 0, {}, {std::move(a), std::move(b)}); }
Term t_absdiff(Term a, Term b) { return mk(Op::AbsDiff, 0, {}, {std::move(a), std::move(b)}); }
Term t_min(Term a, Term b) { return mk(Op::Min, 0, {}, {std::move(a), std::move(b)}); }
Term t_binom(Term a, Term b) { return mk(Op::Binom, 0, {}, {std::move(a), std::move(b)}); }
Term t_fact(Term a) { return mk(Op::Fact, 0, {}, {std::move(a)}); }
Term t_gcd(Term a, Term b) { return mk(Op::Gcd, 0, {}, {std::move(a), std::move(b)}); }
Term t_nu2(Term a) { return mk(Op::Nu2, 0, {}, {std::move(a)}); }
Term t_hw(Term a) { return mk(Op::Hw, 0, {}, {std::move(a)}); }

bool term_equal(const Term& a, const Term& b) {
  if (a.get() == b.get()) return true;
  if (a->op != b->op) return false;
  if (a->op == Op::Const) return a->value == b->value;
  if (a->op == Op::Var) return a->name == b->name;
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!term_equal(a->args[i], b->args[i])) return false;
  return true;
}

Int eval(const Term& t, const Env& env, const EvalOptions& o) {
  switch (t->op) {
    case Op::Const:
      return t->value;
    case Op::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) throw UnboundVariable("unbound variable '" + t->name + "'");
      if (sgn(it->second) < 0)
        throw DomainError("variable '" + t->name + "' bound to a negative value");
      return it->second;
    }
    case Op::Add:
      return eval(t->args[0], env, o) + eval(t->args[1], env, o);
    case Op::Monus:
      return monus(eval(t->args[0], env, o), eval(t->args[1], env, o));
    case Op::Mul: {
      Int a = eval(t->args[0], env, o), b = eval(t->args[1], env, o);
      need_bits(Int(bit_length(a)) + Int(bit_length(b)), o, "mul");
      return a * b;
    }
    case Op::DivFloor: {
      Int a = eval(t->args[0], env, o), b = eval(t->args[1], env, o);
      return fdiv_q(a, b);
    }
    case Op::Pow2: {
      Int e = eval(t->args[0], env, o);
      need_bits(e + 1, o, "pow2");
      return pow2_ui(to_ulong(e, "pow2 exponent"));
    }
    case Op::Mod: {
      Int a = eval(t->args[0], env, o), b = eval(t->args[1], env, o);
      return fdiv_r(a, b);
    }
    case Op::Pow: {
      Int a = eval(t->args[0], env, o), b = eval(t->args[1], env, o);
      if (sgn(b) == 0) return Int(1);  // includes 0^0 = 1
      if (a <= 1) return a;            // 0^b = 0, 1^b = 1
      need_bits(b * Int(bit_length(a)), o, "pow");
      return pow_ui(a, to_ulong(b, "pow exponent"));
    }
    case Op::AbsDiff: {
      Int a = eval(t->args[0], env, o), b = eval(t->args[1], env, o);
      return a >= b ? Int(a - b) : Int(b - a);
    }
    case Op::Min: {
      Int a = eval(t->args[0], env, o), b = eval(t->args[1], env, o);
      return a <= b ? a : b;
    }
    case Op::Binom: {
      Int a = eval(t->args[0], env, o), b = eval(t->args[1], env, o);
      if (b > a) return Int(0);
      // C(a,b) <= min(2^a, a^b)
      Int bound = b * Int(bit_length(a));
      if (a < bound) bound = a;
      need_bits(bound, o, "binom");
      Int r;
      mpz_bin_ui(r.get_mpz_t(), a.get_mpz_t(), to_ulong(b, "binom lower index"));
      return r;
    }
    case Op::Fact: {
      Int n = eval(t->args[0], env, o);
      need_bits(n * Int(bit_length(n)) + 1, o, "fact");
      Int r;
      mpz_fac_ui(r.get_mpz_t(), to_ulong(n, "factorial argument"));
      return r;
    }
    case Op::Gcd: {
      Int a = eval(t->args[0], env, o), b = eval(t->args[1], env, o);
      Int r;
      mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      return r;
    }
    case Op::Nu2:
      return Int(nu2(eval(t->args[0], env, o)));
    case Op::Hw:
      return Int(popcount(eval(t->args[0], env, o)));
  }
  throw InvariantViolation("unknown operator in eval");
}

namespace {
bool is_pure_rec(const TermNode* t, std::unordered_set<const TermNode*>& seen) {
  if (!seen.insert(t).second) return true;  // shared node already verified
  switch (t->op) {
    case Op::Const:
    case Op::Var:
      return true;
    case Op::Add:
    case Op::Monus:
    case Op::Mul:
    case Op::DivFloor:
    case Op::Pow2:
      for (const auto& a : t->args)
        if (!is_pure_rec(a.get(), seen)) return false;
      return true;
    default:
      return false;
  }
}
}  // namespace

bool is_pure(const Term& t) {
  // Terms share subtrees (the expansions below reuse operands repeatedly),
  // so traverse the DAG once per distinct node.
  std::unordered_set<const TermNode*> seen;
  return is_pure_rec(t.get(), seen);
}

namespace {
// Expansion results keyed by node identity.  Sharing the key Term keeps the
// node alive, so an address is never reused for a different node while the
// memo exists.  Without this, expanding a term that reuses operands (every
// case below does) walks the DAG as a tree and the output size explodes
// exponentially in the nesting depth.
using ExpandMemo = std::unordered_map<Term, Term>;

Term expand_rec(const Term& t, ExpandMemo& memo) {
  if (auto it = memo.find(t); it != memo.end()) return it->second;
  auto pure_mod = [](const Term& a, const Term& b) {
    // a mod b = a - b*floor(a/b)  (monus; equal for naturals)
    return t_monus(a, t_mul(b, t_divfloor(a, b)));
  };
  Term out;
  switch (t->op) {
    case Op::Const:
    case Op::Var:
      out = t;
      break;
    case Op::Add:
      out = t_add(expand_rec(t->args[0], memo), expand_rec(t->args[1], memo));
      break;
    case Op::Monus:
      out = t_monus(expand_rec(t->args[0], memo), expand_rec(t->args[1], memo));
      break;
    case Op::Mul:
      out = t_mul(expand_rec(t->args[0], memo), expand_rec(t->args[1], memo));
      break;
    case Op::DivFloor:
      out = t_divfloor(expand_rec(t->args[0], memo), expand_rec(t->args[1], memo));
      break;
    case Op::Pow2:
      out = t_pow2(expand_rec(t->args[0], memo));
      break;
    case Op::Mod:
      out = pure_mod(expand_rec(t->args[0], memo), expand_rec(t->args[1], memo));
      break;
    case Op::Pow: {
      Term a = expand_rec(t->args[0], memo), b = expand_rec(t->args[1], memo);
      if (a->op == Op::Const && a->value == 2) {
        out = t_pow2(b);
        break;
      }
      // a^b = 2^{(ab+a+1)b} mod (2^{ab+a+1} - a)   (Marchenkov)
      Term s = t_add(t_mul(a, b), t_add(a, t_const(1)));
      Term p = t_pow2(t_mul(s, b));
      Term d = t_monus(t_pow2(s), a);
      out = pure_mod(p, d);
      break;
    }
    case Op::AbsDiff: {
      Term a = expand_rec(t->args[0], memo), b = expand_rec(t->args[1], memo);
      out = t_add(t_monus(a, b), t_monus(b, a));
      break;
    }
    case Op::Min: {
      Term a = expand_rec(t->args[0], memo), b = expand_rec(t->args[1], memo);
      Term d = t_add(t_monus(a, b), t_monus(b, a));
      out = t_divfloor(t_monus(t_add(a, b), d), t_const(2));
      break;
    }
    case Op::Binom: {
      // C(a,b) = floor((2^a+1)^a / 2^{ab}) mod 2^a
      Term a = expand_rec(t->args[0], memo), b = expand_rec(t->args[1], memo);
      Term g = t_add(t_pow2(a), t_const(1));
      out = expand_rec(t_mod(t_divfloor(t_pow(g, a), t_pow2(t_mul(a, b))), t_pow2(a)),
                       memo);
      break;
    }
    case Op::Fact: {
      // n! = floor(r^n / C(r,n)) with r = 8^{n^2} = 2^{3n^2}
      Term n = expand_rec(t->args[0], memo);
      Term r = t_pow2(t_mul(t_const(3), t_mul(n, n)));
      out = expand_rec(t_divfloor(t_pow(r, n), t_binom(r, n)), memo);
      break;
    }
    case Op::Gcd: {
      // gcd(a,b) = (floor(5^{ab(ab+a+b)} / ((5^{a^2 b}-1)(5^{a b^2}-1))) mod 5^{ab}) - 1
      Term a = expand_rec(t->args[0], memo), b = expand_rec(t->args[1], memo);
      Term ab = t_mul(a, b);
      Term five = t_const(5);
      Term num = t_pow(five, t_mul(ab, t_add(ab, t_add(a, b))));
      Term den = t_mul(t_monus(t_pow(five, t_mul(t_mul(a, a), b)), t_const(1)),
                       t_monus(t_pow(five, t_mul(a, t_mul(b, b))), t_const(1)));
      out = expand_rec(
          t_monus(t_mod(t_divfloor(num, den), t_pow(five, ab)), t_const(1)), memo);
      break;
    }
    case Op::Nu2: {
      // nu2(n) = floor((gcd(n,2^n)^{n+1} mod (2^{n+1}-1)^2) / (2^{n+1}-1))
      Term n = expand_rec(t->args[0], memo);
      Term g = t_gcd(n, t_pow2(n));
      Term m = t_monus(t_pow2(t_add(n, t_const(1))), t_const(1));
      out = expand_rec(
          t_divfloor(t_mod(t_pow(g, t_add(n, t_const(1))), t_mul(m, m)), m), memo);
      break;
    }
    case Op::Hw: {
      // hw(n) = nu2(C(2n,n))  (Kummer: carries when adding n+n)
      Term n = expand_rec(t->args[0], memo);
      out = expand_rec(t_nu2(t_binom(t_mul(t_const(2), n), n)), memo);
      break;
    }
  }
  if (!out) throw InvariantViolation("unknown operator in expand_sugar");
  memo.emplace(t, out);
  return out;
}
}  // namespace

Term expand_sugar(const Term& t) {
  ExpandMemo memo;
  return expand_rec(t, memo);
}

namespace {
void metrics_rec(const Term& t, std::size_t depth, Metrics& m) {
  m.node_count++;
  m.depth = std::max(m.depth, depth);
  m.histogram[op_name(t->op)]++;
  for (const auto& a : t->args) metrics_rec(a, depth + 1, m);
}
}  // namespace

Metrics metrics(const Term& t) {
  Metrics m;
  metrics_rec(t, 1, m);
  return m;
}

// ---- JSON -------------------------------------------------------------------

nlohmann::json term_to_json(const Term& t) {
  using nlohmann::json;
  if (t->op == Op::Const) return json{{"const", t->value.get_str()}};
  if (t->op == Op::Var) return json{{"var", t->name}};
  json args = json::array();
  for (const auto& a : t->args) args.push_back(term_to_json(a));
  return json{{"op", op_name(t->op)}, {"args", std::move(args)}};
}

Term term_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("term JSON must be an object", 0, 0);
  if (j.contains("const")) {
    const auto& c = j.at("const");
    try {
      if (c.is_string()) return t_const(Int(c.get<std::string>()));
      if (c.is_number_unsigned()) return t_const(Int(c.get<std::uint64_t>()));
    } catch (const std::invalid_argument&) {
    }
    throw ParseError("invalid constant in term JSON", 0, 0);
  }
  if (j.contains("var")) {
    if (!j.at("var").is_string()) throw ParseError("invalid variable in term JSON", 0, 0);
    return t_var(j.at("var").get<std::string>());
  }
  if (!j.contains("op") || !j.contains("args"))
    throw ParseError("term JSON needs op/args or const or var", 0, 0);
  const std::string op = j.at("op").get<std::string>();
  const auto& ja = j.at("args");
  if (!ja.is_array()) throw ParseError("term args must be an array", 0, 0);
  std::vector<Term> args;
  for (const auto& a : ja) args.push_back(term_from_json(a));
  auto want = [&](std::size_t n) {
    if (args.size() != n)
      throw ParseError("operator '" + op + "' expects " + std::to_string(n) +
                           " argument(s)",
                       0, 0);
  };
  if (op == "add") { want(2); return t_add(args[0], args[1]); }
  if (op == "monus") { want(2); return t_monus(args[0], args[1]); }
  if (op == "mul") { want(2); return t_mul(args[0], args[1]); }
  if (op == "divfloor") { want(2); return t_divfloor(args[0], args[1]); }
  if (op == "pow2") { want(1); return t_pow2(args[0]); }
  if (op == "mod") { want(2); return t_mod(args[0], args[1]); }
  if (op == "pow") { want(2); return t_pow(args[0], args[1]); }
  if (op == "absdiff") { want(2); return t_absdiff(args[0], args[1]); }
  if (op == "min") { want(2); return t_min(args[0], args[1]); }
  if (op == "binom") { want(2); return t_binom(args[0], args[1]); }
  if (op == "fact") { want(1); return t_fact(args[0]); }
  if (op == "gcd") { want(2); return t_gcd(args[0], args[1]); }
  if (op == "nu2") { want(1); return t_nu2(args[0]); }
  if (op == "hw") { want(1); return t_hw(args[0]); }
  throw ParseError("unknown operator '" + op + "' in term JSON", 0, 0);
}

}  // namespace atl
