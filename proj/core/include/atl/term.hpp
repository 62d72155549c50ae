#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "atl/bigint.hpp"
#include "atl/options.hpp"

namespace atl {

// Arithmetic terms over N.  The base language is {+, monus, *, floor-div,
// 2^x} with constants and variables; everything else (mod, general powers,
// absdiff, min, binomials, factorials, gcd, nu2, hamming weight) is sugar
// that expands into the base language.
enum class Op {
  Const,
  Var,
  // base operators
  Add,
  Monus,
  Mul,
  DivFloor,
  Pow2,
  // sugar
  Mod,
  Pow,
  AbsDiff,
  Min,
  Binom,
  Fact,
  Gcd,
  Nu2,
  Hw,
};

const char* op_name(Op op);

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  Op op;
  Int value;               // Const only
  std::string name;        // Var only
  std::vector<Term> args;  // operator arguments
};

// ---- builders ------------------------------------------------------------
Term t_const(Int v);
Term t_const(long v);
Term t_var(std::string name);
Term t_add(Term a, Term b);
Term t_monus(Term a, Term b);
Term t_mul(Term a, Term b);
Term t_divfloor(Term a, Term b);
Term t_pow2(Term e);
// t_pow normalizes a constant base 2 to Pow2.
Term t_pow(Term base, Term exp);
Term t_mod(Term a, Term b);
Term t_absdiff(Term a, Term b);
Term t_min(Term a, Term b);
Term t_binom(Term a, Term b);
Term t_fact(Term a);
Term t_gcd(Term a, Term b);
Term t_nu2(Term a);
Term t_hw(Term a);

bool term_equal(const Term& a, const Term& b);

// ---- evaluation ----------------------------------------------------------
using Env = std::map<std::string, Int>;

// Evaluates over N.  Throws UnboundVariable, DivisionByZero, Nu2Zero,
// BudgetExceeded.  All operators are total on N otherwise (monus clamps).
Int eval(const Term& t, const Env& env, const EvalOptions& opts = {});

// ---- sugar expansion -----------------------------------------------------
// Rewrites every sugared operator into the base language.  The result
// contains only Const/Var/Add/Monus/Mul/DivFloor/Pow2 and has size
// independent of any variable's future value.
Term expand_sugar(const Term& t);

// True iff t contains only base-language operators.
bool is_pure(const Term& t);

// ---- metrics ---------------------------------------------------------------
struct Metrics {
  std::size_t node_count = 0;
  std::size_t depth = 0;
  std::map<std::string, std::size_t> histogram;  // op name -> count
};
Metrics metrics(const Term& t);

// ---- text syntax -----------------------------------------------------------
// Grammar (lowest to highest precedence):
//   sum  := prod (("+" | "-") prod)*        "-" is monus
//   prod := pow (("*" | "/" | "%") pow)*    "/" is floor division
//   pow  := atom ("^" pow)?                 right associative
//   atom := NAT | IDENT | IDENT "(" expr ("," expr)* ")" | "(" expr ")"
// Functions: min, absdiff, binom, fact, gcd, nu2, hw, mod.
// "2^e" parses to Pow2(e); any other base parses to Pow.
Term parse(const std::string& text);
std::string render(const Term& t);

// ---- JSON ------------------------------------------------------------------
// {"op":"add","args":[...]} | {"const":"<decimal>"} | {"var":"<name>"}
nlohmann::json term_to_json(const Term& t);
Term term_from_json(const nlohmann::json& j);

}  // namespace atl
