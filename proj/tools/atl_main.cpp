// Command-line front end: evaluation, generation, counting, witness and
// system export, and the verification suite.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "atl/counters.hpp"
#include "atl/errors.hpp"
#include "atl/exp_poly.hpp"
#include "atl/generators.hpp"
#include "atl/mazzanti.hpp"
#include "atl/oracles.hpp"
#include "atl/sequences.hpp"
#include "atl/term.hpp"
#include "atl/verify.hpp"

namespace {

using atl::EvalOptions;
using atl::Int;
using json = nlohmann::ordered_json;

struct Global {
  EvalOptions opts;
  bool full = false;
};

// All numbers print in decimal; anything beyond 10^4 digits is folded to a
// digit count with head and tail unless --full asks for everything.
std::string show_number(const Int& x, bool full) {
  std::string s = atl::dec(x);
  if (full || s.size() <= 10000) return s;
  return "<" + std::to_string(s.size()) + " digits: " + s.substr(0, 12) + "..." +
         s.substr(s.size() - 12) + ">";
}

atl::Env parse_bindings(const std::vector<std::string>& binds) {
  atl::Env env;
  for (const std::string& b : binds) {
    auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0)
      throw atl::DomainError("binding '" + b + "' is not of the form name=value");
    env[b.substr(0, eq)] = Int(b.substr(eq + 1));
  }
  return env;
}

json read_json_input(const std::string& path) {
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw atl::DomainError("cannot open " + path);
    return json::parse(in);
  }
  return json::parse(std::cin);
}

std::string poly_text(const atl::ExpPolynomial& p) {
  if (p.ms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < p.ms.size(); ++i) {
    const auto& m = p.ms[i];
    Int c = m.c;
    if (i == 0) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    Int a = abs(c);
    std::string fac;
    for (std::size_t j = 0; j < m.f.size() && j < p.names.size(); ++j) {
      const auto& f = m.f[j];
      const std::string& v = p.names[j];
      if (f.v != 1) {
        if (!fac.empty()) fac += "*";
        fac += atl::dec(f.v) + "^" + v;
      }
      if (f.r > 0) {
        if (!fac.empty()) fac += "*";
        fac += v;
        if (f.r > 1) fac += "^" + std::to_string(f.r);
      }
    }
    if (fac.empty()) {
      out += atl::dec(a);
    } else {
      if (a != 1) out += atl::dec(a) + "*";
      out += fac;
    }
  }
  return out;
}

atl::Family family_of(const std::string& name) {
  if (name == "mersenne") return atl::Family::MERSENNE;
  if (name == "fermat") return atl::Family::FERMAT;
  if (name == "twin") return atl::Family::TWIN;
  return atl::Family::SOPHIE;
}

atl::FactorialScheme scheme_of(const std::string& name) {
  return name == "pow8sq" ? atl::FactorialScheme::POW8SQ : atl::FactorialScheme::MINIMAL;
}

// ---- subcommand bodies ----------------------------------------------------

int run_eval(const Global& g, const std::string& expr, const std::vector<std::string>& binds) {
  atl::Term t = atl::parse(expr);
  std::cout << show_number(atl::eval(t, parse_bindings(binds), g.opts), g.full) << "\n";
  return 0;
}

int run_parse(const std::string& expr) {
  std::cout << atl::term_to_json(atl::parse(expr)).dump(2) << "\n";
  return 0;
}

int run_gen(const Global& g, const std::string& family, std::uint64_t n_max, int variant,
            const std::string& mode) {
  const bool term_mode = mode == "term";
  atl::Term t;
  if (term_mode) {
    if (family == "mersenne") t = atl::mersenne_gen_term(variant);
    else if (family == "fermat") t = atl::fermat_gen_term(variant);
    else if (family == "twin") t = atl::twin_gen_term();
    else t = atl::sophie_gen_term();
  }
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    if (family == "twin") {
      std::uint64_t p;
      if (term_mode)
        p = atl::to_ulong(atl::eval(t, atl::Env{{"n", Int(n)}}, g.opts), "twin value");
      else
        p = atl::twin_gen(n).first;
      std::cout << n << "\t" << p << "\t" << p + 2 << "\n";
      continue;
    }
    std::string v;
    if (term_mode) {
      v = show_number(atl::eval(t, atl::Env{{"n", Int(n)}}, g.opts), g.full);
    } else if (family == "mersenne") {
      v = std::to_string(atl::mersenne_gen(n, variant));
    } else if (family == "fermat") {
      v = std::to_string(atl::fermat_gen(n, variant));
    } else {
      v = std::to_string(atl::sophie_gen(n));
    }
    std::cout << n << "\t" << v << "\n";
  }
  return 0;
}

int run_count(const Global& g, const std::string& family, std::uint64_t n,
              const std::string& mode, const std::string& scheme) {
  if (mode == "oracle") {
    Int c;
    if (family == "mersenne") c = atl::mersenne_count_oracle(n);
    else if (family == "fermat") c = atl::fermat_count_oracle(n);
    else if (family == "twin") c = atl::twin_count_oracle(n);
    else c = atl::sg_count_oracle(n);
    std::cout << atl::dec(c) << "\n";
    return 0;
  }
  atl::CountResult r =
      atl::count_via_term(family_of(family), Int(n), g.opts, scheme_of(scheme));
  std::cout << r.report.dump(2) << "\n";
  return 0;
}

int run_witness(const Global& g, const std::string& family, std::uint64_t k,
                std::optional<std::int64_t> n_opt, const std::string& scheme) {
  Int n = n_opt ? Int(*n_opt)
                : (family == "twin" ? Int((long)k + 2) : Int((long)k));
  std::optional<atl::PartialWitness> w;
  if (family == "mersenne") w = atl::mersenne_witness((unsigned)k, n, g.opts);
  else if (family == "fermat") w = atl::fermat_witness(k, n, g.opts);
  else w = atl::twin_witness((unsigned)k, n, scheme_of(scheme), g.opts);
  json out;
  out["family"] = family;
  out["k"] = k;
  out["n"] = atl::dec(n);
  if (family == "twin") out["scheme"] = scheme;
  if (!w) {
    out["witness"] = nullptr;
  } else {
    json values = json::object();
    for (const auto& [name, val] : w->values) values[name] = show_number(val, g.full);
    out["witness"] = {{"complete", w->complete()},
                      {"values", std::move(values)},
                      {"absent", w->absent}};
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_system(const std::string& family, const std::string& emit, const std::string& scheme) {
  atl::CountingSpec spec = family == "mersenne" ? atl::build_mersenne_system()
                           : family == "fermat" ? atl::build_fermat_system()
                                                : atl::build_twin_system(scheme_of(scheme));
  if (emit == "json") {
    json out;
    out["family"] = spec.family;
    out["system"] = atl::system_to_json(spec.system);
    out["t_term"] = atl::render(spec.t_of_n);
    out["w_term"] = atl::render(spec.w_of_n);
    out["offset"] = spec.offset;
    out["count_expression"] = "hw(M)/w - t^" + std::to_string(spec.system.unknowns.size()) +
                              (spec.offset > 0 ? " + " + std::to_string(spec.offset)
                               : spec.offset < 0 ? " - " + std::to_string(-spec.offset)
                                                 : "");
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "family: " << spec.family << "\n";
  std::cout << "unknowns (" << spec.system.unknowns.size() << "):";
  for (const auto& u : spec.system.unknowns) std::cout << " " << u;
  std::cout << "\nparameter: " << spec.system.param.value_or("-") << "\n";
  std::cout << "t(n) = " << atl::render(spec.t_of_n) << "\n";
  std::cout << "w(n) = " << atl::render(spec.w_of_n) << "\n";
  std::cout << "count = hw(M)/w - t^" << spec.system.unknowns.size();
  if (spec.offset > 0) std::cout << " + " << spec.offset;
  if (spec.offset < 0) std::cout << " - " << -spec.offset;
  std::cout << "\nsquares (" << spec.system.squares.size() << "):\n";
  const std::vector<std::string> names = spec.system.all_names();
  for (std::size_t i = 0; i < spec.system.squares.size(); ++i) {
    const auto& sq = spec.system.squares[i];
    std::cout << "  [" << i << "]  (" << poly_text({names, sq.l}) << ")  =  ("
              << poly_text({names, sq.r}) << ")\n";
  }
  return 0;
}

int run_mazzanti_count(const Global& g, const std::string& path) {
  atl::CountingInstance inst = atl::instance_from_json(read_json_input(path));
  std::cout << atl::dec(atl::count_solutions(inst, g.opts)) << "\n";
  return 0;
}

int run_crec(const Global&, const std::string& path, const std::string& emit) {
  atl::CRecSpec spec = atl::crec_from_json(read_json_input(path));
  atl::Term t = atl::extract_divmod_term(spec);
  if (emit == "json")
    std::cout << atl::term_to_json(t).dump(2) << "\n";
  else
    std::cout << atl::render(t) << "\n";
  return 0;
}

int run_verify(const Global& g, const std::string& selector) {
  std::vector<atl::CheckResult> results = atl::verify_suite(selector, g.opts);
  json checks = json::array();
  std::size_t passed = 0;
  double total = 0.0;
  for (const auto& r : results) {
    json c;
    c["name"] = r.name;
    c["criterion"] = r.criterion;
    c["criterion_title"] = atl::criterion_title(r.criterion);
    c["status"] = r.pass ? "pass" : "fail";
    c["tolerance"] = "exact";
    if (!r.pass) c["detail"] = r.detail;
    checks.push_back(std::move(c));
    if (r.pass) ++passed;
    total += r.seconds;
    // timing is inherently nondeterministic, so it goes to stderr only
    std::cerr << "# " << r.name << ": " << (r.pass ? "pass" : "FAIL") << " ("
              << r.seconds << "s)\n";
  }
  json out;
  out["selector"] = selector;
  out["checks"] = std::move(checks);
  out["passed"] = passed;
  out["failed"] = results.size() - passed;
  std::cout << out.dump(2) << "\n";
  std::cerr << "# total: " << total << "s\n";
  return passed == results.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arithmetic-term closed forms for prime generation and counting"};
  app.require_subcommand(1);

  Global g;
  if (const char* e = std::getenv("ATL_BIT_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(e, &end, 10);
    if (end && *end == '\0' && v > 0)
      g.opts.bit_budget = v;
    else
      std::cerr << "warning: ignoring unparsable ATL_BIT_BUDGET='" << e << "'\n";
  }
  app.add_option("--bit-budget", g.opts.bit_budget,
                 "largest integer size (bits) any evaluation may materialize")
      ->capture_default_str();
  app.add_option("--point-budget", g.opts.point_budget,
                 "largest number of grid points an enumeration may visit")
      ->capture_default_str();
  app.add_flag("--full", g.full, "print huge numbers in full instead of head/tail");

  // eval
  std::string expr;
  std::vector<std::string> binds;
  CLI::App* c_eval = app.add_subcommand("eval", "evaluate a term expression");
  c_eval->add_option("--expr", expr, "term expression, e.g. \"2^n - 1\"")->required();
  c_eval->add_option("--bind", binds, "variable binding name=value (repeatable)");

  // parse
  std::string pexpr;
  CLI::App* c_parse = app.add_subcommand("parse", "parse a term and echo its JSON AST");
  c_parse->add_option("--expr", pexpr, "term expression")->required();

  // gen
  std::string gen_family, gen_mode = "semantic";
  std::uint64_t gen_nmax = 0;
  int gen_variant = 1;
  CLI::App* c_gen = app.add_subcommand("gen", "emit generator values as TSV n<TAB>value");
  c_gen->add_option("family", gen_family, "prime family")
      ->required()
      ->check(CLI::IsMember({"mersenne", "fermat", "twin", "sophie"}));
  c_gen->add_option("--n-max", gen_nmax, "largest n (inclusive)")->required();
  c_gen->add_option("--variant", gen_variant, "generator form (1 or 2)")
      ->check(CLI::IsMember({1, 2}));
  c_gen->add_option("--mode", gen_mode, "semantic evaluation or literal term evaluation")
      ->check(CLI::IsMember({"semantic", "term"}));

  // count
  std::string cnt_family, cnt_mode = "oracle", cnt_scheme = "minimal";
  std::uint64_t cnt_n = 0;
  CLI::App* c_count = app.add_subcommand("count", "count primes of a family up to n");
  c_count->add_option("family", cnt_family, "prime family")
      ->required()
      ->check(CLI::IsMember({"mersenne", "fermat", "twin", "sophie"}));
  c_count->add_option("--n", cnt_n, "upper index / bound")->required();
  c_count->add_option("--mode", cnt_mode, "oracle count or closed-form term report")
      ->check(CLI::IsMember({"oracle", "term"}));
  c_count->add_option("--scheme", cnt_scheme, "factorial device for the twin system")
      ->check(CLI::IsMember({"minimal", "pow8sq"}));

  // witness
  std::string wit_family, wit_scheme = "minimal";
  std::uint64_t wit_k = 0;
  std::optional<std::int64_t> wit_n;
  CLI::App* c_wit = app.add_subcommand("witness", "emit the witness JSON for an index k");
  c_wit->add_option("family", wit_family, "counting system family")
      ->required()
      ->check(CLI::IsMember({"mersenne", "fermat", "twin"}));
  c_wit->add_option("--k", wit_k, "leading index")->required();
  c_wit->add_option("--n", wit_n, "parameter n (defaults to the smallest admissible)");
  c_wit->add_option("--scheme", wit_scheme, "factorial device for the twin system")
      ->check(CLI::IsMember({"minimal", "pow8sq"}));

  // system
  std::string sys_family, sys_emit = "json", sys_scheme = "minimal";
  CLI::App* c_sys = app.add_subcommand("system", "emit a counting square system");
  c_sys->add_option("family", sys_family, "counting system family")
      ->required()
      ->check(CLI::IsMember({"mersenne", "fermat", "twin"}));
  c_sys->add_option("--emit", sys_emit, "output form")
      ->check(CLI::IsMember({"json", "text"}));
  c_sys->add_option("--scheme", sys_scheme, "factorial device for the twin system")
      ->check(CLI::IsMember({"minimal", "pow8sq"}));

  // mazzanti-count
  std::string mc_file;
  CLI::App* c_mc = app.add_subcommand(
      "mazzanti-count", "count zeros of a counting instance (JSON from stdin or --file)");
  c_mc->add_option("--file", mc_file, "path to CountingInstance JSON (default: stdin)");

  // crec
  std::string crec_file, crec_emit = "text";
  CLI::App* c_crec = app.add_subcommand(
      "crec", "turn a C-recursive sequence spec (JSON) into a closed-form term");
  c_crec->add_option("--file", crec_file, "path to the spec JSON (default: stdin)");
  c_crec->add_option("--emit", crec_emit, "output form")
      ->check(CLI::IsMember({"text", "json"}));

  // verify
  std::string selector = "all";
  CLI::App* c_ver = app.add_subcommand("verify", "run the verification suite");
  c_ver->add_option("selector", selector, "check group")
      ->check(CLI::IsMember({"all", "terms", "sequences", "generators", "mazzanti",
                             "counters"}));

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(c_eval)) return run_eval(g, expr, binds);
    if (app.got_subcommand(c_parse)) return run_parse(pexpr);
    if (app.got_subcommand(c_gen)) return run_gen(g, gen_family, gen_nmax, gen_variant, gen_mode);
    if (app.got_subcommand(c_count)) return run_count(g, cnt_family, cnt_n, cnt_mode, cnt_scheme);
    if (app.got_subcommand(c_wit)) return run_witness(g, wit_family, wit_k, wit_n, wit_scheme);
    if (app.got_subcommand(c_sys)) return run_system(sys_family, sys_emit, sys_scheme);
    if (app.got_subcommand(c_mc)) return run_mazzanti_count(g, mc_file);
    if (app.got_subcommand(c_crec)) return run_crec(g, crec_file, crec_emit);
    if (app.got_subcommand(c_ver)) return run_verify(g, selector);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors are exit 2; --help is success
  } catch (const atl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const atl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
