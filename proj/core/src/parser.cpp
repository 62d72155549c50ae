#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "atl/term.hpp"

namespace atl {

namespace {

enum class Tok { Nat, Ident, Plus, Minus, Star, Slash, Percent, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, col;
};

struct Lexer {
  const std::string& src;
  std::size_t pos = 0, line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg, std::size_t l, std::size_t c) {
    throw ParseError(msg, l, c);
  }

  void advance() {
    if (src[pos] == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
    pos++;
  }

  Token next() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) advance();
    if (pos >= src.size()) return {Tok::End, "", line, col};
    const std::size_t l = line, c = col;
    const char ch = src[pos];
    auto one = [&](Tok k) {
      advance();
      return Token{k, std::string(1, ch), l, c};
    };
    switch (ch) {
      case '+': return one(Tok::Plus);
      case '-': return one(Tok::Minus);
      case '*': return one(Tok::Star);
      case '/': return one(Tok::Slash);
      case '%': return one(Tok::Percent);
      case '^': return one(Tok::Caret);
      case '(': return one(Tok::LParen);
      case ')': return one(Tok::RParen);
      case ',': return one(Tok::Comma);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string digits;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        digits += src[pos];
        advance();
      }
      return {Tok::Nat, digits, l, c};
    }
    if (ch >= 'a' && ch <= 'z') {
      std::string name;
      while (pos < src.size() &&
             ((src[pos] >= 'a' && src[pos] <= 'z') ||
              std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
        name += src[pos];
        advance();
      }
      return {Tok::Ident, name, l, c};
    }
    fail(std::string("unexpected character '") + ch + "'", l, c);
  }
};

struct Parser {
  std::vector<Token> toks;
  std::size_t i = 0;

  explicit Parser(const std::string& s) {
    Lexer lx(s);
    for (;;) {
      Token t = lx.next();
      toks.push_back(t);
      if (t.kind == Tok::End) break;
    }
  }

  const Token& peek() const { return toks[i]; }
  Token take() { return toks[i++]; }

  [[noreturn]] void fail(const std::string& msg) {
    const Token& t = peek();
    throw ParseError(msg, t.line, t.col);
  }

  Term expr() { return sum(); }

  Term sum() {
    Term t = prod();
    for (;;) {
      if (peek().kind == Tok::Plus) {
        take();
        t = t_add(t, prod());
      } else if (peek().kind == Tok::Minus) {
        take();
        t = t_monus(t, prod());
      } else {
        return t;
      }
    }
  }

  Term prod() {
    Term t = powr();
    for (;;) {
      if (peek().kind == Tok::Star) {
        take();
        t = t_mul(t, powr());
      } else if (peek().kind == Tok::Slash) {
        take();
        t = t_divfloor(t, powr());
      } else if (peek().kind == Tok::Percent) {
        take();
        t = t_mod(t, powr());
      } else {
        return t;
      }
    }
  }

  Term powr() {
    Term base = atom();
    if (peek().kind == Tok::Caret) {
      take();
      return t_pow(base, powr());  // right associative; 2^e becomes Pow2
    }
    return base;
  }

  Term atom() {
    const Token t = peek();
    if (t.kind == Tok::Nat) {
      take();
      return t_const(Int(t.text));
    }
    if (t.kind == Tok::LParen) {
      take();
      Term inner = expr();
      if (peek().kind != Tok::RParen) fail("expected ')'");
      take();
      return inner;
    }
    if (t.kind == Tok::Ident) {
      take();
      if (peek().kind != Tok::LParen) return t_var(t.text);
      take();  // '('
      std::vector<Term> args;
      if (peek().kind != Tok::RParen) {
        args.push_back(expr());
        while (peek().kind == Tok::Comma) {
          take();
          args.push_back(expr());
        }
      }
      if (peek().kind != Tok::RParen) fail("expected ')' after arguments");
      take();
      return call(t, args);
    }
    fail("expected a number, a variable, a function call, or '('");
  }

  Term call(const Token& name, const std::vector<Term>& args) {
    auto want = [&](std::size_t n) {
      if (args.size() != n)
        throw ParseError("function '" + name.text + "' expects " + std::to_string(n) +
                             " argument(s), got " + std::to_string(args.size()),
                         name.line, name.col);
    };
    const std::string& f = name.text;
    if (f == "min") { want(2); return t_min(args[0], args[1]); }
    if (f == "absdiff") { want(2); return t_absdiff(args[0], args[1]); }
    if (f == "binom") { want(2); return t_binom(args[0], args[1]); }
    if (f == "fact") { want(1); return t_fact(args[0]); }
    if (f == "gcd") { want(2); return t_gcd(args[0], args[1]); }
    if (f == "nu2") { want(1); return t_nu2(args[0]); }
    if (f == "hw") { want(1); return t_hw(args[0]); }
    if (f == "mod") { want(2); return t_mod(args[0], args[1]); }
    throw ParseError("unknown function '" + f + "'", name.line, name.col);
  }
};

int prec_of(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Monus:
      return 1;
    case Op::Mul:
    case Op::DivFloor:
    case Op::Mod:
      return 2;
    case Op::Pow:
    case Op::Pow2:
      return 3;
    default:
      return 4;  // atoms and function calls
  }
}

void render_rec(const Term& t, int min_prec, std::string& out) {
  const int p = prec_of(t->op);
  const bool parens = p < min_prec;
  if (parens) out += '(';
  switch (t->op) {
    case Op::Const:
      out += t->value.get_str();
      break;
    case Op::Var:
      out += t->name;
      break;
    case Op::Add:
    case Op::Monus:
    case Op::Mul:
    case Op::DivFloor:
    case Op::Mod: {
      const char* sym = t->op == Op::Add        ? " + "
                        : t->op == Op::Monus    ? " - "
                        : t->op == Op::Mul      ? " * "
                        : t->op == Op::DivFloor ? " / "
                                                : " % ";
      render_rec(t->args[0], p, out);
      out += sym;
      render_rec(t->args[1], p + 1, out);
      break;
    }
    case Op::Pow:
      render_rec(t->args[0], p + 1, out);
      out += '^';
      render_rec(t->args[1], p, out);
      break;
    case Op::Pow2:
      out += "2^";
      render_rec(t->args[0], 4, out);
      break;
    default: {
      const char* fname = op_name(t->op);
      out += fname;
      out += '(';
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) out += ", ";
        render_rec(t->args[i], 1, out);
      }
      out += ')';
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

Term parse(const std::string& text) {
  Parser p(text);
  Term t = p.expr();
  if (p.peek().kind != Tok::End) p.fail("unexpected trailing input");
  return t;
}

std::string render(const Term& t) {
  std::string out;
  render_rec(t, 1, out);
  return out;
}

}  // namespace atl
