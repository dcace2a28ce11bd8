#include "bcs/expr.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>

namespace bcs {

bool box_is_empty(const Box& b) {
  for (const Interval& v : b)
    if (v.is_empty()) return true;
  return false;
}

bool is_unary(ExprKind k) {
  return k == ExprKind::Neg || k == ExprKind::Exp || k == ExprKind::Cos ||
         k == ExprKind::Sqrt;
}

bool is_binary(ExprKind k) {
  return k == ExprKind::Add || k == ExprKind::Sub || k == ExprKind::Mul ||
         k == ExprKind::Div;
}

ExprPtr Expr::make_var(std::string name, int index) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Var;
  e->name = std::move(name);
  e->var = index;
  return e;
}

ExprPtr Expr::make_const(Interval v, std::string literal) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Const;
  e->value = v;
  e->literal = std::move(literal);
  return e;
}

ExprPtr Expr::make_unary(ExprKind k, ExprPtr child) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(child);
  return e;
}

ExprPtr Expr::make_binary(ExprKind k, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(lhs);
  e->b = std::move(rhs);
  return e;
}

ExprPtr Expr::make_pow(ExprPtr child, int n) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Pow;
  e->a = std::move(child);
  e->exponent = n;
  return e;
}

int Problem::var_index(const std::string& name) const {
  for (size_t i = 0; i < variables.size(); ++i)
    if (variables[i] == name) return static_cast<int>(i);
  return -1;
}

ParseError::ParseError(const std::string& msg, int line, int col)
    : std::runtime_error("line " + std::to_string(line) + ", col " +
                         std::to_string(col) + ": " + msg),
      line(line),
      col(col) {}

Interval parse_literal(const std::string& text) {
  mpfr_t t;
  mpfr_init2(t, 53);
  double lo = 0, hi = 0;
  bool ok = mpfr_set_str(t, text.c_str(), 10, MPFR_RNDD) == 0;
  if (ok) {
    lo = mpfr_get_d(t, MPFR_RNDD);
    mpfr_set_str(t, text.c_str(), 10, MPFR_RNDU);
    hi = mpfr_get_d(t, MPFR_RNDU);
  }
  mpfr_clear(t);
  if (!ok) throw std::invalid_argument("malformed numeric literal: " + text);
  return Interval(lo, hi);
}

namespace {

struct Token {
  enum Kind { Ident, Number, Punct, End } kind;
  std::string text;
  int line, col;
};

bool is_reserved(const std::string& s) {
  return s == "var" || s == "in" || s == "exp" || s == "cos" || s == "sqrt";
}

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    int tl = line, tc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      out.push_back({Token::Ident, text.substr(i, j - i), tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && text[j] == '.') {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
          j = k;
          while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        }
      }
      out.push_back({Token::Number, text.substr(i, j - i), tl, tc});
      advance(j - i);
      continue;
    }
    if (std::strchr("+-*/^()[],;=", c)) {
      out.push_back({Token::Punct, std::string(1, c), tl, tc});
      advance(1);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  Problem run() {
    while (!at_end()) {
      if (peek().kind == Token::Ident && peek().text == "var")
        decl();
      else
        constraint();
    }
    if (prob_.constraints.empty() && prob_.variables.empty())
      throw ParseError("empty input", 1, 1);
    return std::move(prob_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& get() { return toks_[pos_++]; }
  bool at_end() const { return peek().kind == Token::End; }

  [[noreturn]] void fail(const std::string& msg, const Token& t) const {
    throw ParseError(msg, t.line, t.col);
  }

  void expect_punct(char c) {
    const Token& t = get();
    if (t.kind != Token::Punct || t.text[0] != c)
      fail(std::string("expected '") + c + "'", t);
  }

  bool accept_punct(char c) {
    if (peek().kind == Token::Punct && peek().text[0] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double bound(bool upper) {
    std::string sign;
    if (accept_punct('-'))
      sign = "-";
    else
      accept_punct('+');
    const Token& t = get();
    if (t.kind != Token::Number) fail("expected a number", t);
    Interval v = parse_literal(sign + t.text);
    return upper ? v.hi() : v.lo();
  }

  void decl() {
    get();  // "var"
    const Token& name = get();
    if (name.kind != Token::Ident || is_reserved(name.text))
      fail("expected a variable name", name);
    if (prob_.var_index(name.text) >= 0)
      fail("duplicate variable '" + name.text + "'", name);
    const Token& kw = get();
    if (kw.kind != Token::Ident || kw.text != "in") fail("expected 'in'", kw);
    expect_punct('[');
    double lo = bound(false);
    expect_punct(',');
    double hi = bound(true);
    const Token& close = peek();
    expect_punct(']');
    expect_punct(';');
    if (!(lo <= hi)) fail("domain bounds are reversed", close);
    prob_.variables.push_back(name.text);
    prob_.domains.push_back(Interval(lo, hi));
  }

  void constraint() {
    const Token& start = peek();
    ExprPtr lhs = expr();
    const Token& rel = get();
    if (rel.kind != Token::Punct || rel.text[0] != '=')
      fail("expected '=' (only equality constraints are supported)", rel);
    ExprPtr rhs = expr();
    expect_punct(';');
    Constraint c;
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    std::set<int> scope;
    collect_scope(*c.lhs, scope);
    collect_scope(*c.rhs, scope);
    if (scope.empty()) fail("constraint has no variables", start);
    c.scope.assign(scope.begin(), scope.end());
    prob_.constraints.push_back(std::move(c));
  }

  static void collect_scope(const Expr& e, std::set<int>& out) {
    if (e.kind == ExprKind::Var) out.insert(e.var);
    if (e.a) collect_scope(*e.a, out);
    if (e.b) collect_scope(*e.b, out);
  }

  ExprPtr expr() {
    ExprPtr left = term();
    while (peek().kind == Token::Punct &&
           (peek().text[0] == '+' || peek().text[0] == '-')) {
      char op = get().text[0];
      left = Expr::make_binary(op == '+' ? ExprKind::Add : ExprKind::Sub,
                               std::move(left), term());
    }
    return left;
  }

  ExprPtr term() {
    ExprPtr left = factor();
    while (peek().kind == Token::Punct &&
           (peek().text[0] == '*' || peek().text[0] == '/')) {
      char op = get().text[0];
      left = Expr::make_binary(op == '*' ? ExprKind::Mul : ExprKind::Div,
                               std::move(left), factor());
    }
    return left;
  }

  ExprPtr factor() {
    ExprPtr base = atom();
    if (accept_punct('^')) {
      const Token& t = get();
      if (t.kind != Token::Number ||
          t.text.find_first_of(".eE") != std::string::npos)
        fail("exponent must be a plain nonnegative integer", t);
      errno = 0;
      long n = std::strtol(t.text.c_str(), nullptr, 10);
      if (errno != 0 || n > 1000000) fail("exponent out of range", t);
      if (n == 0) return Expr::make_const(Interval(1.0, 1.0), "1");
      if (n == 1) return base;
      return Expr::make_pow(std::move(base), static_cast<int>(n));
    }
    return base;
  }

  ExprPtr atom() {
    const Token& t = get();
    if (t.kind == Token::Number)
      return Expr::make_const(parse_literal(t.text), t.text);
    if (t.kind == Token::Punct && t.text[0] == '-') {
      ExprPtr f = factor();
      if (f->kind == ExprKind::Const) {
        // fold the sign into the literal: -3.84 is one constant node
        std::string lit = f->literal.substr(0, 1) == "-" ? f->literal.substr(1)
                                                         : "-" + f->literal;
        return Expr::make_const(neg(f->value), lit);
      }
      return Expr::make_unary(ExprKind::Neg, std::move(f));
    }
    if (t.kind == Token::Punct && t.text[0] == '(') {
      ExprPtr e = expr();
      expect_punct(')');
      return e;
    }
    if (t.kind == Token::Ident) {
      if (t.text == "exp" || t.text == "cos" || t.text == "sqrt") {
        expect_punct('(');
        ExprPtr arg = expr();
        expect_punct(')');
        ExprKind k = t.text == "exp"   ? ExprKind::Exp
                     : t.text == "cos" ? ExprKind::Cos
                                       : ExprKind::Sqrt;
        return Expr::make_unary(k, std::move(arg));
      }
      if (is_reserved(t.text)) fail("'" + t.text + "' is a reserved word", t);
      int idx = prob_.var_index(t.text);
      if (idx < 0) fail("undeclared variable '" + t.text + "'", t);
      return Expr::make_var(t.text, idx);
    }
    fail("expected an expression", t);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  Problem prob_;
};

}  // namespace

Problem parse_problem(const std::string& text) { return Parser(text).run(); }

namespace {

// Syntactic contexts, loosest to tightest. A child printed in a context
// tighter than its own production gets parentheses.
enum Ctx { kExpr = 0, kTerm = 1, kFactor = 2, kAtom = 3 };

std::string point_literal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print(const Expr& e, Ctx ctx, std::string& out) {
  switch (e.kind) {
    case ExprKind::Var:
      out += e.name;
      return;
    case ExprKind::Const: {
      std::string text;
      if (!e.literal.empty())
        text = e.literal;
      else if (e.value.is_point())
        text = point_literal(e.value.lo());
      else
        text = to_string(e.value);  // folded enclosure; diagnostic only
      // a signed constant under '^' must not reparse as -(c^n)
      bool paren = ctx >= kAtom && text[0] == '-';
      out += paren ? "(" + text + ")" : text;
      return;
    }
    case ExprKind::Neg: {
      bool paren = ctx >= kAtom;
      if (paren) out += '(';
      out += '-';
      print(*e.a, kFactor, out);
      if (paren) out += ')';
      return;
    }
    case ExprKind::Exp:
    case ExprKind::Cos:
    case ExprKind::Sqrt:
      out += e.kind == ExprKind::Exp ? "exp" : e.kind == ExprKind::Cos ? "cos" : "sqrt";
      out += '(';
      print(*e.a, kExpr, out);
      out += ')';
      return;
    case ExprKind::Pow: {
      bool paren = ctx >= kAtom;
      if (paren) out += '(';
      print(*e.a, kAtom, out);
      out += '^';
      out += std::to_string(e.exponent);
      if (paren) out += ')';
      return;
    }
    case ExprKind::Add:
    case ExprKind::Sub: {
      bool paren = ctx > kExpr;
      if (paren) out += '(';
      print(*e.a, kExpr, out);
      out += e.kind == ExprKind::Add ? " + " : " - ";
      print(*e.b, kTerm, out);
      if (paren) out += ')';
      return;
    }
    case ExprKind::Mul:
    case ExprKind::Div: {
      bool paren = ctx > kTerm;
      if (paren) out += '(';
      print(*e.a, kTerm, out);
      out += e.kind == ExprKind::Mul ? "*" : "/";
      print(*e.b, kFactor, out);
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, kExpr, out);
  return out;
}

std::string to_string(const Constraint& c) {
  return to_string(*c.lhs) + " = " + to_string(*c.rhs) + ";";
}

std::string to_string(const Problem& p) {
  std::string out;
  for (size_t i = 0; i < p.variables.size(); ++i) {
    out += "var " + p.variables[i] + " in [" + point_literal(p.domains[i].lo()) +
           "," + point_literal(p.domains[i].hi()) + "];\n";
  }
  for (const Constraint& c : p.constraints) out += to_string(c) + "\n";
  return out;
}

Interval evaluate(const Expr& e, const Box& d) {
  switch (e.kind) {
    case ExprKind::Var:
      return d.at(static_cast<size_t>(e.var));
    case ExprKind::Const:
      return e.value;
    case ExprKind::Neg:
      return neg(evaluate(*e.a, d));
    case ExprKind::Exp:
      return exp(evaluate(*e.a, d));
    case ExprKind::Cos:
      return cos(evaluate(*e.a, d));
    case ExprKind::Sqrt:
      return sqrt(evaluate(*e.a, d));
    case ExprKind::Pow:
      return pow_int(evaluate(*e.a, d), e.exponent);
    case ExprKind::Add:
      return add(evaluate(*e.a, d), evaluate(*e.b, d));
    case ExprKind::Sub:
      return sub(evaluate(*e.a, d), evaluate(*e.b, d));
    case ExprKind::Mul:
      return mul(evaluate(*e.a, d), evaluate(*e.b, d));
    case ExprKind::Div:
      return div(evaluate(*e.a, d), evaluate(*e.b, d));
  }
  return Interval::entire();  // unreachable
}

namespace {

void count_vars(const Expr& e, std::map<int, int>& counts) {
  if (e.kind == ExprKind::Var) ++counts[e.var];
  if (e.a) count_vars(*e.a, counts);
  if (e.b) count_vars(*e.b, counts);
}

}  // namespace

std::map<std::string, int> occurrences(const Constraint& c, const Problem& p) {
  std::map<int, int> counts;
  count_vars(*c.lhs, counts);
  count_vars(*c.rhs, counts);
  std::map<std::string, int> out;
  for (auto& [idx, n] : counts) out[p.variables.at(static_cast<size_t>(idx))] = n;
  return out;
}

bool is_admissible(const Constraint& c) {
  std::map<int, int> counts;
  count_vars(*c.lhs, counts);
  count_vars(*c.rhs, counts);
  for (auto& [idx, n] : counts)
    if (n != 1) return false;
  return true;
}

int node_count(const Expr& e) {
  int n = 1;
  if (e.a) n += node_count(*e.a);
  if (e.b) n += node_count(*e.b);
  return n;
}

int node_count(const Constraint& c) {
  return node_count(*c.lhs) + node_count(*c.rhs);
}

namespace {

bool has_var(const Expr& e) {
  if (e.kind == ExprKind::Var) return true;
  if (e.a && has_var(*e.a)) return true;
  if (e.b && has_var(*e.b)) return true;
  return false;
}

ExprPtr fold(const ExprPtr& e) {
  if (e->kind == ExprKind::Var || e->kind == ExprKind::Const) return e;
  if (!has_var(*e)) {
    Interval v = evaluate(*e, {});
    std::string lit = v.is_point() ? point_literal(v.lo()) : "";
    return Expr::make_const(v, lit);
  }
  ExprPtr a = e->a ? fold(e->a) : nullptr;
  ExprPtr b = e->b ? fold(e->b) : nullptr;
  if (a == e->a && b == e->b) return e;
  auto copy = std::make_shared<Expr>(*e);
  copy->a = a;
  copy->b = b;
  return copy;
}

}  // namespace

Problem fold_constants(const Problem& p) {
  Problem out = p;
  for (Constraint& c : out.constraints) {
    c.lhs = fold(c.lhs);
    c.rhs = fold(c.rhs);
  }
  return out;
}

}  // namespace bcs
