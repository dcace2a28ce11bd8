#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcs/interval.hpp"

namespace bcs {

// A box is keyed by variable index; the owning Problem maps names to
// indices. Any empty coordinate marks the whole box inconsistent.
using Box = std::vector<Interval>;

bool box_is_empty(const Box& b);

enum class ExprKind { Var, Const, Neg, Exp, Cos, Sqrt, Add, Sub, Mul, Div, Pow };

bool is_unary(ExprKind k);
bool is_binary(ExprKind k);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable after construction. Constants carry an interval enclosure of
// their literal: 3.84 is not a double, rounding it silently would lose
// solutions.
struct Expr {
  ExprKind kind;
  std::string name;     // Var
  int var = -1;         // Var: index into the owning Problem
  Interval value;       // Const
  std::string literal;  // Const: original spelling, kept for printing
  ExprPtr a, b;         // Neg/Exp/Cos/Sqrt/Pow use a; Add/Sub/Mul/Div use both
  int exponent = 0;     // Pow, >= 2

  static ExprPtr make_var(std::string name, int index);
  static ExprPtr make_const(Interval v, std::string literal);
  static ExprPtr make_unary(ExprKind k, ExprPtr child);
  static ExprPtr make_binary(ExprKind k, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr make_pow(ExprPtr child, int n);
};

struct Constraint {
  ExprPtr lhs, rhs;  // lhs = rhs
  std::vector<int> scope;  // sorted, deduplicated variable indices
};

struct Problem {
  std::vector<std::string> variables;
  Box domains;  // one interval per variable
  std::vector<Constraint> constraints;

  int var_index(const std::string& name) const;  // -1 when absent
};

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line, int col);
};

// Grammar:
//   problem    := (decl | constraint)*
//   decl       := "var" IDENT "in" "[" bound "," bound "]" ";"
//   constraint := expr "=" expr ";"
//   expr       := term (("+"|"-") term)*
//   term       := factor (("*"|"/") factor)*
//   factor     := atom ("^" INTEGER)?
//   atom       := NUMBER | IDENT | ("exp"|"cos"|"sqrt") "(" expr ")"
//               | "(" expr ")" | "-" factor
// Bounds allow a leading sign; equality is the only relation. A "-" applied
// directly to a NUMBER folds into a signed constant.
Problem parse_problem(const std::string& text);

// Tight two-sided enclosure of a decimal literal.
Interval parse_literal(const std::string& text);

std::string to_string(const Expr& e);
std::string to_string(const Constraint& c);
std::string to_string(const Problem& p);

// Natural interval extension; empty propagates.
Interval evaluate(const Expr& e, const Box& d);

std::map<std::string, int> occurrences(const Constraint& c, const Problem& p);
bool is_admissible(const Constraint& c);

int node_count(const Expr& e);
int node_count(const Constraint& c);  // both sides

// Replaces variable-free subtrees by interval constants.
Problem fold_constants(const Problem& p);

}  // namespace bcs
