#pragma once

// Random admissible expression trees (every variable occurs exactly once)
// and a test-side forward evaluator for primitive chains.

#include <random>
#include <string>
#include <vector>

#include "bcs/decompose.hpp"
#include "bcs/expr.hpp"

namespace treegen {

// Consumes variables from `names` starting at `next`, each at most once.
// allow_div=false draws from the division-free operator set: division's
// forward projection hulls two quotient branches, the one case where a
// single two-sweep pass can stop short of the iterated fixed point.
inline bcs::ExprPtr admissible(std::mt19937_64& rng, int depth,
                               const std::vector<std::string>& names,
                               size_t& next, bool allow_div = true) {
  using bcs::Expr;
  using bcs::ExprKind;
  static const char* literals[] = {"1", "2", "0.5", "3.84", "0.1", "10"};
  int r = static_cast<int>(rng() % 100);
  if (depth == 0 || r < 22) {
    if (r % 3 != 0 && next < names.size()) {
      size_t i = next++;
      return Expr::make_var(names[i], static_cast<int>(i));
    }
    const char* lit = literals[rng() % 6];
    return Expr::make_const(bcs::parse_literal(lit), lit);
  }
  if (r < 40) {
    ExprKind k = r < 28 ? ExprKind::Neg
                        : (r < 32 ? ExprKind::Exp
                                  : (r < 36 ? ExprKind::Cos : ExprKind::Sqrt));
    bcs::ExprPtr child = admissible(rng, depth - 1, names, next, allow_div);
    if (k == ExprKind::Neg && child->kind == ExprKind::Const) {
      std::string lit = child->literal[0] == '-' ? child->literal.substr(1)
                                                 : "-" + child->literal;
      return Expr::make_const(bcs::neg(child->value), lit);
    }
    return Expr::make_unary(k, std::move(child));
  }
  if (r < 52)
    return Expr::make_pow(admissible(rng, depth - 1, names, next, allow_div),
                          2 + static_cast<int>(rng() % 2));
  ExprKind k = r < 67   ? ExprKind::Add
               : r < 80 ? ExprKind::Sub
               : (r < 92 || !allow_div) ? ExprKind::Mul
                                        : ExprKind::Div;
  bcs::ExprPtr a = admissible(rng, depth - 1, names, next, allow_div);
  bcs::ExprPtr b = admissible(rng, depth - 1, names, next, allow_div);
  return Expr::make_binary(k, std::move(a), std::move(b));
}

// A random admissible single-constraint problem over at most `max_vars`
// variables with the given domain for each.
inline bcs::Problem admissible_problem(std::mt19937_64& rng, int depth,
                                       int max_vars, bcs::Interval domain,
                                       bool allow_div = true) {
  bcs::Problem p;
  for (int i = 0; i < max_vars; ++i) {
    p.variables.push_back("v" + std::to_string(i));
    p.domains.push_back(domain);
  }
  for (;;) {
    size_t next = 0;
    bcs::ExprPtr lhs = admissible(rng, depth, p.variables, next, allow_div);
    bcs::ExprPtr rhs = admissible(rng, depth > 1 ? depth - 1 : 1, p.variables,
                                  next, allow_div);
    if (next == 0) continue;  // need at least one variable
    bcs::Constraint c;
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    for (size_t i = 0; i < next; ++i) c.scope.push_back(static_cast<int>(i));
    p.variables.resize(next);
    p.domains.resize(next);
    p.constraints.push_back(std::move(c));
    return p;
  }
}

inline bcs::Interval operand_value(const bcs::Operand& o, const bcs::Box& box) {
  return o.is_const ? o.value : box.at(static_cast<size_t>(o.var));
}

// Applies the primitive's operator to its input operands.
inline bcs::Interval forward_op(const bcs::Primitive& pr, const bcs::Box& box) {
  using bcs::ExprKind;
  bcs::Interval a = operand_value(pr.in[0], box);
  switch (pr.op) {
    case ExprKind::Neg: return bcs::neg(a);
    case ExprKind::Exp: return bcs::exp(a);
    case ExprKind::Cos: return bcs::cos(a);
    case ExprKind::Sqrt: return bcs::sqrt(a);
    case ExprKind::Pow: return bcs::pow_int(a, pr.exponent);
    case ExprKind::Add: return bcs::add(a, operand_value(pr.in[1], box));
    case ExprKind::Sub: return bcs::sub(a, operand_value(pr.in[1], box));
    case ExprKind::Mul: return bcs::mul(a, operand_value(pr.in[1], box));
    case ExprKind::Div: return bcs::div(a, operand_value(pr.in[1], box));
    default: return bcs::Interval::entire();
  }
}

}  // namespace treegen
