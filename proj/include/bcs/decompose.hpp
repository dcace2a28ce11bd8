#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bcs/expr.hpp"

namespace bcs {

// Variables of a decomposition live in an extended frame: indices
// [0, n_problem_vars) are the owning problem's variables, the rest are the
// fresh variables introduced per internal tree node, with the root slack
// variable (fixed to [0,0]) last.
struct Operand {
  bool is_const = false;
  int var = -1;    // extended index when !is_const
  Interval value;  // when is_const

  static Operand make_var(int v) {
    Operand o;
    o.var = v;
    return o;
  }
  static Operand make_const(Interval v) {
    Operand o;
    o.is_const = true;
    o.value = v;
    return o;
  }
};

// One primitive constraint: op(in...) = out. Embedded constants stay inside
// the primitive, so 2*x = a1 is a single scale primitive.
struct Primitive {
  ExprKind op;  // Add/Sub/Mul/Div/Neg/Exp/Cos/Sqrt/Pow
  Operand in[2];
  int n_in = 0;
  int out = -1;       // extended index
  int exponent = 0;   // Pow
  int source = -1;    // owning constraint within the problem, set by flattening
};

// Distinct extended indices appearing in the primitive, input slots first.
std::vector<int> prim_scope(const Primitive& p);

// Slots: 0 and 1 are inputs, 2 is the output.
inline constexpr int kOutSlot = 2;

struct Decomposition {
  int n_problem_vars = 0;
  std::vector<std::string> fresh_names;  // a1..ap, then a0
  std::vector<Primitive> primitives;     // lhs postorder, rhs postorder, root
  int root_var = -1;                     // extended index of a0

  // Revision schedule: (primitive index, slot). The first primitives.size()
  // entries are the forward (output) projections in primitive order, the
  // rest the backward (input) projections in root-first preorder.
  std::vector<std::pair<int, int>> omega;

  // Ordered partitions of the extended frame (admissible constraints only;
  // with repeated variables the blocks may overlap).
  std::vector<std::vector<int>> gamma;
  std::vector<std::vector<int>> gamma_prime;

  std::string var_name(int ext, const Problem& p) const;
  int total_vars() const {
    return n_problem_vars + static_cast<int>(fresh_names.size());
  }
};

Decomposition decompose(const Constraint& c, const Problem& p);

// Stable textual form of one constraint's decomposition for snapshot tests.
std::string dump_decomposition(const Decomposition& dec, const Constraint& c,
                               const Problem& p);

// Every constraint's dump in declaration order, blank-line separated.
std::string dump_problem(const Problem& p);

// All constraints' primitives over one shared frame: problem variables
// first, then each constraint's fresh block in order.
struct FlatProblem {
  int n_original = 0;
  std::vector<std::string> variables;
  Box domains;  // fresh variables start unbounded, root slacks at [0,0]
  std::vector<Primitive> primitives;
  std::vector<std::pair<int, int>> constraint_prims;  // [begin,end) per source
  std::vector<int> fresh_base;  // first global fresh index per source
};

FlatProblem decompose_problem(const Problem& p);

}  // namespace bcs
