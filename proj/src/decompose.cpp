#include "bcs/decompose.hpp"

#include <cstdio>

namespace bcs {

std::vector<int> prim_scope(const Primitive& p) {
  std::vector<int> out;
  auto push = [&out](int v) {
    for (int seen : out)
      if (seen == v) return;
    out.push_back(v);
  };
  for (int i = 0; i < p.n_in; ++i)
    if (!p.in[i].is_const) push(p.in[i].var);
  push(p.out);
  return out;
}

std::string Decomposition::var_name(int ext, const Problem& p) const {
  if (ext < n_problem_vars) return p.variables[static_cast<size_t>(ext)];
  return fresh_names[static_cast<size_t>(ext - n_problem_vars)];
}

namespace {

class Builder {
 public:
  explicit Builder(const Problem& p) : nv_(static_cast<int>(p.variables.size())) {
    dec_.n_problem_vars = nv_;
  }

  Decomposition build(const Constraint& c) {
    Operand lhs = walk(*c.lhs);
    Operand rhs = walk(*c.rhs);
    // Root convention: lhs - rhs = a0 with a0 pinned to [0,0]. Uniform with
    // the other primitives, so the schedule needs no special case.
    Primitive root;
    root.op = ExprKind::Sub;
    root.in[0] = lhs;
    root.in[1] = rhs;
    root.n_in = 2;
    root.out = fresh("a0");
    dec_.root_var = root.out;
    dec_.primitives.push_back(root);

    build_omega();
    build_gamma();
    build_gamma_prime();
    return std::move(dec_);
  }

 private:
  // Postorder: children first, one primitive and one fresh variable per
  // internal node. Leaves become operands.
  Operand walk(const Expr& e) {
    if (e.kind == ExprKind::Var) return Operand::make_var(e.var);
    if (e.kind == ExprKind::Const) return Operand::make_const(e.value);
    Primitive prim;
    prim.op = e.kind;
    prim.in[0] = walk(*e.a);
    prim.n_in = 1;
    if (e.b) {
      prim.in[1] = walk(*e.b);
      prim.n_in = 2;
    }
    prim.exponent = e.exponent;
    prim.out = fresh("a" + std::to_string(dec_.fresh_names.size() + 1));
    dec_.primitives.push_back(prim);
    return Operand::make_var(prim.out);
  }

  int fresh(const std::string& name) {
    dec_.fresh_names.push_back(name);
    return nv_ + static_cast<int>(dec_.fresh_names.size()) - 1;
  }

  // Maps an extended index to the primitive producing it, or -1 for leaves.
  int producer(const Operand& o) const {
    if (o.is_const || o.var < nv_) return -1;
    for (size_t i = 0; i < dec_.primitives.size(); ++i)
      if (dec_.primitives[i].out == o.var) return static_cast<int>(i);
    return -1;
  }

  void build_omega() {
    // Forward: every output, bottom-up; primitive order is already a valid
    // postorder across lhs then rhs, root last.
    for (size_t i = 0; i < dec_.primitives.size(); ++i)
      dec_.omega.emplace_back(static_cast<int>(i), kOutSlot);
    // Backward: inputs in root-first preorder, left to right.
    backward(static_cast<int>(dec_.primitives.size()) - 1);
  }

  void backward(int pi) {
    const Primitive& p = dec_.primitives[static_cast<size_t>(pi)];
    for (int s = 0; s < p.n_in; ++s)
      if (!p.in[s].is_const) dec_.omega.emplace_back(pi, s);
    for (int s = 0; s < p.n_in; ++s) {
      int child = producer(p.in[s]);
      if (child >= 0) backward(child);
    }
  }

  // Blocks of child variables, root block first, then a right-to-left
  // preorder of the subtrees.
  void build_gamma() {
    dec_.gamma.push_back({dec_.root_var});
    gamma_visit(static_cast<int>(dec_.primitives.size()) - 1);
  }

  void gamma_visit(int pi) {
    const Primitive& p = dec_.primitives[static_cast<size_t>(pi)];
    std::vector<int> block;
    for (int s = 0; s < p.n_in; ++s)
      if (!p.in[s].is_const) block.push_back(p.in[s].var);
    if (!block.empty()) dec_.gamma.push_back(std::move(block));
    for (int s = p.n_in - 1; s >= 0; --s) {
      int child = producer(p.in[s]);
      if (child >= 0) gamma_visit(child);
    }
  }

  // Inverted left-to-right preorder of all variables, as singletons.
  void build_gamma_prime() {
    std::vector<int> order;
    order.push_back(dec_.root_var);
    prime_visit(static_cast<int>(dec_.primitives.size()) - 1, order);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
      dec_.gamma_prime.push_back({*it});
  }

  void prime_visit(int pi, std::vector<int>& order) {
    const Primitive& p = dec_.primitives[static_cast<size_t>(pi)];
    for (int s = 0; s < p.n_in; ++s) {
      if (p.in[s].is_const) continue;
      order.push_back(p.in[s].var);
      int child = producer(p.in[s]);
      if (child >= 0) prime_visit(child, order);
    }
  }

  int nv_;
  Decomposition dec_;
};

}  // namespace

Decomposition decompose(const Constraint& c, const Problem& p) {
  return Builder(p).build(c);
}

namespace {

std::string operand_text(const Operand& o, const Decomposition& dec,
                         const Problem& p) {
  if (!o.is_const) return dec.var_name(o.var, p);
  if (o.value.is_point()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", o.value.lo());
    return buf;
  }
  return to_string(o.value);
}

std::string prim_text(const Primitive& prim, const Decomposition& dec,
                      const Problem& p) {
  std::string a = operand_text(prim.in[0], dec, p);
  std::string b = prim.n_in > 1 ? operand_text(prim.in[1], dec, p) : "";
  std::string lhs;
  switch (prim.op) {
    case ExprKind::Add: lhs = a + " + " + b; break;
    case ExprKind::Sub: lhs = a + " - " + b; break;
    case ExprKind::Mul: lhs = a + "*" + b; break;
    case ExprKind::Div: lhs = a + "/" + b; break;
    case ExprKind::Neg: lhs = "-" + a; break;
    case ExprKind::Exp: lhs = "exp(" + a + ")"; break;
    case ExprKind::Cos: lhs = "cos(" + a + ")"; break;
    case ExprKind::Sqrt: lhs = "sqrt(" + a + ")"; break;
    case ExprKind::Pow: lhs = a + "^" + std::to_string(prim.exponent); break;
    default: lhs = "?"; break;
  }
  return lhs + " = " + dec.var_name(prim.out, p);
}

std::string block_text(const std::vector<int>& block, const Decomposition& dec,
                       const Problem& p) {
  std::string out = "{";
  for (size_t i = 0; i < block.size(); ++i) {
    if (i) out += ",";
    out += dec.var_name(block[i], p);
  }
  return out + "}";
}

}  // namespace

std::string dump_decomposition(const Decomposition& dec, const Constraint& c,
                               const Problem& p) {
  std::string out = "decomposition of: " + to_string(c) + "\n";
  out += "primitives (" + std::to_string(dec.primitives.size()) + "):\n";
  for (size_t i = 0; i < dec.primitives.size(); ++i)
    out += "  p" + std::to_string(i + 1) + ": " +
           prim_text(dec.primitives[i], dec, p) + "\n";
  out += "omega (" + std::to_string(dec.omega.size()) + "):\n";
  for (size_t i = 0; i < dec.omega.size(); ++i) {
    auto [pi, slot] = dec.omega[i];
    const Primitive& prim = dec.primitives[static_cast<size_t>(pi)];
    int target = slot == kOutSlot ? prim.out : prim.in[slot].var;
    out += "  " + std::to_string(i + 1) + ". p" + std::to_string(pi + 1) +
           " -> " + dec.var_name(target, p) + "\n";
  }
  out += "gamma:";
  for (const auto& block : dec.gamma) out += " " + block_text(block, dec, p);
  out += "\ngamma':";
  for (const auto& block : dec.gamma_prime)
    out += " " + block_text(block, dec, p);
  out += "\n";
  return out;
}

FlatProblem decompose_problem(const Problem& p) {
  FlatProblem flat;
  flat.n_original = static_cast<int>(p.variables.size());
  flat.variables = p.variables;
  flat.domains = p.domains;
  for (size_t ci = 0; ci < p.constraints.size(); ++ci) {
    Decomposition dec = decompose(p.constraints[ci], p);
    int base = static_cast<int>(flat.variables.size());
    flat.fresh_base.push_back(base);
    for (const std::string& name : dec.fresh_names) {
      flat.variables.push_back("c" + std::to_string(ci) + "." + name);
      flat.domains.push_back(Interval::entire());
    }
    flat.domains.back() = Interval(0.0, 0.0);  // root slack, a0 is last
    auto remap = [&](int ext) {
      return ext < dec.n_problem_vars ? ext : base + (ext - dec.n_problem_vars);
    };
    int begin = static_cast<int>(flat.primitives.size());
    for (Primitive prim : dec.primitives) {
      for (int s = 0; s < prim.n_in; ++s)
        if (!prim.in[s].is_const) prim.in[s].var = remap(prim.in[s].var);
      prim.out = remap(prim.out);
      prim.source = static_cast<int>(ci);
      flat.primitives.push_back(prim);
    }
    flat.constraint_prims.emplace_back(begin,
                                       static_cast<int>(flat.primitives.size()));
  }
  return flat;
}

}  // namespace bcs
