#include "bcs/revise.hpp"

#include <algorithm>

namespace bcs {

namespace {

Interval operand_value(const Operand& o, const Box& d) {
  return o.is_const ? o.value : d[static_cast<size_t>(o.var)];
}

// Branches intersected with the current domain, then hulled. Returns empty
// when no branch meets the domain.
Interval clip_branches(const Interval* br, int n, const Interval& cur) {
  Interval acc = Interval::empty();
  for (int i = 0; i < n; ++i) acc = hull(acc, intersect(br[i], cur));
  return acc;
}

Interval forward_value(const Primitive& p, const Interval& a, const Interval& b) {
  switch (p.op) {
    case ExprKind::Add: return add(a, b);
    case ExprKind::Sub: return sub(a, b);
    case ExprKind::Mul: return mul(a, b);
    case ExprKind::Div: break;  // handled by the caller (quotient branches)
    case ExprKind::Neg: return neg(a);
    case ExprKind::Exp: return exp(a);
    case ExprKind::Cos: return cos(a);
    case ExprKind::Sqrt: return sqrt(a);
    case ExprKind::Pow: return pow_int(a, p.exponent);
    default: break;
  }
  return Interval::entire();
}

Interval project_even_pow(const Interval& z, int n, const Interval& cur) {
  Interval zc = intersect(z, Interval(0.0, Interval::inf()));
  if (zc.is_empty()) return Interval::empty();
  Interval pos(detail::root_down(zc.lo(), n), detail::root_up(zc.hi(), n));
  Interval br[2] = {neg(pos), pos};
  return clip_branches(br, 2, cur);
}

}  // namespace

Interval project_slot(const Primitive& prim, const Box& d, int slot) {
  const Interval z = d[static_cast<size_t>(prim.out)];
  const Interval a = operand_value(prim.in[0], d);
  const Interval b =
      prim.n_in > 1 ? operand_value(prim.in[1], d) : Interval::entire();
  if (z.is_empty() || a.is_empty() || (prim.n_in > 1 && b.is_empty()))
    return Interval::empty();

  // A quotient's divisor cannot be the single point 0.
  if (prim.op == ExprKind::Div && b == Interval(0.0, 0.0))
    return Interval::empty();

  if (slot == kOutSlot) {
    if (prim.op == ExprKind::Div) {
      Interval br[2];
      int n = quotient_branches(a, b, br);
      return clip_branches(br, n, z);
    }
    return intersect(z, forward_value(prim, a, b));
  }

  const Interval cur = slot == 0 ? a : b;
  switch (prim.op) {
    case ExprKind::Add:
      return intersect(cur, slot == 0 ? sub(z, b) : sub(z, a));
    case ExprKind::Sub:
      return intersect(cur, slot == 0 ? add(z, b) : sub(a, z));
    case ExprKind::Mul: {
      Interval br[2];
      int n = rel_mul_branches(z, slot == 0 ? b : a, br);
      return clip_branches(br, n, cur);
    }
    case ExprKind::Div: {
      if (slot == 0) {
        // a = b*z with b != 0; the hull of b*z is a sound cover
        return intersect(cur, mul(b, z));
      }
      // b ranges over {b != 0 : b*z meets a}
      Interval br[2];
      int n = rel_mul_branches(a, z, br);
      Interval r = clip_branches(br, n, cur);
      if (r == Interval(0.0, 0.0)) return Interval::empty();
      return r;
    }
    case ExprKind::Neg:
      return intersect(cur, neg(z));
    case ExprKind::Exp:
      return intersect(cur, inv_exp(z));
    case ExprKind::Cos:
      return inv_cos(z, cur);
    case ExprKind::Sqrt:
      return intersect(cur,
                       pow_int(intersect(z, Interval(0.0, Interval::inf())), 2));
    case ExprKind::Pow:
      if (prim.exponent % 2 == 0) return project_even_pow(z, prim.exponent, cur);
      return intersect(cur, inv_pow_odd(z, prim.exponent));
    default:
      return cur;
  }
}

Interval hc3_revise_var(const Primitive& prim, const Box& d, int x,
                        Stats* stats) {
  Interval r = d[static_cast<size_t>(x)];
  for (int slot = 0; slot < prim.n_in; ++slot) {
    if (!prim.in[slot].is_const && prim.in[slot].var == x) {
      r = intersect(r, project_slot(prim, d, slot));
      if (stats) ++stats->projections;
    }
  }
  if (prim.out == x) {
    r = intersect(r, project_slot(prim, d, kOutSlot));
    if (stats) ++stats->projections;
  }
  return r;
}

bool hc3_revise(const Primitive& prim, Box& d, std::vector<int>* narrowed,
                Stats* stats) {
  if (stats) ++stats->revise_calls;
  std::vector<int> vars = prim_scope(prim);
  // prim_scope lists inputs first; move the output to the back
  for (size_t i = 0; i + 1 < vars.size(); ++i)
    if (vars[i] == prim.out) std::swap(vars[i], vars.back());
  for (int x : vars) {
    Interval nd = hc3_revise_var(prim, d, x, stats);
    if (nd != d[static_cast<size_t>(x)]) {
      d[static_cast<size_t>(x)] = nd;
      if (narrowed) narrowed->push_back(x);
      if (nd.is_empty()) return false;
    }
  }
  return true;
}

bool revisit_stable(const Primitive& prim) {
  if (prim.n_in == 2 && !prim.in[0].is_const && !prim.in[1].is_const &&
      prim.in[0].var == prim.in[1].var)
    return false;
  if (prim.op == ExprKind::Mul) {
    // Projecting onto a variable input divides by the sibling slot.
    for (int i = 0; i < 2; ++i)
      if (!prim.in[i].is_const && !prim.in[1 - i].is_const) return false;
  }
  if (prim.op == ExprKind::Div) {
    // The denominator slot divides by the output variable, and the output
    // slot divides by the denominator; only a constant denominator pins both.
    if (!prim.in[1].is_const) return false;
  }
  return true;
}

bool hc4_revise_ext(const Decomposition& dec, Box& ext, Stats* stats) {
  if (stats) ++stats->revise_calls;
  for (auto [pi, slot] : dec.omega) {
    const Primitive& prim = dec.primitives[static_cast<size_t>(pi)];
    int v = slot == kOutSlot ? prim.out : prim.in[slot].var;
    Interval nd = project_slot(prim, ext, slot);
    if (stats) ++stats->projections;
    ext[static_cast<size_t>(v)] = nd;
    if (nd.is_empty()) return false;
  }
  return true;
}

bool hc4_revise(const Decomposition& dec, Box& d, std::vector<int>* narrowed,
                Stats* stats) {
  Box ext = d;
  ext.resize(static_cast<size_t>(dec.total_vars()), Interval::entire());
  ext[static_cast<size_t>(dec.root_var)] = Interval(0.0, 0.0);
  bool ok = hc4_revise_ext(dec, ext, stats);
  if (!ok) {
    for (Interval& v : d) v = Interval::empty();
    return false;
  }
  for (size_t i = 0; i < d.size(); ++i) {
    if (ext[i] != d[i]) {
      d[i] = ext[i];
      if (narrowed) narrowed->push_back(static_cast<int>(i));
    }
  }
  return true;
}

namespace {

bool contains_var(const std::vector<int>& xs, int v) {
  return std::find(xs.begin(), xs.end(), v) != xs.end();
}

}  // namespace

bool dbc(const std::vector<Primitive>& prims,
         const std::vector<std::vector<int>>& blocks, Box& d, Stats* stats) {
  std::vector<int> prefix;  // union of blocks[0..i]
  for (const auto& b : blocks) prefix.insert(prefix.end(), b.begin(), b.end());
  for (int i = static_cast<int>(blocks.size()) - 1; i >= 0; --i) {
    const std::vector<int>& block = blocks[static_cast<size_t>(i)];
    for (const Primitive& prim : prims) {
      std::vector<int> scope = prim_scope(prim);
      bool block_in_scope = std::all_of(
          block.begin(), block.end(),
          [&](int v) { return contains_var(scope, v); });
      bool scope_in_prefix = std::all_of(
          scope.begin(), scope.end(),
          [&](int v) { return contains_var(prefix, v); });
      if (!block_in_scope || !scope_in_prefix) continue;
      if (stats) ++stats->revise_calls;
      for (int slot = 0; slot <= kOutSlot; ++slot) {
        int v;
        if (slot == kOutSlot) {
          v = prim.out;
        } else {
          if (slot >= prim.n_in || prim.in[slot].is_const) continue;
          v = prim.in[slot].var;
        }
        if (contains_var(block, v)) continue;
        Interval nd = project_slot(prim, d, slot);
        if (stats) ++stats->projections;
        d[static_cast<size_t>(v)] = nd;
        if (nd.is_empty()) return false;
      }
    }
    prefix.resize(prefix.size() - block.size());
  }
  return true;
}

bool verify_directional(const std::vector<Primitive>& prims, const Box& d,
                        const std::vector<std::vector<int>>& blocks) {
  if (box_is_empty(d)) return true;  // vacuous
  std::vector<int> rank(d.size(), -1);
  for (size_t i = 0; i < blocks.size(); ++i)
    for (int v : blocks[i]) rank[static_cast<size_t>(v)] = static_cast<int>(i);
  for (const Primitive& prim : prims) {
    std::vector<int> scope = prim_scope(prim);
    for (int x : scope) {
      bool minimal = std::none_of(scope.begin(), scope.end(), [&](int y) {
        return rank[static_cast<size_t>(y)] < rank[static_cast<size_t>(x)];
      });
      if (!minimal) continue;
      if (hc3_revise_var(prim, d, x) != d[static_cast<size_t>(x)]) return false;
    }
  }
  return true;
}

}  // namespace bcs
