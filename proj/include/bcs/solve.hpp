#pragma once

#include <vector>

#include "bcs/expr.hpp"
#include "bcs/propagate.hpp"

namespace bcs {

// Why the search stopped. `complete` means the returned boxes cover every
// solution inside the initial box. `empty` is reserved for an initial box
// that already has an empty slot, so no search ran; an inconsistent system
// over a nonempty box reports `complete` with zero solutions instead. The
// limit statuses mean part of the tree was cut off and coverage beyond the
// returned boxes is unknown.
enum class SolveStatus { complete, empty, box_limit, timeout };

const char* status_name(SolveStatus s);

struct SolveLimits {
  long long max_boxes = 0;  // stop once this many boxes were emitted, 0 = off
  double timeout = 0.0;     // wall-clock seconds, 0 = off
};

struct SolveResult {
  std::vector<Box> solutions;  // over original variables, merged, in
                               // left-first emission order
  Stats stats;                 // accumulated over the whole search tree;
                               // wall_time spans the entire solve
  SolveStatus status = SolveStatus::complete;
};

// Depth-first branch and prune. Every node is pruned to the `m` fixed point;
// empty boxes are discarded, boxes whose variables are all at width <= eps
// (hi - lo) are emitted, anything else is bisected at the midpoint of the
// next round-robin variable wider than eps and both halves are searched,
// left half first. Emitted boxes are merged (see merge_adjacent) before
// being returned, since bisection can land on a root and split it between
// siblings; each box satisfies the width bound before merging, so a merged
// box is at most a small cluster of eps-wide boxes.
SolveResult branch_and_prune(const Problem& p, Method m, double eps, Box d0,
                             const SolveLimits& limits = {});

// branch_and_prune started from the declared variable domains.
SolveResult solve_problem(const Problem& p, Method m, double eps,
                          const SolveLimits& limits = {});

// Non-exclusion check: true iff no constraint refutes `b` by interval
// evaluation, i.e. lhs - rhs evaluated over `b` contains zero for every
// constraint. An empty box is refutable. True does not prove a solution
// exists, false proves none does.
bool certify(const Problem& p, const Box& b);

// Glue emitted boxes that touch: two boxes merge into their hull when on
// every axis their intervals overlap or leave a gap of at most one ulp.
// Repeated until stable, so a root straddled by several sibling boxes
// collapses to one, making solution counts independent of the propagation
// strategy. Boxes around distinct, separated roots never touch and survive
// as distinct entries, in first-emission order.
std::vector<Box> merge_adjacent(std::vector<Box> boxes);

}  // namespace bcs
