#pragma once

#include <vector>

#include "bcs/decompose.hpp"
#include "bcs/expr.hpp"

namespace bcs {

// The atomic cost unit is one projection of a primitive onto a variable
// slot; engines layer revise_calls and enqueues on top.
struct Stats {
  long long projections = 0;
  long long revise_calls = 0;
  long long enqueues = 0;
  double wall_time = 0.0;  // seconds

  void add(const Stats& o) {
    projections += o.projections;
    revise_calls += o.revise_calls;
    enqueues += o.enqueues;
    wall_time += o.wall_time;
  }
};

// Narrowed domain for the variable occupying `slot` of `prim`, already
// intersected with its current domain. Multi-branch inverses (even powers,
// products, quotients, cosine) intersect branch-wise before hulling, so a
// gap containing no solutions can cut the domain from inside.
Interval project_slot(const Primitive& prim, const Box& d, int slot);

// Intersection of the slot projections for every slot holding x.
Interval hc3_revise_var(const Primitive& prim, const Box& d, int x,
                        Stats* stats = nullptr);

// One pass over the primitive's distinct variables, inputs left to right,
// output last. Narrowed extended indices are appended to `narrowed`.
// Returns false as soon as a domain becomes empty.
bool hc3_revise(const Primitive& prim, Box& d, std::vector<int>* narrowed,
                Stats* stats = nullptr);

// True when one hc3_revise pass is idempotent for this primitive, so a
// worklist engine may skip re-enqueueing it after it narrows its own
// variables. Holds for every primitive except those with a repeated input
// variable (x op x = z converges only in the limit) and products/quotients
// dividing by a non-constant sibling: there the input projection is a
// two-branch quotient whose hull keeps witness-free filler, and a sibling
// narrowing inside the same pass can collapse a branch, so a revisit cuts
// further. Unary multi-branch inverses (even powers, cosine) are stable:
// their branch ends depend only on output bounds the forward image pins.
bool revisit_stable(const Primitive& prim);

// Forward/backward pass over the decomposition's schedule on an extended
// box (problem variables then fresh ones). Aborts on an empty domain.
bool hc4_revise_ext(const Decomposition& dec, Box& ext, Stats* stats = nullptr);

// Same, managing the fresh variables internally: d holds the problem
// variables only and is narrowed in place.
bool hc4_revise(const Decomposition& dec, Box& d,
                std::vector<int>* narrowed = nullptr, Stats* stats = nullptr);

// One sweep over an ordered partition, largest block index first: every
// constraint whose scope lies inside the processed prefix and contains the
// current block is revised on its other variables.
bool dbc(const std::vector<Primitive>& prims,
         const std::vector<std::vector<int>>& blocks, Box& d,
         Stats* stats = nullptr);

// True when every variable that is minimal in a primitive's scope (no
// scope variable sits in an earlier block) has both bounds supported:
// re-projecting changes nothing.
bool verify_directional(const std::vector<Primitive>& prims, const Box& d,
                        const std::vector<std::vector<int>>& blocks);

}  // namespace bcs
