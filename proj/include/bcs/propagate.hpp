#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bcs/decompose.hpp"
#include "bcs/expr.hpp"
#include "bcs/revise.hpp"

namespace bcs {

// The four propagation methods: worklist granularity x revise procedure.
//   Hc3   - one global worklist over all primitives
//   Hc3sb - worklist over user constraints, each revised to its own fixed
//           point by an inner primitive worklist (S-box)
//   Hc4   - worklist over user constraints, one two-sweep pass per pop
//   Hc4sb - like Hc4 but each pop repeats the pass until it stalls
enum class Method { Hc3, Hc3sb, Hc4, Hc4sb };

std::optional<Method> method_from_name(std::string_view name);
std::string_view method_name(Method m);

// Repeats the two-sweep pass until no original-variable bound moves; the
// per-constraint fixed point. sweeps counts passes including the final
// no-change one (an admissible division-free constraint takes exactly 2).
bool sbox_hc4(const Decomposition& dec, Box& d, std::vector<int>* narrowed,
              Stats* stats = nullptr, int* sweeps = nullptr);

// Inner worklist over one constraint's primitive range on the flat extended
// box; narrowed collects original-variable indices only.
bool sbox_hc3(const FlatProblem& flat, int constraint, Box& ext,
              std::vector<int>* narrowed, Stats* stats = nullptr);

// Decompositions and watcher tables for one problem, built once; propagate
// may then be called on many boxes (the search reuses one instance).
class Propagator {
 public:
  Propagator(const Problem& p, Method m);

  // Narrows d (original variables) to the greatest common fixed point of
  // the method's revise operators inside d. On inconsistency every slot of
  // the returned box is empty. lifo flips the agenda pop order; the fixed
  // point is the same either way (it is unique by monotonicity).
  Box propagate(Box d, Stats* stats = nullptr, bool lifo = false) const;

  const Problem& problem() const { return *p_; }
  Method method() const { return m_; }
  const FlatProblem& flat() const { return flat_; }
  const std::vector<Decomposition>& decompositions() const { return decs_; }

 private:
  Box run_hc3(Box d, Stats* stats, bool lifo) const;
  Box run_hc3sb(Box d, Stats* stats, bool lifo) const;
  Box run_hc4(Box d, Stats* stats, bool lifo, bool sbox) const;

  const Problem* p_;
  Method m_;
  FlatProblem flat_;
  std::vector<Decomposition> decs_;
  // One hc4_revise pass is idempotent only for admissible division-free
  // constraints; the others re-enter the agenda when they narrow their own
  // variables, so quiescence still means "re-running changes nothing".
  std::vector<char> self_requeue_;
  std::vector<char> prim_stable_;  // revisit_stable per flat primitive
  std::vector<std::vector<int>> prim_watchers_;  // extended var -> primitives
  std::vector<std::vector<int>> ctr_watchers_;   // original var -> constraints
};

Box bounds_consistency(const Problem& p, Method m, Box d,
                       Stats* stats = nullptr, bool lifo = false);

}  // namespace bcs
