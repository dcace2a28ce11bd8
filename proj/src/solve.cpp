#include "bcs/solve.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstddef>
#include <utility>

namespace bcs {

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::complete: return "complete";
    case SolveStatus::empty: return "empty";
    case SolveStatus::box_limit: return "box_limit";
    case SolveStatus::timeout: return "timeout";
  }
  return "?";
}

namespace {

// a <= b, gap closed by at most one ulp step.
bool ulp_touch(double a, double b) {
  return a == b || detail::next_up(a) >= b;
}

bool boxes_touch(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i].hi() < a[i].lo() && !ulp_touch(b[i].hi(), a[i].lo())) return false;
    if (a[i].hi() < b[i].lo() && !ulp_touch(a[i].hi(), b[i].lo())) return false;
  }
  return true;
}

Box hull_box(const Box& a, const Box& b) {
  Box h(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    h[i] = Interval(std::min(a[i].lo(), b[i].lo()),
                    std::max(a[i].hi(), b[i].hi()));
  return h;
}

}  // namespace

std::vector<Box> merge_adjacent(std::vector<Box> boxes) {
  // Merging two boxes can bring the hull into contact with a third, so scan
  // until a full pass finds nothing. Emitted clusters are tiny; the
  // quadratic pass is irrelevant next to the search that produced them.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < boxes.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < boxes.size() && !changed; ++j)
        if (boxes_touch(boxes[i], boxes[j])) {
          boxes[i] = hull_box(boxes[i], boxes[j]);
          boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        }
  }
  return boxes;
}

bool certify(const Problem& p, const Box& b) {
  assert(b.size() == p.variables.size());
  if (box_is_empty(b)) return false;
  for (const Constraint& c : p.constraints)
    if (!sub(evaluate(*c.lhs, b), evaluate(*c.rhs, b)).contains(0.0))
      return false;
  return true;
}

SolveResult branch_and_prune(const Problem& p, Method m, double eps, Box d0,
                             const SolveLimits& limits) {
  assert(eps > 0);
  const int n = static_cast<int>(p.variables.size());
  assert(static_cast<int>(d0.size()) == n);

  SolveResult res;
  if (box_is_empty(d0)) {
    res.status = SolveStatus::empty;
    return res;
  }

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  Propagator prop(p, m);
  struct Node {
    Box box;
    int next;  // where the round-robin split scan resumes
  };
  std::vector<Node> stack;
  stack.push_back({std::move(d0), 0});
  std::vector<Box> raw;

  while (!stack.empty()) {
    if (limits.timeout > 0 && elapsed() > limits.timeout) {
      res.status = SolveStatus::timeout;
      break;
    }
    Node node = std::move(stack.back());
    stack.pop_back();

    Box box = prop.propagate(std::move(node.box), &res.stats);
    if (box_is_empty(box)) continue;

    // Next splittable variable in round-robin order. Width above eps alone
    // is not enough: the midpoint must be strictly interior, or the split
    // would reproduce the box and loop (possible only when eps is below one
    // ulp of the endpoint magnitude).
    int split_var = -1;
    double split_at = 0.0;
    for (int k = 0; k < n; ++k) {
      const int j = (node.next + k) % n;
      const Interval& dj = box[static_cast<std::size_t>(j)];
      if (width(dj) <= eps) continue;
      const double mid = midpoint(dj);
      if (mid > dj.lo() && mid < dj.hi()) {
        split_var = j;
        split_at = mid;
        break;
      }
    }

    if (split_var < 0) {
      raw.push_back(std::move(box));
      if (limits.max_boxes > 0 &&
          static_cast<long long>(raw.size()) >= limits.max_boxes &&
          !stack.empty()) {
        res.status = SolveStatus::box_limit;
        break;
      }
      continue;
    }

    const std::size_t sv = static_cast<std::size_t>(split_var);
    const int next = (split_var + 1) % n;
    Box right = box;
    right[sv] = Interval(split_at, box[sv].hi());
    box[sv] = Interval(box[sv].lo(), split_at);
    stack.push_back({std::move(right), next});  // popped second
    stack.push_back({std::move(box), next});    // popped first: left half
  }

  res.solutions = merge_adjacent(std::move(raw));
  // propagate() accumulated only its own time; report the whole solve.
  res.stats.wall_time = elapsed();
  return res;
}

SolveResult solve_problem(const Problem& p, Method m, double eps,
                          const SolveLimits& limits) {
  return branch_and_prune(p, m, eps, p.domains, limits);
}

}  // namespace bcs
