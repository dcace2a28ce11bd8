#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bcs/expr.hpp"
#include "bcs/propagate.hpp"
#include "bcs/solve.hpp"

namespace bcs {

// Benchmark families, generated as model text and parsed like any user
// input, so every instance round-trips through the modeling language.
//
//   bratu(n)             n+2 equations x_{k-1} - 2 x_k + x_{k+1}
//                        + exp(x_k)/(n+1)^2 = 0 plus the boundary pair
//                        x_0 = x_{n+1} = 0 held in degenerate [0,0] domains;
//                        interior domains [-1e8, 1e8]. n >= 1.
//   broyden_banded(n)    x_k (2 + 5 x_k^2) + 1 - sum_{j in J_k} x_j (1 + x_j)
//                        = 0 with J_k = {j != k : max(1,k-5) <= j <=
//                        min(n,k+1)}, domains [-1e8, 1e8]. n >= 2.
//   more_cosnard(n)      discretized integral equation with nodes
//                        t_j = j/(n+1), written exactly as the rational
//                        j/(n+1); domains [-1e8, 0]. The tail sum's exponent
//                        defaults to 3 (the standard problem); 2 is kept
//                        selectable because the source display shows 2,
//                        most likely a typo. n >= 2.
//   feigenbaum(n)        cyclic quadratic -3.84 x_k^2 + 3.84 x_k - x_{k+1}
//                        = 0, domains [0,100]. n >= 2.
//   feigenbaum_factored  the same system with each equation rewritten in
//                        completed-square form -3.84 (x_k - 0.5)^2 + 0.96
//                        - x_{k+1} = 0, which is algebraically identical
//                        and makes every constraint admissible. n >= 2.

std::string bratu_text(int n);
std::string broyden_banded_text(int n);
std::string more_cosnard_text(int n, int tail_exponent = 3);
std::string feigenbaum_text(int n);
std::string feigenbaum_factored_text(int n);

Problem bratu(int n);
Problem broyden_banded(int n);
Problem more_cosnard(int n, int tail_exponent = 3);
Problem feigenbaum(int n);
Problem feigenbaum_factored(int n);

// Underscore names as listed above; nullopt for anything else.
std::optional<Problem> make_family(std::string_view family, int n);
const std::vector<std::string_view>& family_names();

// Largest equation size over the constraints: nodes of lhs plus rhs, except
// that a side which is the literal 0 contributes nothing, so the f = 0
// normal form counts the nodes of f. This is the size the projection-count
// ratios are keyed by.
int problem_node_count(const Problem& p);

struct BenchSpec {
  std::string family;
  int n = 0;
  std::vector<Method> methods;  // empty means all four
  double eps = 1e-8;
  double timeout = 0.0;    // per run, seconds, 0 = none
  long long max_boxes = 0; // per run, 0 = none
};

struct BenchRow {
  std::string family;
  int n = 0;
  int nodes = 0;
  Method method = Method::Hc3;
  SolveStatus status = SolveStatus::complete;
  std::size_t solutions = 0;
  Stats stats;
};

// One solve per (spec, method), in input order. A run that hits its limit
// becomes a row with that status, never a failure.
std::vector<BenchRow> run_suite(const std::vector<BenchSpec>& specs);

// family,n,method,status,solutions,projections,revise_calls,enqueues,seconds
std::string to_csv(const std::vector<BenchRow>& rows);

// Companion table family,n,nodes,pair,ratio with one row per (family, n)
// and pair, for pairs hc3/hc4 and hc3sb/hc4sb, emitted when both runs of a
// pair completed: the projection-count ratio against the equation size.
std::string ratios_csv(const std::vector<BenchRow>& rows);

}  // namespace bcs
