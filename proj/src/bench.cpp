#include "bcs/bench.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace bcs {

namespace {

std::string var_decl(const std::string& name, const char* range) {
  return "var " + name + " in " + range + ";\n";
}

std::string xk(int k) { return "x" + std::to_string(k); }

// t_j = j/(n+1) written as the exact rational; a decimal would not be
// representable for most n.
std::string tj(int j, int n) {
  return std::to_string(j) + "/" + std::to_string(n + 1);
}

}  // namespace

std::string bratu_text(int n) {
  assert(n >= 1);
  const long long m = static_cast<long long>(n + 1) * (n + 1);
  std::string s;
  s += var_decl(xk(0), "[0,0]");
  for (int k = 1; k <= n; ++k) s += var_decl(xk(k), "[-1e8,1e8]");
  s += var_decl(xk(n + 1), "[0,0]");
  for (int k = 1; k <= n; ++k)
    s += xk(k - 1) + " - 2*" + xk(k) + " + " + xk(k + 1) + " + exp(" + xk(k) +
         ")/" + std::to_string(m) + " = 0;\n";
  s += xk(0) + " = 0;\n";
  s += xk(n + 1) + " = 0;\n";
  return s;
}

std::string broyden_banded_text(int n) {
  assert(n >= 2);
  std::string s;
  for (int k = 1; k <= n; ++k) s += var_decl(xk(k), "[-1e8,1e8]");
  for (int k = 1; k <= n; ++k) {
    s += xk(k) + "*(2 + 5*" + xk(k) + "^2) + 1";
    for (int j = std::max(1, k - 5); j <= std::min(n, k + 1); ++j) {
      if (j == k) continue;
      s += " - " + xk(j) + "*(1 + " + xk(j) + ")";
    }
    s += " = 0;\n";
  }
  return s;
}

std::string more_cosnard_text(int n, int tail_exponent) {
  assert(n >= 2);
  assert(tail_exponent == 2 || tail_exponent == 3);
  const std::string tail = "^" + std::to_string(tail_exponent);
  std::string s;
  for (int k = 1; k <= n; ++k) s += var_decl(xk(k), "[-1e8,0]");
  for (int k = 1; k <= n; ++k) {
    std::string head;  // (1 - t_k) * sum_{j<=k} t_j (x_j + t_j + 1)^3
    for (int j = 1; j <= k; ++j) {
      if (j > 1) head += " + ";
      head += tj(j, n) + "*(" + xk(j) + " + " + tj(j, n) + " + 1)^3";
    }
    s += xk(k) + " + 0.5*((1 - " + tj(k, n) + ")*(" + head + ")";
    if (k < n) {  // t_k * sum_{j>k} (1 - t_j)(x_j + t_j + 1)^e; empty at k=n
      std::string rest;
      for (int j = k + 1; j <= n; ++j) {
        if (j > k + 1) rest += " + ";
        rest += "(1 - " + tj(j, n) + ")*(" + xk(j) + " + " + tj(j, n) +
                " + 1)" + tail;
      }
      s += " + " + tj(k, n) + "*(" + rest + ")";
    }
    s += ") = 0;\n";
  }
  return s;
}

std::string feigenbaum_text(int n) {
  assert(n >= 2);
  std::string s;
  for (int k = 1; k <= n; ++k) s += var_decl(xk(k), "[0,100]");
  for (int k = 1; k <= n; ++k)
    s += "-3.84*" + xk(k) + "^2 + 3.84*" + xk(k) + " - " +
         xk(k == n ? 1 : k + 1) + " = 0;\n";
  return s;
}

std::string feigenbaum_factored_text(int n) {
  assert(n >= 2);
  std::string s;
  for (int k = 1; k <= n; ++k) s += var_decl(xk(k), "[0,100]");
  // Completed square of -3.84 x^2 + 3.84 x; 3.84/4 = 0.96 is exact as a
  // decimal, so the rewrite changes nothing over the reals while letting
  // every variable occur once.
  for (int k = 1; k <= n; ++k)
    s += "-3.84*(" + xk(k) + " - 0.5)^2 + 0.96 - " + xk(k == n ? 1 : k + 1) +
         " = 0;\n";
  return s;
}

Problem bratu(int n) { return parse_problem(bratu_text(n)); }

Problem broyden_banded(int n) {
  return parse_problem(broyden_banded_text(n));
}

Problem more_cosnard(int n, int tail_exponent) {
  return parse_problem(more_cosnard_text(n, tail_exponent));
}

Problem feigenbaum(int n) { return parse_problem(feigenbaum_text(n)); }

Problem feigenbaum_factored(int n) {
  return parse_problem(feigenbaum_factored_text(n));
}

const std::vector<std::string_view>& family_names() {
  static const std::vector<std::string_view> names = {
      "bratu", "broyden_banded", "more_cosnard", "feigenbaum",
      "feigenbaum_factored"};
  return names;
}

std::optional<Problem> make_family(std::string_view family, int n) {
  if (family == "bratu") return bratu(n);
  if (family == "broyden_banded") return broyden_banded(n);
  if (family == "more_cosnard") return more_cosnard(n);
  if (family == "feigenbaum") return feigenbaum(n);
  if (family == "feigenbaum_factored") return feigenbaum_factored(n);
  return std::nullopt;
}

namespace {

bool is_literal_zero(const Expr& e) {
  return e.kind == ExprKind::Const && e.value.lo() == 0.0 &&
         e.value.hi() == 0.0;
}

int equation_nodes(const Constraint& c) {
  int n = 0;
  if (!is_literal_zero(*c.lhs)) n += node_count(*c.lhs);
  if (!is_literal_zero(*c.rhs)) n += node_count(*c.rhs);
  return n;
}

}  // namespace

int problem_node_count(const Problem& p) {
  int best = 0;
  for (const Constraint& c : p.constraints)
    best = std::max(best, equation_nodes(c));
  return best;
}

std::vector<BenchRow> run_suite(const std::vector<BenchSpec>& specs) {
  static const Method kAll[] = {Method::Hc3, Method::Hc3sb, Method::Hc4,
                                Method::Hc4sb};
  std::vector<BenchRow> rows;
  for (const BenchSpec& spec : specs) {
    std::optional<Problem> p = make_family(spec.family, spec.n);
    if (!p) throw std::invalid_argument("unknown family: " + spec.family);
    const int nodes = problem_node_count(*p);
    const std::vector<Method> methods =
        spec.methods.empty() ? std::vector<Method>(std::begin(kAll),
                                                   std::end(kAll))
                             : spec.methods;
    for (Method m : methods) {
      SolveLimits lim;
      lim.timeout = spec.timeout;
      lim.max_boxes = spec.max_boxes;
      SolveResult r = solve_problem(*p, m, spec.eps, lim);
      BenchRow row;
      row.family = spec.family;
      row.n = spec.n;
      row.nodes = nodes;
      row.method = m;
      row.status = r.status;
      row.solutions = r.solutions.size();
      row.stats = r.stats;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::string s =
      "family,n,method,status,solutions,projections,revise_calls,enqueues,"
      "seconds\n";
  char buf[256];
  for (const BenchRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%d,%s,%s,%zu,%lld,%lld,%lld,%.6f\n",
                  r.family.c_str(), r.n, std::string(method_name(r.method)).c_str(),
                  status_name(r.status), r.solutions, r.stats.projections,
                  r.stats.revise_calls, r.stats.enqueues, r.stats.wall_time);
    s += buf;
  }
  return s;
}

std::string ratios_csv(const std::vector<BenchRow>& rows) {
  std::string s = "family,n,nodes,pair,ratio\n";
  char buf[160];
  // Group key = (family, n) in first-appearance order.
  std::vector<std::pair<std::string, int>> keys;
  for (const BenchRow& r : rows) {
    std::pair<std::string, int> key{r.family, r.n};
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      keys.push_back(std::move(key));
  }
  auto find_row = [&rows](const std::pair<std::string, int>& key,
                          Method m) -> const BenchRow* {
    for (const BenchRow& r : rows)
      if (r.family == key.first && r.n == key.second && r.method == m &&
          r.status == SolveStatus::complete)
        return &r;
    return nullptr;
  };
  const std::pair<Method, Method> pairs[] = {
      {Method::Hc3, Method::Hc4}, {Method::Hc3sb, Method::Hc4sb}};
  for (const auto& key : keys) {
    for (const auto& [num, den] : pairs) {
      const BenchRow* a = find_row(key, num);
      const BenchRow* b = find_row(key, den);
      if (!a || !b || b->stats.projections <= 0) continue;
      std::snprintf(buf, sizeof buf, "%s,%d,%d,%s/%s,%.6g\n",
                    key.first.c_str(), key.second, a->nodes,
                    std::string(method_name(num)).c_str(),
                    std::string(method_name(den)).c_str(),
                    static_cast<double>(a->stats.projections) /
                        static_cast<double>(b->stats.projections));
      s += buf;
    }
  }
  return s;
}

}  // namespace bcs
