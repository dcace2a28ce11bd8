#include "bcs/solve.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bcs/expr.hpp"
#include "bcs/interval.hpp"
#include "doctest.h"

using namespace bcs;

namespace {

const Method kMethods[] = {Method::Hc3, Method::Hc3sb, Method::Hc4,
                           Method::Hc4sb};

bool some_box_contains(const std::vector<Box>& boxes,
                       const std::vector<double>& pt) {
  for (const Box& b : boxes) {
    bool inside = true;
    for (size_t i = 0; i < pt.size() && inside; ++i)
      inside = b[i].contains(pt[i]);
    if (inside) return true;
  }
  return false;
}

double max_width(const Box& b) {
  double w = 0.0;
  for (const Interval& d : b) w = std::max(w, width(d));
  return w;
}

Box box1(double lo, double hi) { return {Interval(lo, hi)}; }

Box box2(double alo, double ahi, double blo, double bhi) {
  return {Interval(alo, ahi), Interval(blo, bhi)};
}

const char* kFeigenbaum4 =
    "var x1 in [0,100]; var x2 in [0,100];"
    "var x3 in [0,100]; var x4 in [0,100];"
    "-3.84*x1^2 + 3.84*x1 - x2 = 0;"
    "-3.84*x2^2 + 3.84*x2 - x3 = 0;"
    "-3.84*x3^2 + 3.84*x3 - x4 = 0;"
    "-3.84*x4^2 + 3.84*x4 - x1 = 0;";

}  // namespace

TEST_CASE("status names") {
  CHECK(std::string(status_name(SolveStatus::complete)) == "complete");
  CHECK(std::string(status_name(SolveStatus::empty)) == "empty");
  CHECK(std::string(status_name(SolveStatus::box_limit)) == "box_limit");
  CHECK(std::string(status_name(SolveStatus::timeout)) == "timeout");
}

TEST_CASE("quadratic with two symmetric roots") {
  Problem p = parse_problem("var x in [-10,10]; x^2 = 4;");
  for (Method m : kMethods) {
    CAPTURE(method_name(m));
    SolveResult r = solve_problem(p, m, 1e-8);
    CHECK(r.status == SolveStatus::complete);
    REQUIRE(r.solutions.size() == 2);
    // Left-first emission: the negative root comes out first.
    CHECK(r.solutions[0][0].contains(-2.0));
    CHECK(r.solutions[1][0].contains(2.0));
    for (const Box& b : r.solutions) {
      CHECK(max_width(b) <= 1e-8);
      CHECK(certify(p, b));
    }
    CHECK(r.stats.revise_calls > 0);
    CHECK(r.stats.projections > 0);
    CHECK(r.stats.wall_time > 0.0);
  }
}

TEST_CASE("linear point system: straddled root merges to one box") {
  Problem p = parse_problem(
      "var x in [-10,10]; var y in [-10,10]; x + y = 1; x - y = 0;");
  for (Method m : kMethods) {
    CAPTURE(method_name(m));
    SolveResult r = solve_problem(p, m, 1e-8);
    CHECK(r.status == SolveStatus::complete);
    REQUIRE(r.solutions.size() == 1);
    CHECK(r.solutions[0][0].contains(0.5));
    CHECK(r.solutions[0][1].contains(0.5));
    CHECK(certify(p, r.solutions[0]));
  }
}

TEST_CASE("inconsistent system completes with zero solutions") {
  Problem p = parse_problem("var x in [-10,10]; x = 1; x = 2;");
  for (Method m : kMethods) {
    CAPTURE(method_name(m));
    SolveResult r = solve_problem(p, m, 1e-8);
    CHECK(r.status == SolveStatus::complete);
    CHECK(r.solutions.empty());
    CHECK(r.stats.revise_calls >= 1);
  }
}

TEST_CASE("empty initial box reports empty and does no work") {
  Problem p = parse_problem("var x in [-10,10]; x^2 = 4;");
  Box d0 = p.domains;
  d0[0] = Interval::empty();
  SolveResult r = branch_and_prune(p, Method::Hc4, 1e-8, d0);
  CHECK(r.status == SolveStatus::empty);
  CHECK(r.solutions.empty());
  CHECK(r.stats.revise_calls == 0);
  CHECK(r.stats.projections == 0);
}

TEST_CASE("resource limits are reported distinctly from complete") {
  Problem p = parse_problem("var x in [-10,10]; x^2 = 4;");

  SolveLimits one;
  one.max_boxes = 1;
  SolveResult r = solve_problem(p, Method::Hc4, 1e-8, one);
  CHECK(r.status == SolveStatus::box_limit);
  REQUIRE(r.solutions.size() == 1);
  CHECK(r.solutions[0][0].contains(-2.0));

  SolveLimits plenty;
  plenty.max_boxes = 10;
  r = solve_problem(p, Method::Hc4, 1e-8, plenty);
  CHECK(r.status == SolveStatus::complete);
  CHECK(r.solutions.size() == 2);

  SolveLimits instant;
  instant.timeout = 1e-12;  // expires before the first node is popped
  r = solve_problem(p, Method::Hc4, 1e-8, instant);
  CHECK(r.status == SolveStatus::timeout);
  CHECK(r.solutions.empty());
}

TEST_CASE("merge_adjacent") {
  SUBCASE("shared facet merges to the hull") {
    auto out = merge_adjacent({box2(0, 1, 0, 1), box2(1, 2, 0, 1)});
    REQUIRE(out.size() == 1);
    CHECK(out[0][0].lo() == 0.0);
    CHECK(out[0][0].hi() == 2.0);
    CHECK(out[0][1].lo() == 0.0);
    CHECK(out[0][1].hi() == 1.0);
  }
  SUBCASE("one-ulp gap still merges, two ulps does not") {
    const double g1 = detail::next_up(1.0);
    CHECK(merge_adjacent({box1(0, 1), box1(g1, 2)}).size() == 1);
    const double g2 = detail::next_up(detail::next_up(1.0));
    CHECK(merge_adjacent({box1(0, 1), box1(g2, 2)}).size() == 2);
  }
  SUBCASE("corner contact counts as touching") {
    auto out = merge_adjacent({box2(0, 1, 0, 1), box2(1, 2, 1, 2)});
    CHECK(out.size() == 1);
  }
  SUBCASE("chain collapses transitively") {
    auto out = merge_adjacent({box1(0, 1), box1(2, 3), box1(1, 2)});
    REQUIRE(out.size() == 1);
    CHECK(out[0][0].lo() == 0.0);
    CHECK(out[0][0].hi() == 3.0);
  }
  SUBCASE("separated boxes survive in first-emission order") {
    auto out = merge_adjacent({box1(5, 6), box1(0, 1)});
    REQUIRE(out.size() == 2);
    CHECK(out[0][0].lo() == 5.0);
    CHECK(out[1][0].lo() == 0.0);
  }
  SUBCASE("empty input") { CHECK(merge_adjacent({}).empty()); }
}

TEST_CASE("multi-root isolation: cosine on [0,20]") {
  Problem p = parse_problem("var x in [0,20]; cos(x) = 0;");
  // Roots pi/2 + k*pi for k = 0..5; the next one, ~20.42, is outside.
  std::vector<double> roots;
  for (int k = 0; k < 6; ++k)
    roots.push_back(std::numbers::pi * (0.5 + k));

  std::vector<size_t> counts;
  for (Method m : kMethods) {
    CAPTURE(method_name(m));
    SolveResult r = solve_problem(p, m, 1e-8);
    CHECK(r.status == SolveStatus::complete);
    REQUIRE(r.solutions.size() == 6);
    counts.push_back(r.solutions.size());
    for (size_t k = 0; k < roots.size(); ++k) {
      CHECK(r.solutions[k][0].contains(roots[k]));
      // A merged cluster stays a small multiple of eps wide.
      CHECK(max_width(r.solutions[k]) <= 4e-8);
      CHECK(certify(p, r.solutions[k]));
    }
    // Distinct roots must not have been glued together.
    for (size_t k = 0; k + 1 < r.solutions.size(); ++k)
      CHECK(r.solutions[k][0].hi() < r.solutions[k + 1][0].lo());
  }
  for (size_t c : counts) CHECK(c == counts[0]);
}

TEST_CASE("irrational roots are enclosed") {
  Problem p = parse_problem("var x in [-10,10]; x^2 = 2;");
  for (Method m : kMethods) {
    CAPTURE(method_name(m));
    SolveResult r = solve_problem(p, m, 1e-8);
    REQUIRE(r.solutions.size() == 2);
    CHECK(r.solutions[0][0].contains(-std::sqrt(2.0)));
    CHECK(r.solutions[1][0].contains(std::sqrt(2.0)));
  }
}

TEST_CASE("expanded quadratics cover their factored roots") {
  // Roots are chosen first, the solver sees only the expanded coefficients.
  // Coefficient rounding moves each true root by ~1e-15, far inside the
  // 1e-8 boxes, so containment of the chosen roots is a valid oracle.
  std::mt19937 rng(8151u);
  for (int iter = 0; iter < 20; ++iter) {
    const double a = -3.0 + static_cast<double>(rng() % 6001) / 1000.0;
    const double b =
        a + 0.1 + static_cast<double>(rng() % 3000) / 1000.0;
    char text[160];
    std::snprintf(text, sizeof text,
                  "var x in [-10,10]; x^2 + (%.17g)*x + (%.17g) = 0;",
                  -(a + b), a * b);
    CAPTURE(text);
    Problem p = parse_problem(text);
    for (Method m : {Method::Hc3, Method::Hc4}) {
      CAPTURE(method_name(m));
      SolveResult r = solve_problem(p, m, 1e-8);
      CHECK(r.status == SolveStatus::complete);
      REQUIRE(r.solutions.size() == 2);
      CHECK(some_box_contains(r.solutions, {a}));
      CHECK(some_box_contains(r.solutions, {b}));
      for (const Box& box : r.solutions) CHECK(certify(p, box));
    }
  }
}

TEST_CASE("logistic fixed points") {
  Problem p = parse_problem("var x in [0,100]; -3.84*x^2 + 3.84*x - x = 0;");
  for (Method m : kMethods) {
    CAPTURE(method_name(m));
    SolveResult r = solve_problem(p, m, 1e-8);
    REQUIRE(r.solutions.size() == 2);
    CHECK(some_box_contains(r.solutions, {0.0}));
    CHECK(some_box_contains(r.solutions, {2.84 / 3.84}));
  }
}

TEST_CASE("feigenbaum(4): same solution count across methods") {
  Problem p = parse_problem(kFeigenbaum4);
  std::vector<size_t> counts;
  for (Method m : kMethods) {
    CAPTURE(method_name(m));
    SolveResult r = solve_problem(p, m, 1e-8);
    CHECK(r.status == SolveStatus::complete);
    CHECK(r.solutions.size() >= 2);  // at least the two fixed points
    counts.push_back(r.solutions.size());
    for (const Box& b : r.solutions) {
      CHECK(max_width(b) <= 1e-7);
      CHECK(certify(p, b));
    }
  }
  for (size_t c : counts) CHECK(c == counts[0]);
  // The two fixed points of the cyclic map: all-zero and all (1 - 1/3.84).
  SolveResult r = solve_problem(p, Method::Hc4, 1e-8);
  const double fp = 1.0 - 1.0 / 3.84;
  CHECK(some_box_contains(r.solutions, {0.0, 0.0, 0.0, 0.0}));
  CHECK(some_box_contains(r.solutions, {fp, fp, fp, fp}));
}

TEST_CASE("certify is a refutation check, not an existence proof") {
  Problem p = parse_problem("var x in [-10,10]; x^2 = 4;");
  CHECK(certify(p, box1(2, 2)));
  CHECK(certify(p, box1(-2, -2)));
  CHECK_FALSE(certify(p, box1(3, 3)));
  CHECK_FALSE(certify(p, {Interval::empty()}));
  // Non-exclusion: a fat box straddling the roots passes trivially.
  CHECK(certify(p, box1(-10, 10)));
}

TEST_CASE("solves are deterministic") {
  Problem p = parse_problem("var x in [0,20]; cos(x) = 0;");
  SolveResult r1 = solve_problem(p, Method::Hc4, 1e-8);
  SolveResult r2 = solve_problem(p, Method::Hc4, 1e-8);
  REQUIRE(r1.solutions.size() == r2.solutions.size());
  for (size_t i = 0; i < r1.solutions.size(); ++i) {
    CHECK(r1.solutions[i][0].lo() == r2.solutions[i][0].lo());
    CHECK(r1.solutions[i][0].hi() == r2.solutions[i][0].hi());
  }
  CHECK(r1.stats.projections == r2.stats.projections);
  CHECK(r1.stats.revise_calls == r2.stats.revise_calls);
  CHECK(r1.stats.enqueues == r2.stats.enqueues);
}
