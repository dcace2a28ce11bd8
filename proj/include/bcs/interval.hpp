#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace bcs {

// Closed interval over double endpoints. All forward operations round
// outward, so the exact real image of the inputs is contained in the result.
// Empty is the canonical (+inf, -inf) pair: a dedicated sentinel, never NaN,
// so equality and hashing stay well-defined. -0 is normalized to +0 and
// [+inf,+inf] / [-inf,-inf] collapse to Empty (they contain no real).
class Interval {
 public:
  Interval() : lo_(-inf()), hi_(inf()) {}
  Interval(double lo, double hi);

  static Interval empty();
  static Interval entire() { return Interval(); }
  static Interval point(double v) { return Interval(v, v); }

  bool is_empty() const { return lo_ > hi_; }
  bool is_point() const { return lo_ == hi_; }
  bool is_entire() const { return lo_ == -inf() && hi_ == inf(); }

  // Endpoints of Empty are (+inf, -inf); callers normally test is_empty first.
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  bool contains(double v) const { return lo_ <= v && v <= hi_; }
  bool contains(const Interval& o) const {
    return o.is_empty() || (lo_ <= o.lo_ && o.hi_ <= hi_);
  }
  bool intersects(const Interval& o) const {
    return !is_empty() && !o.is_empty() && lo_ <= o.hi_ && o.lo_ <= hi_;
  }

  bool operator==(const Interval& o) const {
    return lo_ == o.lo_ && hi_ == o.hi_;
  }
  bool operator!=(const Interval& o) const { return !(*this == o); }

  static double inf() { return std::numeric_limits<double>::infinity(); }

 private:
  double lo_, hi_;
};

// Forward arithmetic.
Interval add(const Interval& a, const Interval& b);
Interval sub(const Interval& a, const Interval& b);
Interval mul(const Interval& a, const Interval& b);
// Division by a zero-straddling divisor yields the hull of the two
// extended-division branches (a single interval, possibly entire).
// div(a, [0,0]) is entire when 0 in a, Empty otherwise.
Interval div(const Interval& a, const Interval& b);
Interval neg(const Interval& a);
Interval pow_int(const Interval& a, int n);  // n >= 1
Interval exp(const Interval& a);
Interval cos(const Interval& a);
Interval sqrt(const Interval& a);

// Inverse (relational) projections. Results are hulls of the solution set;
// callers intersect with the current domain.
Interval inv_add(const Interval& z, const Interval& y);  // x with x + y = z
Interval inv_mul(const Interval& z, const Interval& y);  // x with x * y = z
Interval inv_pow_even(const Interval& a, int n = 2);     // hull(+-nthroot(a))
Interval inv_pow_odd(const Interval& a, int n = 3);
Interval inv_exp(const Interval& z);
// All arccos branches over the caller's current domain, intersected
// branch-wise with it and hulled; finite because the domain bounds the
// branch count.
Interval inv_cos(const Interval& z, const Interval& domain);

// Branch decompositions backing div/inv_mul; exposed for the projection
// operators, which intersect each branch with the current domain before
// hulling (tighter than hulling first).
//
// quotient_branches: {a/b | a in A, b in B, b != 0} as 0..2 maximal intervals.
// rel_mul_branches:  {t | exists a in A, b in B with t*b = a}; differs from
// the quotient set exactly when 0 in A and 0 in B (any t solves t*0 = 0).
int quotient_branches(const Interval& a, const Interval& b, Interval out[2]);
int rel_mul_branches(const Interval& a, const Interval& b, Interval out[2]);

Interval hull(const Interval& a, const Interval& b);
Interval hull(const std::vector<Interval>& xs);
Interval intersect(const Interval& a, const Interval& b);

double width(const Interval& a);     // hi - lo rounded up; 0 for Empty
double midpoint(const Interval& a);  // finite; strictly inside when possible
std::pair<Interval, Interval> split(const Interval& a);

// "[lo,hi]" with 17 significant digits (round-trip exact), "empty",
// "-inf"/"inf" endpoints.
std::string to_string(const Interval& a);

namespace detail {
double next_up(double x);
double next_down(double x);
// Directed scalar kernels (exact-aware: endpoints are widened only when the
// round-to-nearest result is provably inexact).
double add_down(double a, double b);
double add_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_down(double a);
double sqrt_up(double a);
double pow_down(double x, int n);
double pow_up(double x, int n);
double root_down(double x, int n);
double root_up(double x, int n);
double log_down(double x);
double log_up(double x);
double exp_down(double x);
double exp_up(double x);
}  // namespace detail

}  // namespace bcs
