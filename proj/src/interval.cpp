#include "bcs/interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>

namespace bcs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMax = std::numeric_limits<double>::max();
// Below this magnitude FMA residuals may fall into the subnormal range and
// stop being exact, so results are widened unconditionally.
constexpr double kTiny = 1e-290;

double norm_zero(double v) { return v == 0.0 ? 0.0 : v; }

}  // namespace

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo_) || std::isnan(hi_) || lo_ > hi_ || lo_ == kInf ||
      hi_ == -kInf) {
    lo_ = kInf;
    hi_ = -kInf;
    return;
  }
  lo_ = norm_zero(lo_);
  hi_ = norm_zero(hi_);
}

Interval Interval::empty() {
  Interval r;
  r.lo_ = kInf;
  r.hi_ = -kInf;
  return r;
}

namespace detail {

double next_up(double x) {
  if (x == kInf) return x;
  return std::nextafter(x, kInf);
}

double next_down(double x) {
  if (x == -kInf) return x;
  return std::nextafter(x, -kInf);
}

// 2Sum: for finite a, b with a+b not overflowing, s + err == a + b exactly.
static double two_sum_err(double a, double b, double s) {
  double bv = s - a;
  double av = s - bv;
  return (a - av) + (b - bv);
}

double add_down(double a, double b) {
  double s = a + b;
  if (std::isnan(s)) return -kInf;  // opposite infinities
  if (s == kInf) return (std::isinf(a) || std::isinf(b)) ? kInf : kMax;
  if (s == -kInf) return s;
  double err = two_sum_err(a, b, s);
  return err < 0 ? next_down(s) : s;
}

double add_up(double a, double b) {
  double s = a + b;
  if (std::isnan(s)) return kInf;
  if (s == -kInf) return (std::isinf(a) || std::isinf(b)) ? -kInf : -kMax;
  if (s == kInf) return s;
  double err = two_sum_err(a, b, s);
  return err > 0 ? next_up(s) : s;
}

// Endpoint products use the 0 * inf = 0 convention, which is the correct
// corner value in interval min/max scans.
double mul_down(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  double p = a * b;
  if (std::isnan(p)) return -kInf;
  if (p == kInf) return (std::isinf(a) || std::isinf(b)) ? kInf : kMax;
  if (p == -kInf) return p;
  if (std::fabs(p) < kTiny) {
    // fma may underflow here; widen, but never step past the known sign
    double w = next_down(p);
    if ((a > 0) == (b > 0) && w < 0) w = 0.0;
    return w;
  }
  double e = std::fma(a, b, -p);
  return e < 0 ? next_down(p) : p;
}

double mul_up(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  double p = a * b;
  if (std::isnan(p)) return kInf;
  if (p == -kInf) return (std::isinf(a) || std::isinf(b)) ? -kInf : -kMax;
  if (p == kInf) return p;
  if (std::fabs(p) < kTiny) {
    double w = next_up(p);
    if ((a > 0) != (b > 0) && w > 0) w = 0.0;
    return w;
  }
  double e = std::fma(a, b, -p);
  return e > 0 ? next_up(p) : p;
}

// Callers never pass b == 0; a/inf uses the closed-hull limit value 0.
double div_down(double a, double b) {
  if (a == 0.0) return 0.0;
  if (std::isinf(b)) {
    if (std::isinf(a)) return -kInf;  // indeterminate corner, stay sound
    return 0.0;
  }
  if (std::isinf(a)) return (a > 0) == (b > 0) ? kInf : -kInf;
  double q = a / b;
  if (q == kInf) return kMax;
  if (q == -kInf) return q;
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) {
    double w = next_down(q);
    if ((a > 0) == (b > 0) && w < 0) w = 0.0;
    return w;
  }
  double r = std::fma(q, b, -a);  // exact: q*b - a
  // true quotient = q - r/b
  bool below = (r > 0) == (b > 0);  // r/b > 0
  if (r == 0.0) return q;
  return below ? next_down(q) : q;
}

double div_up(double a, double b) {
  if (a == 0.0) return 0.0;
  if (std::isinf(b)) {
    if (std::isinf(a)) return kInf;
    return 0.0;
  }
  if (std::isinf(a)) return (a > 0) == (b > 0) ? kInf : -kInf;
  double q = a / b;
  if (q == -kInf) return -kMax;
  if (q == kInf) return q;
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) {
    double w = next_up(q);
    if ((a > 0) != (b > 0) && w > 0) w = 0.0;
    return w;
  }
  double r = std::fma(q, b, -a);
  bool above = (r < 0) == (b > 0);  // r/b < 0 => true > q
  if (r == 0.0) return q;
  return above ? next_up(q) : q;
}

double sqrt_down(double a) {
  if (a <= 0.0) return 0.0;
  if (std::isinf(a)) return kInf;
  double s = std::sqrt(a);
  if (a < std::numeric_limits<double>::min()) return next_down(s);
  double r = std::fma(s, s, -a);  // exact when s*s is normal
  return r > 0 ? next_down(s) : s;
}

double sqrt_up(double a) {
  if (a <= 0.0) return 0.0;
  if (std::isinf(a)) return kInf;
  double s = std::sqrt(a);
  if (a < std::numeric_limits<double>::min()) return next_up(s);
  double r = std::fma(s, s, -a);
  return r < 0 ? next_up(s) : s;
}

// x^n by binary exponentiation with directed rounding per step. All factors
// share a sign regime: x >= 0 here, odd negative bases are handled via
// -pow(-x) with the opposite direction.
double pow_down(double x, int n) {
  if (n == 1) return x;
  if (x < 0) return (n % 2 != 0) ? -pow_up(-x, n) : pow_down(-x, n);
  double acc = 1.0, base = x;
  unsigned m = static_cast<unsigned>(n);
  while (m != 0) {
    if (m & 1u) acc = mul_down(acc, base);
    m >>= 1;
    if (m != 0) base = mul_down(base, base);
  }
  return acc;
}

double pow_up(double x, int n) {
  if (n == 1) return x;
  if (x < 0) return (n % 2 != 0) ? -pow_down(-x, n) : pow_up(-x, n);
  double acc = 1.0, base = x;
  unsigned m = static_cast<unsigned>(n);
  while (m != 0) {
    if (m & 1u) acc = mul_up(acc, base);
    m >>= 1;
    if (m != 0) base = mul_up(base, base);
  }
  return acc;
}

// n-th roots come from MPFR at double precision: a libm estimate plus a few
// ulp nudges is not enough, the seed can be hundreds of ulps off near the
// extremes of the exponent range.
static double root_dir(double x, int n, mpfr_rnd_t rnd) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_d(t, x, MPFR_RNDN);  // exact: x is a double
  mpfr_rootn_ui(t, t, static_cast<unsigned long>(n), rnd);
  double r = mpfr_get_d(t, rnd);
  mpfr_clear(t);
  return r;
}

double root_down(double x, int n) {
  if (x == 0.0) return 0.0;
  if (x < 0) return -root_up(-x, n);  // odd-root callers only
  if (std::isinf(x)) return kInf;
  if (n == 1) return x;
  if (n == 2) return sqrt_down(x);
  return root_dir(x, n, MPFR_RNDD);
}

double root_up(double x, int n) {
  if (x == 0.0) return 0.0;
  if (x < 0) return -root_down(-x, n);
  if (std::isinf(x)) return kInf;
  if (n == 1) return x;
  if (n == 2) return sqrt_up(x);
  return root_dir(x, n, MPFR_RNDU);
}

// exp goes through MPFR as well: correctly rounded endpoints keep exact
// values exact (exp(0) = 1), where nudging libm would widen them.
static double exp_dir(double x, mpfr_rnd_t rnd) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_d(t, x, MPFR_RNDN);  // exact: x is a double
  mpfr_exp(t, t, rnd);
  double r = mpfr_get_d(t, rnd);
  mpfr_clear(t);
  return r;
}

double exp_down(double x) {
  if (x == -kInf) return 0.0;
  if (x == kInf) return kInf;
  return std::fmax(exp_dir(x, MPFR_RNDD), 0.0);
}

double exp_up(double x) {
  if (x == -kInf) return next_up(0.0);  // exp > 0, but stay above the limit
  if (x == kInf) return kInf;
  double r = exp_dir(x, MPFR_RNDU);
  return r == 0.0 ? next_up(0.0) : r;
}

// log and acos delegate to MPFR's correctly-rounded directed modes: a
// verified-nudge loop cannot settle near their flat spots (log near 1,
// acos near +-1), where one ulp of argument moves the function by far
// less than one ulp of value.
double log_down(double x) {
  if (x <= 0.0) return -kInf;
  if (std::isinf(x)) return kMax;  // log(DBL_MAX) < 710, any finite cap works
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_d(t, x, MPFR_RNDN);  // exact: x is a double
  mpfr_log(t, t, MPFR_RNDD);
  double r = mpfr_get_d(t, MPFR_RNDD);
  mpfr_clear(t);
  return r;
}

double log_up(double x) {
  if (x <= 0.0) return -kInf;
  if (std::isinf(x)) return kInf;
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_d(t, x, MPFR_RNDN);
  mpfr_log(t, t, MPFR_RNDU);
  double r = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

}  // namespace detail

using namespace detail;

Interval add(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return Interval(add_down(a.lo(), b.lo()), add_up(a.hi(), b.hi()));
}

Interval sub(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return Interval(add_down(a.lo(), -b.hi()), add_up(a.hi(), -b.lo()));
}

Interval neg(const Interval& a) {
  if (a.is_empty()) return a;
  return Interval(-a.hi(), -a.lo());
}

Interval mul(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  const double cl[4] = {mul_down(a.lo(), b.lo()), mul_down(a.lo(), b.hi()),
                        mul_down(a.hi(), b.lo()), mul_down(a.hi(), b.hi())};
  const double cu[4] = {mul_up(a.lo(), b.lo()), mul_up(a.lo(), b.hi()),
                        mul_up(a.hi(), b.lo()), mul_up(a.hi(), b.hi())};
  return Interval(*std::min_element(cl, cl + 4), *std::max_element(cu, cu + 4));
}

namespace {

// 0 not in b. Endpoints are picked by the sign cases of the quotient rather
// than a 4-corner scan: a corner scan would form inf/inf corners on unbounded
// operands, and those have no sound-and-tight corner value. The chosen
// corners pair an infinity with a finite endpoint at most, where div_down /
// div_up give the correct closed-hull limits.
Interval div_basic(const Interval& a, const Interval& b) {
  double lo, hi;
  if (b.lo() > 0) {
    lo = a.lo() >= 0 ? div_down(a.lo(), b.hi()) : div_down(a.lo(), b.lo());
    hi = a.hi() <= 0 ? div_up(a.hi(), b.hi()) : div_up(a.hi(), b.lo());
  } else {  // b.hi() < 0
    lo = a.hi() <= 0 ? div_down(a.hi(), b.lo()) : div_down(a.hi(), b.hi());
    hi = a.lo() >= 0 ? div_up(a.lo(), b.lo()) : div_up(a.lo(), b.hi());
  }
  return Interval(lo, hi);
}

}  // namespace

int quotient_branches(const Interval& a, const Interval& b, Interval out[2]) {
  if (a.is_empty() || b.is_empty()) return 0;
  if (b == Interval::point(0.0)) return 0;  // no b != 0 available
  if (!b.contains(0.0)) {
    out[0] = div_basic(a, b);
    return 1;
  }
  const bool bneg = b.lo() < 0, bpos = b.hi() > 0;
  if (a.contains(0.0)) {
    if (a == Interval::point(0.0)) {
      out[0] = Interval::point(0.0);
      return 1;
    }
    if (a.lo() < 0 && a.hi() > 0) {
      out[0] = Interval::entire();
      return 1;
    }
    if (a.lo() == 0.0) {  // a = [0, a2], a2 > 0
      out[0] = (bneg && bpos) ? Interval::entire()
               : bpos         ? Interval(0.0, kInf)
                              : Interval(-kInf, 0.0);
    } else {  // a = [a1, 0], a1 < 0
      out[0] = (bneg && bpos) ? Interval::entire()
               : bpos         ? Interval(-kInf, 0.0)
                              : Interval(0.0, kInf);
    }
    return 1;
  }
  Interval neg_side, pos_side;
  if (a.hi() < 0) {
    neg_side = Interval(-kInf, div_up(a.hi(), b.hi()));   // b in (0, b2]
    pos_side = Interval(div_down(a.hi(), b.lo()), kInf);  // b in [b1, 0)
  } else {  // a.lo() > 0
    neg_side = Interval(-kInf, div_up(a.lo(), b.lo()));
    pos_side = Interval(div_down(a.lo(), b.hi()), kInf);
  }
  if (bneg && bpos) {
    out[0] = neg_side;
    out[1] = pos_side;
    return 2;
  }
  out[0] = (a.hi() < 0) == bpos ? neg_side : pos_side;
  return 1;
}

int rel_mul_branches(const Interval& a, const Interval& b, Interval out[2]) {
  if (a.is_empty() || b.is_empty()) return 0;
  if (b == Interval::point(0.0)) {
    if (!a.contains(0.0)) return 0;
    out[0] = Interval::entire();
    return 1;
  }
  if (a.contains(0.0) && b.contains(0.0)) {
    out[0] = Interval::entire();
    return 1;
  }
  return quotient_branches(a, b, out);
}

Interval div(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  if (b == Interval::point(0.0))
    return a.contains(0.0) ? Interval::entire() : Interval::empty();
  Interval br[2];
  int n = quotient_branches(a, b, br);
  if (n == 0) return Interval::empty();
  return n == 1 ? br[0] : hull(br[0], br[1]);
}

Interval pow_int(const Interval& a, int n) {
  assert(n >= 1);
  if (a.is_empty()) return a;
  if (n == 1) return a;
  if (n % 2 != 0)
    return Interval(pow_down(a.lo(), n), pow_up(a.hi(), n));
  double mlo, mhi;  // min/max magnitude
  if (a.contains(0.0)) {
    mlo = 0.0;
    mhi = std::fmax(-a.lo(), a.hi());
    return Interval(0.0, pow_up(mhi, n));
  }
  if (a.hi() < 0) {
    mlo = -a.hi();
    mhi = -a.lo();
  } else {
    mlo = a.lo();
    mhi = a.hi();
  }
  return Interval(pow_down(mlo, n), pow_up(mhi, n));
}

Interval exp(const Interval& a) {
  if (a.is_empty()) return a;
  return Interval(exp_down(a.lo()), exp_up(a.hi()));
}

Interval sqrt(const Interval& a) {
  if (a.is_empty()) return a;
  if (a.hi() < 0) return Interval::empty();
  double lo = a.lo() <= 0 ? 0.0 : sqrt_down(a.lo());
  return Interval(lo, sqrt_up(a.hi()));
}

namespace {

Interval pi_interval() {
  return Interval(next_down(M_PI), next_up(M_PI));
}

Interval tau_interval() {
  Interval pi = pi_interval();
  return Interval(mul_down(2.0, pi.lo()), mul_up(2.0, pi.hi()));
}

// Conservative: may answer true near the boundary, never false when an
// integer lies inside.
bool contains_integer(const Interval& q) {
  if (q.is_empty()) return false;
  if (std::isinf(q.lo()) || std::isinf(q.hi())) return true;
  if (width(q) >= 1.0) return true;
  return std::ceil(q.lo()) <= std::floor(q.hi());
}

double cos_pt_down(double x) {
  return std::fmax(next_down(next_down(std::cos(x))), -1.0);
}

double cos_pt_up(double x) {
  return std::fmin(next_up(next_up(std::cos(x))), 1.0);
}

}  // namespace

Interval cos(const Interval& a) {
  if (a.is_empty()) return a;
  if (std::isinf(a.lo()) || std::isinf(a.hi())) return Interval(-1.0, 1.0);
  const Interval tau = tau_interval();
  double hi, lo;
  // max = 1 iff a contains a multiple of 2*pi
  if (contains_integer(div(a, tau))) {
    hi = 1.0;
  } else {
    hi = std::fmax(cos_pt_up(a.lo()), cos_pt_up(a.hi()));
  }
  // min = -1 iff a contains an odd multiple of pi
  if (contains_integer(div(sub(a, pi_interval()), tau))) {
    lo = -1.0;
  } else {
    lo = std::fmin(cos_pt_down(a.lo()), cos_pt_down(a.hi()));
  }
  return Interval(std::fmax(lo, -1.0), std::fmin(hi, 1.0));
}

Interval inv_add(const Interval& z, const Interval& y) { return sub(z, y); }

Interval inv_mul(const Interval& z, const Interval& y) {
  Interval br[2];
  int n = rel_mul_branches(z, y, br);
  if (n == 0) return Interval::empty();
  return n == 1 ? br[0] : hull(br[0], br[1]);
}

Interval inv_pow_even(const Interval& a, int n) {
  assert(n >= 2 && n % 2 == 0);
  if (a.is_empty() || a.hi() < 0) return Interval::empty();
  double r = root_up(a.hi(), n);
  return Interval(-r, r);
}

Interval inv_pow_odd(const Interval& a, int n) {
  assert(n >= 1 && n % 2 != 0);
  if (a.is_empty()) return a;
  return Interval(root_down(a.lo(), n), root_up(a.hi(), n));
}

Interval inv_exp(const Interval& z) {
  if (z.is_empty() || z.hi() <= 0) return Interval::empty();
  double lo = z.lo() <= 0 ? -kInf : log_down(z.lo());
  double hi = std::isinf(z.hi()) ? kInf : log_up(z.hi());
  return Interval(lo, hi);
}

namespace {

// acos enclosure in [0, pi]; v is within [-1, 1] here.
double acos_dir(double v, mpfr_rnd_t rnd) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_d(t, v, MPFR_RNDN);
  mpfr_acos(t, t, rnd);
  double r = mpfr_get_d(t, rnd);
  mpfr_clear(t);
  return r;
}

double acos_down(double v) { return std::fmax(acos_dir(v, MPFR_RNDD), 0.0); }
double acos_up(double v) { return acos_dir(v, MPFR_RNDU); }

}  // namespace

Interval inv_cos(const Interval& z, const Interval& domain) {
  if (z.is_empty() || domain.is_empty()) return Interval::empty();
  Interval zc = intersect(z, Interval(-1.0, 1.0));
  if (zc.is_empty()) return Interval::empty();
  if (std::isinf(domain.lo()) || std::isinf(domain.hi())) {
    // Unbounded branch count: every period contains solutions.
    return domain;
  }
  // Principal branch: cos decreasing on [0, pi].
  const Interval p(acos_down(zc.hi()), acos_up(zc.lo()));
  const Interval tau = tau_interval();
  // Solution set: union over k of (p + k*tau) and (-p + k*tau).
  // Bound k by the domain extent; give up (soundly) past the cap.
  double span = std::fmax(std::fabs(domain.lo()), std::fabs(domain.hi()));
  if (span > 1e12 || width(domain) / 6.28 > 4096) return domain;
  const double tau_mid = 6.283185307179586;
  long k0 = static_cast<long>(std::floor(domain.lo() / tau_mid)) - 2;
  long k1 = static_cast<long>(std::ceil(domain.hi() / tau_mid)) + 2;
  Interval acc = Interval::empty();
  for (long k = k0; k <= k1; ++k) {
    Interval shift = mul(Interval::point(static_cast<double>(k)), tau);
    Interval s1 = intersect(add(p, shift), domain);
    Interval s2 = intersect(add(neg(p), shift), domain);
    if (!s1.is_empty()) acc = hull(acc, s1);
    if (!s2.is_empty()) acc = hull(acc, s2);
  }
  return acc;
}

Interval hull(const Interval& a, const Interval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  return Interval(std::fmin(a.lo(), b.lo()), std::fmax(a.hi(), b.hi()));
}

Interval hull(const std::vector<Interval>& xs) {
  Interval acc = Interval::empty();
  for (const Interval& x : xs) acc = hull(acc, x);
  return acc;
}

Interval intersect(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  double lo = std::fmax(a.lo(), b.lo());
  double hi = std::fmin(a.hi(), b.hi());
  if (lo > hi) return Interval::empty();
  return Interval(lo, hi);
}

double width(const Interval& a) {
  if (a.is_empty()) return 0.0;
  return add_up(a.hi(), -a.lo());
}

double midpoint(const Interval& a) {
  assert(!a.is_empty());
  const double lo = a.lo(), hi = a.hi();
  if (lo == -kInf && hi == kInf) return 0.0;
  if (lo == -kInf) return hi > 0 ? 0.0 : std::fmax(hi * 2 - 1, -kMax);
  if (hi == kInf) return lo < 0 ? 0.0 : std::fmin(lo * 2 + 1, kMax);
  double m = 0.5 * (lo + hi);
  if (!std::isfinite(m)) m = 0.5 * lo + 0.5 * hi;
  if (m < lo) m = lo;
  if (m > hi) m = hi;
  // Prefer an interior point when one exists; adjacent endpoints have none
  // and callers must treat the interval as unsplittable.
  if (m == lo && lo < hi) m = next_up(lo);
  if (m == hi && lo < hi && next_down(hi) > lo) m = next_down(hi);
  return m;
}

std::pair<Interval, Interval> split(const Interval& a) {
  assert(!a.is_empty() && a.lo() < a.hi());
  double m = midpoint(a);
  return {Interval(a.lo(), m), Interval(m, a.hi())};
}

std::string to_string(const Interval& a) {
  if (a.is_empty()) return "empty";
  auto fmt = [](double v) -> std::string {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  };
  return "[" + fmt(a.lo()) + "," + fmt(a.hi()) + "]";
}

}  // namespace bcs
