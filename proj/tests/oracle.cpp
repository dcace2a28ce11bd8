#include "oracle.hpp"

#include <mpfr.h>

#include <cstring>

namespace oracle {

namespace {

UpDown round_both(mpfr_t v) {
  UpDown r;
  r.down = mpfr_get_d(v, MPFR_RNDD);
  r.up = mpfr_get_d(v, MPFR_RNDU);
  return r;
}

}  // namespace

UpDown bin(char op, double a, double b) {
  mpfr_t x, y, z;
  mpfr_inits2(256, x, y, z, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(x, a, MPFR_RNDN);
  mpfr_set_d(y, b, MPFR_RNDN);
  // Directed 256-bit computation followed by directed double rounding equals
  // directed rounding of the exact value (the 256-bit step cannot cross a
  // double boundary without landing on it).
  auto apply = [&](mpfr_rnd_t rnd) {
    switch (op) {
      case '+': mpfr_add(z, x, y, rnd); break;
      case '-': mpfr_sub(z, x, y, rnd); break;
      case '*': mpfr_mul(z, x, y, rnd); break;
      case '/': mpfr_div(z, x, y, rnd); break;
      default: mpfr_set_nan(z); break;
    }
  };
  UpDown r;
  apply(MPFR_RNDD);
  r.down = mpfr_get_d(z, MPFR_RNDD);
  apply(MPFR_RNDU);
  r.up = mpfr_get_d(z, MPFR_RNDU);
  mpfr_clears(x, y, z, static_cast<mpfr_ptr>(nullptr));
  return r;
}

UpDown fn(const char* name, double a) {
  mpfr_t x, z;
  mpfr_inits2(256, x, z, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(x, a, MPFR_RNDN);
  auto apply = [&](mpfr_rnd_t rnd) {
    if (std::strcmp(name, "exp") == 0) mpfr_exp(z, x, rnd);
    else if (std::strcmp(name, "cos") == 0) mpfr_cos(z, x, rnd);
    else if (std::strcmp(name, "log") == 0) mpfr_log(z, x, rnd);
    else if (std::strcmp(name, "sqrt") == 0) mpfr_sqrt(z, x, rnd);
    else mpfr_set_nan(z);
  };
  UpDown r;
  apply(MPFR_RNDD);
  r.down = mpfr_get_d(z, MPFR_RNDD);
  apply(MPFR_RNDU);
  r.up = mpfr_get_d(z, MPFR_RNDU);
  mpfr_clears(x, z, static_cast<mpfr_ptr>(nullptr));
  return r;
}

UpDown pow_n(double a, int n) {
  mpfr_t x, z;
  mpfr_inits2(256, x, z, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(x, a, MPFR_RNDN);
  UpDown r;
  mpfr_pow_si(z, x, n, MPFR_RNDD);
  r.down = mpfr_get_d(z, MPFR_RNDD);
  mpfr_pow_si(z, x, n, MPFR_RNDU);
  r.up = mpfr_get_d(z, MPFR_RNDU);
  mpfr_clears(x, z, static_cast<mpfr_ptr>(nullptr));
  return r;
}

}  // namespace oracle
