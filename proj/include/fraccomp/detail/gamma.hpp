#pragma once

#include <cmath>
#include <limits>

namespace fraccomp::detail {

// Gamma-function helpers on the whole real line, in extended precision.
// Negative arguments go through the reflection formula with the sine
// reduced by its integer part, so the sign and log-magnitude stay exact
// even far down the axis. Non-positive integers are poles: recip_gamma
// returns 0 there, which is the convention every series in this library
// relies on (pole terms are skipped, not errors).

struct GammaParts {
  long double log_abs;  // log|Gamma(x)|
  int sign;             // -1, +1, or 0 at a pole
};

inline GammaParts log_gamma_parts(long double x) {
  if (x > 0.0L) return {std::lgamma(x), 1};
  const long double fl = std::floor(x);
  const long double frac = x - fl;
  if (frac == 0.0L) {
    return {std::numeric_limits<long double>::infinity(), 0};
  }
  // Gamma(x) = pi / (sin(pi x) Gamma(1-x)); sin(pi x) = (-1)^floor(x) sin(pi frac).
  const long double pi = 3.141592653589793238462643383279503L;
  const long double s = std::sin(pi * frac);  // in (0,1], frac in (0,1)
  const long double log_abs = std::log(pi) - std::log(s) - std::lgamma(1.0L - x);
  const bool even_floor = std::fmod(fl, 2.0L) == 0.0L;
  return {log_abs, even_floor ? 1 : -1};
}

// 1/Gamma(x); exactly 0 at the poles x = 0, -1, -2, ...
inline long double recip_gamma(long double x) {
  const GammaParts g = log_gamma_parts(x);
  if (g.sign == 0) return 0.0L;
  return g.sign * std::exp(-g.log_abs);
}

inline long double gamma_ld(long double x) {
  const GammaParts g = log_gamma_parts(x);
  if (g.sign == 0) return std::numeric_limits<long double>::infinity();
  return g.sign * std::exp(g.log_abs);
}

}  // namespace fraccomp::detail
