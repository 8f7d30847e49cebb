#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "fraccomp/detail/gamma.hpp"
#include "fraccomp/errors.hpp"
#include "fraccomp/laplace_inversion.hpp"

namespace fraccomp {

struct MLParams {
  double alpha;
  double beta;
};

struct WrightParams {
  double alpha;  // > -1
  double beta;
};

namespace detail {

inline constexpr long double kLdEps = 1.08420217248550443e-19L;

struct SeriesOut {
  long double value = 0.0L;
  long double err_abs = 0.0L;
  int terms = 0;
  bool aborted = false;
  bool converged = false;
};

// Kahan-compensated power series sum_k c_k z^k where the coefficient is
// returned as (log|c_k|, sign). Stops after three consecutive terms below
// 1e-17 of the partial sum. Aborts (for the caller to switch regime) once a
// term's log-magnitude exceeds abort_log.
template <class CoefFn>
SeriesOut power_series(CoefFn coef, long double z, long double abort_log,
                       int kmax = 200000) {
  SeriesOut out;
  const long double az = std::fabs(z);
  if (az == 0.0L) {
    const GammaParts g0 = coef(0);
    out.value = g0.sign * std::exp(g0.log_abs);
    out.converged = true;
    out.terms = 1;
    return out;
  }
  const long double lnz = std::log(az);
  long double sum = 0.0L, comp = 0.0L, sum_abs = 0.0L;
  int small_run = 0;
  for (int k = 0; k <= kmax; ++k) {
    const GammaParts c = coef(k);
    if (c.sign == 0) continue;  // Gamma pole: the term vanishes
    const long double lt = c.log_abs + k * lnz;
    if (lt > abort_log) {
      out.aborted = true;
      out.terms = k;
      return out;
    }
    long double term = c.sign * std::exp(lt);
    if (z < 0.0L && (k & 1)) term = -term;
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    sum_abs += std::fabs(term);
    if (std::fabs(term) < 1e-17L * (std::fabs(sum) + 1e-300L)) {
      if (++small_run >= 3 && k >= 8) {
        out.converged = true;
        out.terms = k;
        break;
      }
    } else {
      small_run = 0;
    }
  }
  out.value = sum;
  out.err_abs = sum_abs * kLdEps * (4.0L + std::sqrt((long double)out.terms));
  return out;
}

// Asymptotics of E_{a,b}(-y) for y large: algebraic series at optimal
// truncation plus the exponential branches w = y^{1/a} e^{i q pi / a} for
// odd q with |q| <= a (half weight on the boundary |q| = a).
struct AsympOut {
  long double value;
  long double err_abs;
};

inline AsympOut ml_asymptotic_neg(double alpha, double beta, long double y) {
  const long double lyn = std::log(y);
  long double sum = 0.0L;
  long double prev = std::numeric_limits<long double>::infinity();
  long double err = std::numeric_limits<long double>::infinity();
  for (int k = 1; k <= 200; ++k) {
    const GammaParts g = log_gamma_parts((long double)beta - (long double)alpha * k);
    if (g.sign == 0) {
      if (k > 2 && prev < 1e-30L) {  // deep in the decayed zone
        err = prev;
        break;
      }
      continue;
    }
    const long double lt = -k * lyn - g.log_abs;
    const long double mag = std::exp(lt);
    if (mag > prev) {  // optimal truncation point
      err = mag;
      break;
    }
    long double term = g.sign * mag;
    if (k & 1) term = -term;  // (-y)^{-k} = (-1)^k y^{-k}, with leading minus
    sum -= term;
    prev = mag;
    err = mag;
  }
  // exponential branches
  const long double pi = 3.141592653589793238462643383279503L;
  for (int q = 1; q <= 3; q += 2) {
    long double wt = 0.0L;
    if (q < alpha - 1e-12) {
      wt = 1.0L;
    } else if (std::fabs(q - alpha) <= 1e-12) {
      wt = 0.5L;
    } else {
      continue;
    }
    const long double r = std::pow(y, 1.0L / (long double)alpha);
    const ComplexL w = r * std::exp(ComplexL(0.0L, q * pi / alpha));
    const ComplexL t =
        std::pow(w, (long double)(1.0 - beta)) * std::exp(w) / (long double)alpha;
    sum += 2.0L * wt * t.real();
  }
  return {sum, err};
}

inline double ml_by_inversion(double alpha, double beta, long double y) {
  TransformFn tf;
  const long double a = alpha, b = beta, yy = y;
  tf.eval_ld = [a, b, yy](ComplexL mu) {
    return std::pow(mu, a - b) / (std::pow(mu, a) + yy);
  };
  tf.domain_note = "mu^{a-b}/(mu^a + y), principal branch";
  InversionConfig cfg;
  cfg.nodes = 32;
  return invert(tf, 1.0, cfg);
}

}  // namespace detail

// E_{alpha,beta}(z) for real z. Series everywhere it is stable in extended
// precision; for large negative z the evaluator switches to the asymptotic
// expansion or to inversion of the transform mu^{alpha-beta}/(mu^alpha - z),
// whichever meets the error bound.
inline double mittag_leffler(const MLParams& p, double z) {
  if (!(p.alpha > 0.0))
    throw InvalidParams("mittag_leffler: alpha must be > 0");
  if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !std::isfinite(z))
    throw InvalidParams("mittag_leffler: non-finite input");

  const long double a = p.alpha, b = p.beta;
  auto recip_coef = [a, b](int k) {
    detail::GammaParts g = detail::log_gamma_parts(a * k + b);
    return detail::GammaParts{-g.log_abs, g.sign};
  };

  const long double abort_log = (z >= 0.0) ? 11000.0L : 36.0L;
  // Pre-screen: the largest series term for negative z sits near exp(y^{1/a}).
  bool try_series = true;
  if (z < 0.0) {
    const long double peak = std::pow((long double)-z, 1.0L / a);
    if (peak > 40.0L) try_series = false;
  }
  if (try_series) {
    const detail::SeriesOut s =
        detail::power_series(recip_coef, (long double)z, abort_log);
    if (s.converged && !s.aborted && s.err_abs <= 2e-13L)
      return static_cast<double>(s.value);
    if (z >= 0.0) {
      const double v = static_cast<double>(s.value);
      if (s.converged && std::isfinite(v)) return v;  // huge but full-precision
      throw NonConvergence("mittag_leffler: value exceeds double range");
    }
  }

  // z < 0 fallbacks
  const long double y = -(long double)z;
  if (p.alpha <= 3.0) {
    const detail::AsympOut as = detail::ml_asymptotic_neg(p.alpha, p.beta, y);
    if (as.err_abs <= 1e-14L) return static_cast<double>(as.value);
    if (p.alpha <= 2.0) return detail::ml_by_inversion(p.alpha, p.beta, y);
    return static_cast<double>(as.value);  // alpha in (2,3]: series covers; rare
  }
  throw NonConvergence("mittag_leffler: no stable regime for these parameters");
}

// W_{alpha,beta}(z), alpha > -1. Series with the same stopping rule; for the
// kernel branch alpha in (-1,0) with large negative z the evaluator inverts
// the pair L[t^{beta-1} W_{alpha,beta}(-y t^{alpha})] = mu^{-beta} e^{-y mu^{-alpha}}
// on a saddle-point contour, which keeps relative accuracy where the value
// is stretched-exponentially small.
inline double wright(const WrightParams& p, double z) {
  if (!(p.alpha > -1.0))
    throw InvalidParams("wright: alpha must be > -1");
  if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !std::isfinite(z))
    throw InvalidParams("wright: non-finite input");

  const long double a = p.alpha, b = p.beta;
  if (p.alpha == 0.0) {  // W_{0,b}(z) = e^z / Gamma(b)
    return static_cast<double>(std::exp((long double)z) *
                               detail::recip_gamma(b));
  }

  auto recip_coef = [a, b](int k) {
    const detail::GammaParts g = detail::log_gamma_parts(a * k + b);
    const detail::GammaParts f = detail::log_gamma_parts((long double)k + 1.0L);
    return detail::GammaParts{-g.log_abs - f.log_abs, g.sign};
  };

  const long double abort_log = 36.0L;
  const detail::SeriesOut s =
      detail::power_series(recip_coef, (long double)z, abort_log);
  if (s.converged && !s.aborted && s.err_abs <= 2e-13L)
    return static_cast<double>(s.value);

  if (p.alpha < 0.0 && z < 0.0) {
    ExpKernelTransform tf;
    tf.prefactor = {{1.0, -p.beta}};
    tf.scale = -z;
    tf.phase = {{1.0, -p.alpha}};
    return invert_cm(tf, 1.0);
  }
  if (s.converged) return static_cast<double>(s.value);
  throw NonConvergence("wright: series unstable and no inversion pair applies");
}

}  // namespace fraccomp
