#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fraccomp/errors.hpp"

namespace fraccomp {

using Complex = std::complex<double>;
using ComplexL = std::complex<long double>;

// One-sided Laplace transform g^(mu), analytic for Re(mu) > 0. Powers of mu
// are always the principal branch exp(nu Log mu). The optional eval_ld hook
// lets internal callers supply an extended-precision evaluator; the contour
// weights are computed in long double either way.
struct TransformFn {
  std::function<Complex(Complex)> eval;
  std::string domain_note;
  std::function<ComplexL(ComplexL)> eval_ld;

  ComplexL operator()(ComplexL mu) const {
    if (eval_ld) return eval_ld(mu);
    const Complex v = eval(Complex(static_cast<double>(mu.real()),
                                   static_cast<double>(mu.imag())));
    return ComplexL(v.real(), v.imag());
  }
};

enum class InversionMethod { talbot, gaver_stehfest };

struct InversionConfig {
  InversionMethod method = InversionMethod::talbot;
  int nodes = 32;
  double contour_scale = 1.0;
};

namespace detail {

inline void validate(const InversionConfig& cfg) {
  if (cfg.contour_scale <= 0.0)
    throw InvalidConfig("contour_scale must be positive");
  if (cfg.method == InversionMethod::talbot) {
    if (cfg.nodes < 8) throw InvalidConfig("talbot requires nodes >= 8");
  } else {
    if (cfg.nodes % 2 != 0 || cfg.nodes > 18 || cfg.nodes < 2)
      throw InvalidConfig("gaver_stehfest requires even nodes <= 18");
  }
}

// Fixed Talbot contour s(theta) = r theta (cot theta + i) with midpoint-free
// Abate-Valko weights. Summation runs in long double so the e^{r t}
// amplification does not eat the last digits.
inline double invert_talbot(const TransformFn& f, double t,
                            const InversionConfig& cfg) {
  const int M = cfg.nodes;
  const long double pi = 3.141592653589793238462643383279503L;
  const long double r = cfg.contour_scale * 2.0L * M / (5.0L * t);
  const long double tl = t;

  long double acc = 0.5L * std::exp(r * tl) * f(ComplexL(r, 0.0L)).real();
  if (!std::isfinite(acc))
    throw ContourFailure("talbot: apex summand not finite");
  for (int k = 1; k < M; ++k) {
    const long double th = k * pi / M;
    const long double cot = std::cos(th) / std::sin(th);
    const ComplexL s(r * th * cot, r * th);
    const long double sigma = th + (th * cot - 1.0L) * cot;
    const ComplexL gv = f(s);
    if (!std::isfinite(gv.real()) || !std::isfinite(gv.imag()))
      throw ContourFailure("talbot: transform not finite on contour");
    const long double mag = std::abs(gv);
    const long double expo = s.real() * tl + (mag > 0 ? std::log(mag) : 0.0L);
    if (mag > 0 && expo > 11000.0L)
      throw ContourFailure("talbot: summand overflow on contour tail");
    const ComplexL term =
        std::exp(s * tl) * gv * ComplexL(1.0L, sigma);
    acc += term.real();
  }
  const long double val = acc * r / M;
  if (!std::isfinite(val)) throw ContourFailure("talbot: sum not finite");
  return static_cast<double>(val);
}

inline double invert_gaver_stehfest(const TransformFn& f, double t,
                                    const InversionConfig& cfg) {
  const int n = cfg.nodes;
  const int nh = n / 2;
  auto fact = [](int m) {
    long double v = 1.0L;
    for (int i = 2; i <= m; ++i) v *= i;
    return v;
  };
  const long double ln2 = 0.693147180559945309417232121458176L;
  long double acc = 0.0L;
  for (int k = 1; k <= n; ++k) {
    long double a = 0.0L;
    for (int j = (k + 1) / 2; j <= std::min(k, nh); ++j) {
      long double num = std::pow((long double)j, (long double)nh) * fact(2 * j);
      long double den = fact(nh - j) * fact(j) * fact(j - 1) * fact(k - j) *
                        fact(2 * j - k);
      a += num / den;
    }
    if ((nh + k) % 2 != 0) a = -a;
    const long double mu = k * ln2 / t;
    const ComplexL gv = f(ComplexL(mu, 0.0L));
    if (!std::isfinite(gv.real()))
      throw ContourFailure("gaver_stehfest: transform not finite");
    acc += a * gv.real();
  }
  const long double val = acc * ln2 / t;
  if (!std::isfinite(val))
    throw ContourFailure("gaver_stehfest: sum not finite");
  return static_cast<double>(val);
}

}  // namespace detail

inline double invert(const TransformFn& f, double t,
                     const InversionConfig& cfg = {}) {
  if (!(t > 0.0)) throw InvalidConfig("invert requires t > 0");
  detail::validate(cfg);
  return cfg.method == InversionMethod::talbot
             ? detail::invert_talbot(f, t, cfg)
             : detail::invert_gaver_stehfest(f, t, cfg);
}

// Elementwise invert; failures are collected with their point indices.
inline std::vector<double> invert_grid(const TransformFn& f,
                                       const std::vector<double>& ts,
                                       const InversionConfig& cfg = {}) {
  std::vector<double> out(ts.size());
  std::string failures;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    try {
      out[i] = invert(f, ts[i], cfg);
    } catch (const Error& e) {
      failures += " [" + std::to_string(i) + "] " + e.what();
    }
  }
  if (!failures.empty())
    throw InversionFailure("invert_grid failed at points:" + failures);
  return out;
}

// Two-config Richardson-style comparison; the spread is the only honest
// error indicator a fixed-contour method can offer.
inline std::pair<double, double> invert_with_spread(const TransformFn& f,
                                                    double t,
                                                    InversionConfig cfg = {}) {
  const double v1 = invert(f, t, cfg);
  cfg.nodes = cfg.method == InversionMethod::talbot
                  ? cfg.nodes + cfg.nodes / 2
                  : std::max(2, cfg.nodes - 2);
  const double v2 = invert(f, t, cfg);
  return {v2, std::abs(v2 - v1)};
}

// ---------------------------------------------------------------------------
// Structured transforms Q(mu) exp(-c A(mu)), A(mu) = sum lambda_i mu^{nu_i},
// Q(mu) = sum q_i mu^{eta_i}. For nu_i in (0,1] these are the completely
// monotone kernels of this library; the inversion contour is a parabola
// through the real saddle of mu t - c A(mu), which keeps every summand at
// the scale of the result (plain Talbot loses digits exponentially here).
// ---------------------------------------------------------------------------

struct ExpKernelTransform {
  struct Phase {
    double lambda;
    double nu;
  };
  struct Pre {
    double coeff;
    double eta;
  };
  std::vector<Pre> prefactor;  // Q(mu)
  double scale = 0.0;          // c >= 0
  std::vector<Phase> phase;    // A(mu)

  ComplexL q(ComplexL mu) const {
    ComplexL v(0.0L, 0.0L);
    for (const auto& p : prefactor)
      v += (long double)p.coeff * std::pow(mu, (long double)p.eta);
    return v;
  }
  ComplexL a(ComplexL mu) const {
    ComplexL v(0.0L, 0.0L);
    for (const auto& p : phase)
      v += (long double)p.lambda * std::pow(mu, (long double)p.nu);
    return v;
  }
  long double a_prime(long double mu) const {
    long double v = 0.0L;
    for (const auto& p : phase)
      v += (long double)p.lambda * (long double)p.nu *
           std::pow(mu, (long double)p.nu - 1.0L);
    return v;
  }
  long double a_second_abs(long double mu) const {
    long double v = 0.0L;
    for (const auto& p : phase)
      v += (long double)p.lambda * (long double)p.nu *
           (1.0L - (long double)p.nu) * std::pow(mu, (long double)p.nu - 2.0L);
    return v;
  }
  double max_nu() const {
    double m = 0.0;
    for (const auto& p : phase) m = std::max(m, p.nu);
    return m;
  }
  TransformFn as_transform() const {
    auto self = *this;
    TransformFn f;
    f.eval_ld = [self](ComplexL mu) {
      return self.q(mu) * std::exp(-(long double)self.scale * self.a(mu));
    };
    f.eval = [self](Complex mu) {
      ComplexL v = self.q(ComplexL(mu.real(), mu.imag())) *
                   std::exp(-(long double)self.scale *
                            self.a(ComplexL(mu.real(), mu.imag())));
      return Complex((double)v.real(), (double)v.imag());
    };
    f.domain_note = "Q(mu) exp(-c A(mu)), principal branch of mu^nu";
    return f;
  }
};

namespace detail {

// Real saddle of phi(mu) = mu t - c A(mu) when all nu_i <= 1 (A' decreasing).
// Returns 0 if t is below the drift part (kernel vanishes there).
inline std::optional<long double> cm_saddle(const ExpKernelTransform& f,
                                            double t) {
  long double drift = 0.0L;
  for (const auto& p : f.phase)
    if (p.nu == 1.0) drift += (long double)p.lambda;
  drift *= (long double)f.scale;
  if (t <= (double)drift * (1.0 + 1e-14)) return std::nullopt;
  long double lo = -46.0L, hi = 46.0L;  // log mu
  auto h = [&](long double lm) {
    return (long double)t - (long double)f.scale * f.a_prime(std::exp(lm));
  };
  if (h(lo) > 0.0L) return std::exp(lo);  // saddle below range: flat kernel
  if (h(hi) < 0.0L) return std::exp(hi);
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (h(mid) > 0.0L ? hi : lo) = mid;
  }
  return std::exp(0.5L * (lo + hi));
}

}  // namespace detail

// Invert a completely monotone structured transform at t > 0. Relative
// accuracy is preserved even where the result underflows toward zero.
inline double invert_cm(const ExpKernelTransform& f, double t) {
  if (!(t > 0.0)) throw InvalidConfig("invert_cm requires t > 0");
  if (f.scale < 0.0 || f.phase.empty())
    throw InvalidConfig("invert_cm requires scale >= 0 and a phase term");
  for (const auto& p : f.phase)
    if (p.nu <= 0.0 || p.nu > 1.0 || p.lambda <= 0.0)
      throw InvalidConfig("invert_cm requires nu in (0,1], lambda > 0");

  const auto saddle = detail::cm_saddle(f, t);
  if (!saddle) return 0.0;  // ahead of the drift: nothing there
  const long double ms = *saddle;
  const long double c = f.scale;
  const long double phi0 =
      ms * (long double)t - c * f.a(ComplexL(ms, 0.0L)).real();
  if (phi0 < -800.0L) return 0.0;  // value underflows any double

  long double g = 2.0L * c * f.a_second_abs(ms) * ms * ms;
  if (!(g > 0.0L) || !std::isfinite(g)) g = ms * (long double)t;
  if (!(g > 0.0L)) throw InversionFailure("invert_cm: degenerate contour");
  const long double U = std::sqrt(48.0L / g);
  const int N = 64;
  const long double du = U / N;

  auto integrand = [&](long double u) -> long double {
    const ComplexL one_iu(1.0L, u);
    const ComplexL mu = ms * one_iu * one_iu;
    const ComplexL phi = mu * (long double)t - c * f.a(mu);
    const long double ex = phi.real() - phi0;
    if (ex > 60.0L)
      throw ContourFailure("invert_cm: contour leaves descent region");
    return (std::exp(ComplexL(ex, phi.imag())) * f.q(mu) * one_iu).real();
  };

  long double acc = 0.5L * integrand(0.0L);
  long double prev = std::abs(acc);
  int tiny_run = 0;
  int k = 1;
  for (; k < 40 * N; ++k) {
    const long double v = integrand(k * du);
    acc += v;
    const long double av = std::abs(v);
    if (av < 1e-22L * (std::abs(acc) + 1e-30L) && av <= prev)
      ++tiny_run;
    else
      tiny_run = 0;
    prev = av;
    if (tiny_run >= 8) break;
  }
  if (k >= 40 * N)
    throw ContourFailure("invert_cm: slow tail decay on contour");
  const long double pi = 3.141592653589793238462643383279503L;
  const long double val = (ms / pi) * 2.0L * du * acc;
  const long double withexp = val * std::exp(phi0);
  if (!std::isfinite((double)withexp))
    throw InversionFailure("invert_cm: result not finite");
  return (double)withexp;
}

}  // namespace fraccomp
