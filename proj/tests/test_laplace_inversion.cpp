#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fraccomp/laplace_inversion.hpp"

using namespace fraccomp;

namespace {

TransformFn make(std::function<ComplexL(ComplexL)> f) {
  TransformFn t;
  t.eval_ld = std::move(f);
  return t;
}

struct Pair {
  TransformFn f;
  std::function<double(double)> inverse;
  const char* name;
};

std::vector<Pair> oracle_battery() {
  const double pi = 3.14159265358979323846;
  std::vector<Pair> ps;
  ps.push_back({make([](ComplexL m) { return 1.0L / m; }),
                [](double) { return 1.0; }, "1/mu -> 1"});
  ps.push_back({make([](ComplexL m) { return 1.0L / (m + 1.0L); }),
                [](double t) { return std::exp(-t); }, "1/(mu+1)"});
  ps.push_back({make([](ComplexL m) { return 1.0L / (m * m); }),
                [](double t) { return t; }, "1/mu^2"});
  ps.push_back({make([](ComplexL m) { return 1.0L / (m * m * m); }),
                [](double t) { return t * t / 2.0; }, "1/mu^3"});
  ps.push_back({make([](ComplexL m) { return 1.0L / (m * m + 1.0L); }),
                [](double t) { return std::sin(t); }, "sin"});
  ps.push_back({make([](ComplexL m) { return m / (m * m + 1.0L); }),
                [](double t) { return std::cos(t); }, "cos"});
  ps.push_back({make([](ComplexL m) { return 1.0L / (m * (m + 1.0L)); }),
                [](double t) { return 1.0 - std::exp(-t); }, "1/(mu(mu+1))"});
  ps.push_back({make([](ComplexL m) { return 1.0L / ((m + 1.0L) * (m + 1.0L)); }),
                [](double t) { return t * std::exp(-t); }, "1/(mu+1)^2"});
  ps.push_back({make([](ComplexL m) { return 1.0L / std::sqrt(m); }),
                [pi](double t) { return 1.0 / std::sqrt(pi * t); }, "1/sqrt(mu)"});
  ps.push_back(
      {make([](ComplexL m) { return std::exp(-std::sqrt(m)) / std::sqrt(m); }),
       [pi](double t) { return std::exp(-1.0 / (4.0 * t)) / std::sqrt(pi * t); },
       "exp(-sqrt(mu))/sqrt(mu)"});
  return ps;
}

}  // namespace

TEST_CASE("talbot oracle battery, abs error <= 1e-8") {
  for (const auto& p : oracle_battery()) {
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
      INFO(p.name << " at t=" << t);
      CHECK(std::abs(invert(p.f, t) - p.inverse(t)) < 1e-8);
    }
  }
}

TEST_CASE("spec examples") {
  CHECK(invert(make([](ComplexL m) { return 1.0L / m; }), 2.0) ==
        Catch::Approx(1.0).margin(1e-10));
  CHECK(invert(make([](ComplexL m) { return 1.0L / (m + 1.0L); }), 1.0) ==
        Catch::Approx(std::exp(-1.0)).margin(1e-10));
  // mu^{-1/2} e^{-sqrt(mu)} at t=1 equals the inverse-subordinator kernel
  // value pinned by the Wright series oracle
  const double got = invert(
      make([](ComplexL m) { return std::exp(-std::sqrt(m)) / std::sqrt(m); }),
      1.0);
  CHECK(got == Catch::Approx(0.4393912894677224).margin(1e-10));
}

TEST_CASE("talbot and gaver_stehfest agree on smooth inverses") {
  InversionConfig gs;
  gs.method = InversionMethod::gaver_stehfest;
  gs.nodes = 18;
  // non-decaying inverses over the whole range
  std::vector<TransformFn> grow = {
      make([](ComplexL m) { return 1.0L / (m * m); }),
      make([](ComplexL m) {
        return 0.886226925452758013649L / (m * std::sqrt(m));
      })};
  for (const auto& f : grow)
    for (double t : {0.1, 0.5, 1.0, 3.0, 10.0})
      CHECK(std::abs(invert(f, t) - invert(f, t, gs)) < 1e-6);
  // decaying inverses where 18 Gaver-Stehfest terms still carry 6 digits
  // of absolute accuracy (the method loses absolute digits with the decay)
  std::vector<TransformFn> decay = {
      make([](ComplexL m) { return 1.0L / (m + 1.0L); }),
      make([](ComplexL m) { return 1.0L / ((m + 0.5L) * (m + 0.5L)); })};
  for (const auto& f : decay)
    for (double t : {0.1, 0.5, 1.0, 3.0})
      CHECK(std::abs(invert(f, t) - invert(f, t, gs)) < 1e-6);
}

TEST_CASE("linearity of inversion") {
  auto f = make([](ComplexL m) { return 1.0L / (m + 1.0L); });
  auto g = make([](ComplexL m) { return 1.0L / (m * m + 1.0L); });
  auto combo = make([](ComplexL m) {
    return 3.0L / (m + 1.0L) - 0.25L / (m * m + 1.0L);
  });
  for (double t : {0.3, 1.0, 4.0}) {
    const double lhs = invert(combo, t);
    const double rhs = 3.0 * invert(f, t) - 0.25 * invert(g, t);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("config validation") {
  auto f = make([](ComplexL m) { return 1.0L / m; });
  InversionConfig bad;
  bad.nodes = 4;
  CHECK_THROWS_AS(invert(f, 1.0, bad), InvalidConfig);
  bad.method = InversionMethod::gaver_stehfest;
  bad.nodes = 15;
  CHECK_THROWS_AS(invert(f, 1.0, bad), InvalidConfig);
  bad.nodes = 20;
  CHECK_THROWS_AS(invert(f, 1.0, bad), InvalidConfig);
  InversionConfig neg;
  neg.contour_scale = -1.0;
  CHECK_THROWS_AS(invert(f, 1.0, neg), InvalidConfig);
  CHECK_THROWS_AS(invert(f, 0.0), InvalidConfig);
}

TEST_CASE("invert_grid vectorizes and reports failing indices") {
  auto f = make([](ComplexL m) { return 1.0L / (m + 1.0L); });
  const std::vector<double> ts = {0.5, 1.0, 2.0};
  const auto vals = invert_grid(f, ts);
  REQUIRE(vals.size() == 3);
  for (std::size_t i = 0; i < ts.size(); ++i)
    CHECK(std::abs(vals[i] - std::exp(-ts[i])) < 1e-9);

  auto broken = make([](ComplexL m) {
    if (m.imag() > 0.0L)
      return ComplexL(std::numeric_limits<long double>::quiet_NaN(), 0.0L);
    return 1.0L / m;
  });
  try {
    invert_grid(broken, {1.0, 2.0});
    FAIL("expected InversionFailure");
  } catch (const InversionFailure& e) {
    CHECK(std::string(e.what()).find("[0]") != std::string::npos);
    CHECK(std::string(e.what()).find("[1]") != std::string::npos);
  }
}

TEST_CASE("richardson spread diagnostic is honest on a nice transform") {
  auto f = make([](ComplexL m) { return 1.0L / (m + 1.0L); });
  const auto [val, spread] = invert_with_spread(f, 1.0);
  CHECK(std::abs(val - std::exp(-1.0)) < 1e-9);
  CHECK(spread < 1e-8);
}

TEST_CASE("invert_cm reproduces the one-sided stable closed form") {
  // L^{-1}[ e^{-t sqrt(mu)} ](x) = t/(2 sqrt(pi)) x^{-3/2} e^{-t^2/(4x)}
  const double pi = 3.14159265358979323846;
  for (double t : {0.5, 1.0, 2.0}) {
    ExpKernelTransform f;
    f.prefactor = {{1.0, 0.0}};
    f.scale = t;
    f.phase = {{1.0, 0.5}};
    for (double x : {0.05, 0.2, 1.0, 3.0, 10.0, 40.0}) {
      const double ref = t / (2.0 * std::sqrt(pi)) * std::pow(x, -1.5) *
                         std::exp(-t * t / (4.0 * x));
      const double got = invert_cm(f, x);
      CHECK(std::abs(got - ref) < 1e-12 + 1e-11 * std::abs(ref));
    }
  }
}

TEST_CASE("invert_cm keeps relative accuracy in deep tails") {
  // kernel value ~ 1e-30 and smaller; relative error must stay small
  const double pi = 3.14159265358979323846;
  ExpKernelTransform f;
  f.prefactor = {{1.0, 0.0}};
  f.scale = 12.0;  // t = 12
  f.phase = {{1.0, 0.5}};
  const double x = 0.25;
  const double ref = 12.0 / (2.0 * std::sqrt(pi)) * std::pow(x, -1.5) *
                     std::exp(-144.0 / (4.0 * x));
  CHECK(invert_cm(f, x) == Catch::Approx(ref).epsilon(1e-9));
}

TEST_CASE("invert_cm handles the drift edge") {
  // pure nu=1 phase is a shifted delta; ahead of the drift there is nothing
  ExpKernelTransform f;
  f.prefactor = {{1.0, 0.0}};
  f.scale = 2.0;
  f.phase = {{0.5, 1.0}, {1.0, 0.5}};
  CHECK(invert_cm(f, 0.5) == 0.0);  // t < scale*lambda_drift = 1
}
