#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lebedev/error.hpp"
#include "lebedev/quadrature.hpp"
#include "lebedev/verify.hpp"
#include "oracles.hpp"

using namespace lebedev;
using namespace lebedev::quad;
using std::numbers::pi;

TEST_CASE("finite integrals") {
  const QuadratureConfig cfg;
  CHECK(integrate_finite([](double t) { return t; }, 0.0, 1.0, cfg).value == doctest::Approx(0.5).epsilon(1e-15));
  const auto ortho = integrate_finite([](double u) { return std::sin(u) * std::sin(3.0 * u); }, -pi, pi, cfg);
  CHECK(std::abs(ortho.value) < 1e-12);
  const auto energy = integrate_finite([](double u) { return std::pow(std::sin(2.0 * u), 2); }, -pi, pi, cfg);
  CHECK(energy.value == doctest::Approx(pi).epsilon(1e-13));
}

TEST_CASE("semi-infinite integrals") {
  const QuadratureConfig cfg;
  CHECK(integrate_semi_infinite([](double t) { return std::exp(-t); }, 0.0, cfg).value ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(integrate_semi_infinite([](double t) { return t * std::exp(-t * t); }, 0.0, cfg).value ==
        doctest::Approx(0.5).epsilon(1e-13));
  const double k0 = oracle::k0(1.0);
  const auto r = integrate_semi_infinite([](double u) { return std::exp(-std::cosh(u)); }, 0.0, cfg);
  CHECK(std::abs(r.value - k0) < 1e-13);
  CHECK(r.converged);
}

TEST_CASE("Abel lower integrals") {
  const QuadratureConfig cfg;
  CHECK(integrate_abel_lower([](double t) { return t; }, 2.0, cfg).value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(integrate_abel_lower([](double) { return 1.0; }, 1.0, cfg).value == doctest::Approx(0.5 * pi).epsilon(1e-15));

  SUBCASE("constant integrand is exact for every x") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logx(-6.0, 6.0);
    for (int i = 0; i < 50; ++i) {
      const double x = std::exp(logx(rng));
      const auto r = integrate_abel_lower([](double) { return 1.0; }, x, cfg);
      CHECK(std::abs(r.value - 0.5 * pi) <= 4.0 * std::numeric_limits<double>::epsilon());
    }
  }
}

TEST_CASE("Abel upper integrals") {
  const QuadratureConfig cfg;
  const auto k = integrate_abel_upper([](double t) { return std::exp(-t); }, 1.0, cfg);
  CHECK(std::abs(k.value - oracle::k0(1.0)) < 1e-13);

  const double x = 0.5;
  auto g = [](double t) { return t * std::exp(-0.5 * t * t); };
  // t = x + s^2 removes the square root at t = x.
  const double brute = oracle::trapezoid(
      [&](double s) { return 2.0 * g(x + s * s) / std::sqrt(2.0 * x + s * s); }, 0.0,
      std::sqrt(40.0), static_cast<long>(std::sqrt(40.0) / 1e-4));
  const auto r = integrate_abel_upper(g, x, cfg);
  CHECK(r.value == doctest::Approx(brute).epsilon(1e-9));
  CHECK(r.value == doctest::Approx(std::sqrt(0.5 * pi) * std::exp(-0.5 * x * x)).epsilon(1e-12));

  CHECK(integrate_abel_upper([](double t) { return 1.0 / (t * t); }, 1.0, cfg).value ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("periodic oscillatory integrals") {
  const QuadratureConfig cfg;
  auto sine = [](double u) { return std::sin(u); };
  CHECK(integrate_periodic_oscillatory(sine, 1, cfg).value == doctest::Approx(pi).epsilon(1e-14));
  CHECK(std::abs(integrate_periodic_oscillatory(sine, 2, cfg).value) < 1e-14);

  auto sinh_f = [](double u) { return std::sinh(u); };
  const double closed = 2.0 * 3.0 * std::sinh(pi) / 10.0;
  const double brute = oracle::trapezoid([](double u) { return std::sinh(u) * std::sin(3.0 * u); }, -pi, pi, 1'000'000);
  const auto r = integrate_periodic_oscillatory(sinh_f, 3, cfg);
  CHECK(r.value == doctest::Approx(closed).epsilon(1e-12));
  CHECK(brute == doctest::Approx(closed).epsilon(1e-9));

  SUBCASE("declared parity") {
    const auto odd = integrate_periodic_oscillatory(sinh_f, 3, cfg, Parity::Odd);
    CHECK(odd.value == doctest::Approx(r.value).epsilon(1e-13));
    CHECK(integrate_periodic_oscillatory([](double u) { return std::cos(u); }, 3, cfg, Parity::Even).value == 0.0);
  }
}

TEST_CASE("linearity within reported errors") {
  const QuadratureConfig cfg;
  auto f = [](double t) { return std::exp(-t) * std::cos(3.0 * t); };
  auto g = [](double t) { return t * t * std::exp(-2.0 * t); };
  const double alpha = 1.7;
  const double beta = -0.4;
  const auto rf = integrate_semi_infinite(f, 0.0, cfg);
  const auto rg = integrate_semi_infinite(g, 0.0, cfg);
  const auto rc = integrate_semi_infinite([&](double t) { return alpha * f(t) + beta * g(t); }, 0.0, cfg);
  const double slack = rc.error_estimate + std::abs(alpha) * rf.error_estimate + std::abs(beta) * rg.error_estimate;
  CHECK(std::abs(rc.value - alpha * rf.value - beta * rg.value) <= slack);
}

TEST_CASE("determinism") {
  const QuadratureConfig cfg;
  auto f = [](double u) { return std::exp(-2.0 * std::cosh(u)) * std::cos(5.0 * u); };
  const auto a = integrate_semi_infinite(f, 0.0, cfg);
  const auto b = integrate_semi_infinite(f, 0.0, cfg);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("error estimates are honest on the validation set") {
  const QuadratureConfig cfg;
  int converged = 0;
  for (const auto& c : honesty_cases()) {
    CAPTURE(c.name);
    const auto r = c.run(cfg);
    CHECK(r.evaluations <= cfg.max_evaluations);
    if (!r.converged) continue;
    ++converged;
    CHECK(std::abs(r.value - c.exact) <= 10.0 * r.error_estimate);
    CHECK(r.error_estimate <= cfg.target(r.value));
  }
  CHECK(converged == 20);
}

TEST_CASE("budgets and failures") {
  SUBCASE("budget exhaustion is soft") {
    QuadratureConfig cfg;
    cfg.max_subdivisions = 1;
    cfg.abs_tol = 1e-15;
    cfg.rel_tol = 0.0;
    const auto r = integrate_finite([](double t) { return std::sqrt(t); }, 0.0, 1.0, cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.error_estimate > 0.0);
  }
  SUBCASE("evaluation cap") {
    QuadratureConfig cfg;
    cfg.max_evaluations = 100;
    cfg.abs_tol = 1e-15;
    cfg.rel_tol = 0.0;
    const auto r = integrate_finite([](double t) { return std::log(t); }, 0.0, 1.0, cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.evaluations <= 100);
  }
  SUBCASE("hard errors") {
    const QuadratureConfig cfg;
    auto one = [](double) { return 1.0; };
    CHECK_THROWS_AS(integrate_finite(one, 1.0, 1.0, cfg), Error);
    try {
      integrate_finite(one, 2.0, 1.0, cfg);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidInterval);
    }
    try {
      integrate_finite([](double t) { return 1.0 / (t - 0.5); }, 0.0, 1.0, cfg);
      FAIL("expected NonFiniteEvaluation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonFiniteEvaluation);
    }
    try {
      integrate_semi_infinite(one, 0.0, cfg);
      FAIL("expected TailNotDecaying");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TailNotDecaying);
    }
    QuadratureConfig bad;
    bad.abs_tol = 0.0;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(integrate_finite(one, 0.0, 1.0, bad), Error);
    bad = QuadratureConfig{};
    bad.max_evaluations = 14;
    CHECK_THROWS_AS(integrate_finite(one, 0.0, 1.0, bad), Error);
  }
}

TEST_CASE("half line split at one") {
  const QuadratureConfig cfg;
  // Log-periodic oscillation at the origin.
  auto f = [](double x) { return std::cos(3.0 * std::log(x)) * std::exp(-x); };
  const double head = oracle::trapezoid(
      [](double s) { return std::cos(-3.0 * s) * std::exp(-std::exp(-s)) * std::exp(-s); }, 0.0, 40.0, 400'000);
  const double tail = oracle::trapezoid([](double x) { return std::cos(3.0 * std::log(x)) * std::exp(-x); }, 1.0, 41.0, 400'000);
  const auto r = integrate_half_line(f, cfg);
  CHECK(r.value == doctest::Approx(head + tail).epsilon(1e-8));
}
