#include "lebedev/verify.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "lebedev/error.hpp"
#include "lebedev/kernels.hpp"
#include "lebedev/transforms.hpp"

namespace lebedev {

namespace {

using std::numbers::pi;
using CheckFn = std::function<Check()>;

std::string label(std::string_view base, std::initializer_list<std::pair<const char*, double>> args) {
  std::ostringstream os;
  os << base;
  for (const auto& [key, value] : args) {
    if (os.tellp() > 0) os << ' ';
    os << key << '=' << value;
  }
  return os.str();
}

// |d| / max(|ref|, floor / tol): passes iff |d| <= max(tol |ref|, floor).
Check relative_check(std::string suite, std::string name, double value, double reference,
                     double tol, double floor = 0.0) {
  const double d = std::abs(value - reference);
  double denom = std::abs(reference);
  if (floor > 0.0) denom = std::max(denom, floor / tol);
  const double measured = denom > 0.0 ? d / denom : d;
  std::ostringstream detail;
  detail.precision(17);
  detail << "value=" << value << " reference=" << reference;
  return {std::move(suite), std::move(name), measured, tol,
          std::isfinite(measured) && measured <= tol, detail.str()};
}

Check bound_check(std::string suite, std::string name, double measured, double tol,
                  std::string detail = {}) {
  return {std::move(suite), std::move(name), measured, tol,
          std::isfinite(measured) && measured <= tol, std::move(detail)};
}

void identity_checks(const QuadratureConfig& cfg, std::vector<CheckFn>& out) {
  const std::string s = "identities";
  for (int n = 1; n <= 5; ++n) {
    for (double u : {0.25, 0.5, 1.0, 2.0, 3.0}) {
      out.push_back([=] {
        return relative_check(s, label("laplace_macdonald", {{"n", n}, {"u", u}}),
                              laplace_macdonald_numeric(n, u, cfg).value,
                              laplace_macdonald_closed(n, u), 1e-8);
      });
    }
  }
  for (int n = 1; n <= 4; ++n) {
    for (double x : {0.5, 1.0, 2.0}) {
      out.push_back([=] {
        return relative_check(s, label("product_kernel_abel_vs_series", {{"n", n}, {"x", x}}),
                              product_kernel(n, x, cfg).value,
                              product_kernel_series(n, x, cfg).value, 1e-6);
      });
    }
  }
  for (int n = 1; n <= 6; ++n) {
    for (double x : {0.5, 1.0, 2.0, 4.0}) {
      out.push_back([=] {
        return relative_check(s, label("squared_kernel_abel_vs_square", {{"n", n}, {"x", x}}),
                              squared_kernel_abel(n, x, cfg).value,
                              squared_kernel(n, x, cfg).value, 1e-7);
      });
    }
  }
  for (double t : {0.5, 1.0, 2.0, 4.0}) {
    for (double u : {0.0, 0.5, 1.0, 2.0}) {
      out.push_back([=] {
        return relative_check(s, label("k0_halfline_projection", {{"t", t}, {"u", u}}),
                              k0_halfline_projection(t, u, cfg).value,
                              k0_halfline_projection_closed(t, u), 1e-7, 1e-12);
      });
      out.push_back([=] {
        return relative_check(s, label("struve_abel_projection", {{"t", t}, {"u", u}}),
                              struve_abel_projection(t, u, cfg).value,
                              struve_abel_projection_closed(t, u), 1e-7, 1e-12);
      });
    }
  }
}

void biorthogonality_checks(const QuadratureConfig& cfg, std::vector<CheckFn>& out) {
  constexpr int kSize = 4;
  for (auto family : {KernelFamily::ProductKernel, KernelFamily::SquaredKernel}) {
    for (int m = 1; m <= kSize; ++m) {
      CoefficientSequence c{family, std::vector<double>(kSize, 0.0)};
      c.values[static_cast<std::size_t>(m - 1)] = 1.0;
      auto f = std::make_shared<MemoizedFunction>(
          [c, cfg](double x) { return synthesize(c, x, cfg).value; });
      for (int n = 1; n <= kSize; ++n) {
        out.push_back([=] {
          auto g = [&f](double x) { return (*f)(x); };
          const auto r = family == KernelFamily::ProductKernel ? analyze_a(g, n, cfg)
                                                               : analyze_b(g, n, cfg);
          const double expected = n == m ? 1.0 : 0.0;
          std::ostringstream detail;
          detail.precision(17);
          detail << "value=" << r.value << " expected=" << expected;
          return bound_check("biorthogonality",
                             label(std::string("analyze_synthesize_") + std::string(to_string(family)),
                                   {{"n", n}, {"m", m}}),
                             std::abs(r.value - expected), 1e-5, detail.str());
        });
      }
    }
  }
}

void roundtrip_checks(const QuadratureConfig& cfg, std::uint64_t seed, Execution mode,
                      std::vector<CheckFn>& out) {
  const std::string s = "roundtrip";
  const double a1 = pi * pi / std::sinh(pi);
  for (auto family : {KernelFamily::ProductKernel, KernelFamily::SquaredKernel}) {
    const std::string fam(to_string(family));
    out.push_back([=] {
      const auto p = PeriodicProfile::builtin("sin");
      auto f = [&](double x) { return build_f_from_profile(p, family, x, cfg).value; };
      const auto c = forward_all(f, family, 5, cfg, mode);
      return relative_check(s, "forward_sin_a1_" + fam, c[1], a1, 1e-8);
    });
    out.push_back([=] {
      const auto p = PeriodicProfile::builtin("sin");
      auto f = [&](double x) { return build_f_from_profile(p, family, x, cfg).value; };
      const auto c = forward_all(f, family, 5, cfg, mode);
      double worst = 0.0;
      for (int n = 2; n <= 5; ++n) worst = std::max(worst, std::abs(c[n]));
      return bound_check(s, "forward_sin_higher_modes_" + fam, worst, 1e-8);
    });
    out.push_back([=] {
      const auto report = roundtrip_report(PeriodicProfile::builtin("sin"), family, 8,
                                           {0.2, 0.5, 1.0, 2.0, 4.0}, cfg, mode);
      return bound_check(s, "reconstruct_sin_" + fam, report.max_rel_error, 1e-4);
    });
    out.push_back([=] {
      const auto p = PeriodicProfile::sine_series({1.0, 0.5});
      auto f = [&](double x) { return build_f_from_profile(p, family, x, cfg).value; };
      const auto forward = forward_all(f, family, 4, cfg, mode);
      const auto formula = coefficients_from_profile(p, family, 4, cfg, mode);
      double worst = 0.0;
      for (int n = 1; n <= 4; ++n) worst = std::max(worst, std::abs(forward[n] - formula[n]));
      return bound_check(s, "forward_vs_formula_two_mode_" + fam, worst, 1e-6);
    });
  }
  out.push_back([=] {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const double alpha = coef(rng);
    const double beta = coef(rng);
    const auto p = PeriodicProfile::builtin("sawtooth");
    const auto q = PeriodicProfile::sine_series({0.0, 1.0, 0.25});
    const PeriodicProfile combo{[=](double u) { return alpha * p(u) + beta * q(u); },
                                std::abs(alpha) * p.lipschitz_bound + std::abs(beta) * q.lipschitz_bound,
                                "combination"};
    check_profile(combo, seed);
    const auto cp = coefficients_from_profile(p, KernelFamily::ProductKernel, 6, cfg, mode);
    const auto cq = coefficients_from_profile(q, KernelFamily::ProductKernel, 6, cfg, mode);
    const auto cc = coefficients_from_profile(combo, KernelFamily::ProductKernel, 6, cfg, mode);
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n) {
      const double scale = std::sinh(pi * n) / pi;
      worst = std::max(worst, scale * std::abs(cc[n] - alpha * cp[n] - beta * cq[n]));
    }
    return bound_check(s, "coefficient_linearity", worst, 1e-8,
                       label("", {{"alpha", alpha}, {"beta", beta}}));
  });
}

void bounds_checks(const QuadratureConfig& cfg, std::vector<CheckFn>& out) {
  const std::string s = "bounds";
  out.push_back([=] {
    const double stat = lebedev_lattice_statistic(cfg);
    return relative_check(s, "lebedev_lattice_statistic", stat, kLebedevLatticeFixture, 1e-2);
  });
  out.push_back([=] {
    const double v = macdonald_k0(50.0, cfg).value * std::exp(50.0) * std::sqrt(100.0 / pi);
    return bound_check(s, "k0_large_argument", std::abs(v - 1.0), 0.01, label("", {{"ratio", v}}));
  });
  out.push_back([=] {
    const double v = macdonald_k0(1e-6, cfg).value / -std::log(1e-6);
    return bound_check(s, "k0_small_argument", std::abs(v - 1.0), 0.1, label("", {{"ratio", v}}));
  });
  out.push_back([=] {
    double worst = 0.0;
    for (double z = 0.0; z <= 50.0; z += 0.25) {
      const double m = struve_m0(z, cfg).value;
      worst = std::max(worst, std::abs(m));
      const double bracket = std::abs(2.0 / pi + z * m);
      worst = std::max(worst, bracket / (2.0 / pi + z));
    }
    return bound_check(s, "struve_m0_bounds", worst, 1.0);
  });
  out.push_back([=] {
    double worst = 0.0;
    int used = 0;
    for (const auto& c : honesty_cases()) {
      const auto r = c.run(cfg);
      if (!r.converged) continue;
      ++used;
      const double err = std::abs(r.value - c.exact);
      const double allowed = 10.0 * r.error_estimate;
      worst = std::max(worst, allowed > 0.0 ? err / allowed : (err == 0.0 ? 0.0 : INFINITY));
    }
    return bound_check(s, "quadrature_error_honesty", worst, 1.0,
                       label("", {{"converged_cases", used}}));
  });
}

}  // namespace

quad::QuadratureConfig identity_config() {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-17;
  cfg.rel_tol = 1e-12;
  return cfg;
}

double lebedev_lattice_statistic(const QuadratureConfig& cfg) {
  double worst = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double tau = 0.5 * i;
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
      const double k = macdonald_k_imag(tau, x, cfg).value;
      worst = std::max(worst, std::abs(k) * std::pow(x, 0.25) * std::sqrt(std::sinh(pi * tau)));
    }
  }
  return worst;
}

std::vector<HonestyCase> honesty_cases() {
  using quad::QuadratureResult;
  using Cfg = const QuadratureConfig&;
  std::vector<HonestyCase> cases;
  auto finite = [&](std::string name, double exact, double a, double b, double (*f)(double)) {
    cases.push_back({std::move(name), exact,
                     [=](Cfg cfg) { return quad::integrate_finite(f, a, b, cfg); }});
  };
  auto semi = [&](std::string name, double exact, double (*f)(double)) {
    cases.push_back({std::move(name), exact,
                     [=](Cfg cfg) { return quad::integrate_semi_infinite(f, 0.0, cfg); }});
  };
  finite("cubic", 0.25, 0.0, 1.0, [](double t) { return t * t * t; });
  finite("exp", std::exp(1.0) - 1.0, 0.0, 1.0, [](double t) { return std::exp(t); });
  finite("arctan", pi / 4.0, 0.0, 1.0, [](double t) { return 1.0 / (1.0 + t * t); });
  finite("sqrt", 2.0 / 3.0, 0.0, 1.0, [](double t) { return std::sqrt(t); });
  finite("log", -1.0, 0.0, 1.0, [](double t) { return std::log(t); });
  finite("sin_squared", pi, -pi, pi, [](double t) { return std::pow(std::sin(2.0 * t), 2); });
  finite("runge", 0.4 * std::atan(5.0), -1.0, 1.0, [](double t) { return 1.0 / (1.0 + 25.0 * t * t); });
  finite("kink", 5.0 / 18.0, 0.0, 1.0, [](double t) { return std::abs(t - 1.0 / 3.0); });
  finite("oscillation", std::sin(21.0) / 21.0, 0.0, 1.0, [](double t) { return std::cos(21.0 * t); });
  semi("gaussian_moment", 0.5, [](double t) { return t * std::exp(-t * t); });
  semi("exponential", 1.0, [](double t) { return std::exp(-t); });
  semi("damped_cosine", 0.5, [](double t) { return std::exp(-t) * std::cos(t); });
  semi("gamma_3", 2.0, [](double t) { return t * t * std::exp(-t); });
  semi("half_gaussian", 0.5 * std::sqrt(pi), [](double t) { return std::exp(-t * t); });
  semi("k0_at_1", 0.42102443824070834, [](double u) { return std::exp(-std::cosh(u)); });
  cases.push_back({"abel_lower_const", 0.5 * pi, [](Cfg cfg) {
                     return quad::integrate_abel_lower([](double) { return 1.0; }, 1.0, cfg);
                   }});
  cases.push_back({"abel_lower_linear", 2.0, [](Cfg cfg) {
                     return quad::integrate_abel_lower([](double t) { return t; }, 2.0, cfg);
                   }});
  cases.push_back({"abel_upper_inverse_square", 1.0, [](Cfg cfg) {
                     return quad::integrate_abel_upper([](double t) { return 1.0 / (t * t); }, 1.0, cfg);
                   }});
  cases.push_back({"periodic_sinh_n3", 2.0 * 3.0 * std::sinh(pi) / 10.0, [](Cfg cfg) {
                     return quad::integrate_periodic_oscillatory(
                         [](double u) { return std::sinh(u); }, 3, cfg);
                   }});
  cases.push_back({"periodic_linear_n2", -pi, [](Cfg cfg) {
                     return quad::integrate_periodic_oscillatory([](double u) { return u; }, 2, cfg);
                   }});
  return cases;
}

std::vector<Check> run_suite(std::string_view suite, const QuadratureConfig* cfg,
                             std::uint64_t seed, Execution mode) {
  const bool all = suite == "all";
  bool known = all;
  for (auto name : kSuites) known = known || suite == name;
  if (!known) throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(suite) + "'");

  const QuadratureConfig defaults;
  const QuadratureConfig tight = identity_config();
  std::vector<CheckFn> checks;
  if (all || suite == "identities") identity_checks(cfg ? *cfg : tight, checks);
  if (all || suite == "biorthogonality") biorthogonality_checks(cfg ? *cfg : defaults, checks);
  // Suites already run their checks concurrently; nested loops stay serial.
  if (all || suite == "roundtrip") roundtrip_checks(cfg ? *cfg : defaults, seed, Execution::Serial, checks);
  if (all || suite == "bounds") bounds_checks(cfg ? *cfg : defaults, checks);

  std::vector<Check> results(checks.size());
  for_each_index(checks.size(), mode, [&](std::size_t i) { results[i] = checks[i](); });
  return results;
}

}  // namespace lebedev
