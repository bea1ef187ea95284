// Acceptance criteria 1-10. One PASS/FAIL line per criterion, plus
// separately labelled lines for the corrected Abel identities.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "lebedev/kernels.hpp"
#include "lebedev/transforms.hpp"
#include "lebedev/verify.hpp"

using namespace lebedev;
using std::numbers::pi;

namespace {

struct Outcome {
  double measured;
  double tolerance;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
  // The literal identity does not hold; this line is expected to fail.
  bool known_failure = false;
};

double rel(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

std::string at(const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%g", key, v);
  return buf;
}

struct Worst {
  double value = 0.0;
  std::string where;
  void update(double v, std::string w) {
    if (!(v <= value)) {
      value = v;
      where = std::move(w);
    }
  }
};

Outcome laplace_macdonald() {
  const auto cfg = identity_config();
  Worst worst;
  for (int n = 1; n <= 5; ++n) {
    for (double u : {0.25, 0.5, 1.0, 2.0, 3.0}) {
      const double closed = laplace_macdonald_closed(n, u);
      worst.update(rel(laplace_macdonald_numeric(n, u, cfg).value, closed),
                   at("n", n) + " " + at("u", u));
    }
  }
  return {worst.value, 1e-8, worst.where};
}

// K_{in/2}(x)^2 / 2 against the Abel integral of K_{in} over (x, inf).
Outcome upper_literal() {
  const auto cfg = identity_config();
  Worst worst;
  for (int n = 1; n <= 6; ++n) {
    for (double x : {0.5, 1.0, 2.0, 4.0}) {
      const double rhs = squared_kernel_abel(n, x, cfg).value;
      worst.update(rel(bessel_square(n, x, cfg).value, rhs), at("n", n) + " " + at("x", x));
    }
  }
  return {worst.value, 1e-7, worst.where};
}

Outcome upper_corrected() {
  const auto cfg = identity_config();
  Worst worst;
  for (int n = 1; n <= 6; ++n) {
    for (double x : {0.5, 1.0, 2.0, 4.0}) {
      const double rhs = squared_kernel_abel(n, x, cfg).value;
      worst.update(rel(bessel_square(n, 0.5 * x, cfg).value, rhs), at("n", n) + " " + at("x", x));
    }
  }
  return {worst.value, 1e-7, worst.where};
}

// The Bessel product at x against the Abel integral over (0, x).
Outcome lower_literal() {
  const auto cfg = identity_config();
  Worst worst;
  for (int n = 1; n <= 4; ++n) {
    for (double x : {0.5, 1.0, 2.0}) {
      const double rhs = product_kernel(n, x, cfg).value;
      worst.update(rel(bessel_product(n, x, cfg).value, rhs), at("n", n) + " " + at("x", x));
    }
  }
  return {worst.value, 1e-6, worst.where};
}

Outcome lower_corrected() {
  const auto cfg = identity_config();
  Worst worst;
  for (int n = 1; n <= 4; ++n) {
    for (double x : {0.5, 1.0, 2.0}) {
      const double rhs = product_kernel(n, x, cfg).value;
      worst.update(rel(0.5 * bessel_product(n, 0.5 * x, cfg).value, rhs),
                   at("n", n) + " " + at("x", x));
    }
  }
  return {worst.value, 1e-6, worst.where};
}

// Measured in units of the allowed error max(1e-7 |closed|, 1e-12).
Outcome projections() {
  const auto cfg = identity_config();
  const auto measure = [](double value, double closed) {
    return std::abs(value - closed) / std::max(1e-7 * std::abs(closed), 1e-12);
  };
  Worst worst;
  for (double t : {0.5, 1.0, 2.0, 4.0}) {
    for (double u : {0.0, 0.5, 1.0, 2.0}) {
      const std::string where = at("t", t) + " " + at("u", u);
      worst.update(measure(k0_halfline_projection(t, u, cfg).value, k0_halfline_projection_closed(t, u)),
                   "k0 " + where);
      worst.update(measure(struve_abel_projection(t, u, cfg).value, struve_abel_projection_closed(t, u)),
                   "struve " + where);
    }
  }
  return {worst.value, 1.0, worst.where};
}

Outcome biorthogonality() {
  Worst worst;
  for (auto family : {KernelFamily::ProductKernel, KernelFamily::SquaredKernel}) {
    for (int m = 1; m <= 4; ++m) {
      CoefficientSequence c{family, std::vector<double>(static_cast<std::size_t>(m), 0.0)};
      c.values.back() = 1.0;
      auto f = [&](double x) { return synthesize(c, x).value; };
      const auto row = analyze_all(f, family, 4);
      for (int n = 1; n <= 4; ++n) {
        worst.update(std::abs(row[n] - (n == m ? 1.0 : 0.0)),
                     std::string(to_string(family)) + " " + at("n", n) + " " + at("m", m));
      }
    }
  }
  return {worst.value, 1e-5, worst.where};
}

// Measured in units of each threshold; 1 is the pass limit.
Outcome round_trip(KernelFamily family) {
  const auto p = PeriodicProfile::builtin("sin");
  auto f = [&](double x) { return build_f_from_profile(p, family, x).value; };
  const auto forward = forward_all(f, family, 5);
  const double a1 = rel(forward[1], pi * pi / std::sinh(pi));
  double others = 0.0;
  for (int n = 2; n <= 5; ++n) others = std::max(others, std::abs(forward[n]));
  const auto report = roundtrip_report(p, family, 8, {0.2, 0.5, 1.0, 2.0, 4.0});
  const double measured = std::max({a1 / 1e-8, others / 1e-8, report.max_rel_error / 1e-4});
  return {measured, 1.0,
          at("a1_rel", a1) + " " + at("max_abs_a2_5", others) + " " +
              at("reconstruction_rel", report.max_rel_error)};
}

Outcome forward_vs_formula() {
  const auto p = PeriodicProfile::sine_series({1.0, 0.5});
  Worst worst;
  for (auto family : {KernelFamily::ProductKernel, KernelFamily::SquaredKernel}) {
    auto f = [&](double x) { return build_f_from_profile(p, family, x).value; };
    const auto forward = forward_all(f, family, 4);
    const auto formula = coefficients_from_profile(p, family, 4);
    for (int n = 1; n <= 4; ++n) {
      worst.update(std::abs(forward[n] - formula[n]), std::string(to_string(family)) + " " + at("n", n));
    }
  }
  return {worst.value, 1e-6, worst.where};
}

Outcome bounds() {
  const double stat = lebedev_lattice_statistic();
  const double large = macdonald_k0(50.0).value * std::exp(50.0) * std::sqrt(100.0 / pi);
  const double small = macdonald_k0(1e-6).value / -std::log(1e-6);
  const double measured = std::max({rel(stat, kLebedevLatticeFixture) / 1e-2,
                                    std::abs(large - 1.0) / 0.01, std::abs(small - 1.0) / 0.1});
  return {measured, 1.0,
          at("lattice", stat) + " " + at("k0_50_ratio", large) + " " + at("k0_small_ratio", small)};
}

Outcome honesty() {
  const quad::QuadratureConfig cfg;
  Worst worst;
  int converged = 0;
  for (const auto& c : honesty_cases()) {
    const auto r = c.run(cfg);
    if (!r.converged) continue;
    ++converged;
    const double err = std::abs(r.value - c.exact);
    const double allowed = 10.0 * r.error_estimate;
    worst.update(allowed > 0.0 ? err / allowed : (err == 0.0 ? 0.0 : INFINITY), c.name);
  }
  return {worst.value, 1.0, worst.where + " " + at("converged_cases", converged)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1", "Laplace-Macdonald identity", 30, laplace_macdonald},
      {"2", "upper Abel identity, literal form (K^2_{in/2}(x)/2)", 60, upper_literal, true},
      {"2c", "upper Abel identity, argument x/2", 60, upper_corrected},
      {"3", "lower Abel identity, literal form (Bessel product at x)", 60, lower_literal, true},
      {"3c", "lower Abel identity, argument x/2 and factor 1/2", 60, lower_corrected},
      {"4", "projection identities", 30, projections},
      {"5", "biorthogonality 4x4, both families", 300, biorthogonality},
      {"6", "round trip, product family", 120, [] { return round_trip(KernelFamily::ProductKernel); }},
      {"7", "round trip, squared family", 120, [] { return round_trip(KernelFamily::SquaredKernel); }},
      {"8", "forward vs coefficient formula", 180, forward_vs_formula},
      {"9", "bounds and asymptotics", 10, bounds},
      {"10", "quadrature honesty", 10, honesty},
  };

  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{INFINITY, 0.0, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.measured <= o.tolerance && seconds <= c.budget_seconds;
    std::string note;
    if (c.known_failure) note = pass ? "  [UNEXPECTED PASS]" : "  [known: the literal identity does not hold]";
    if (seconds > c.budget_seconds) note += "  [over time budget]";
    std::printf("criterion %-3s %s  %s  measured=%.3e tol=%.1e time=%.1fs/%.0fs  %s%s\n",
                c.id.c_str(), pass ? "PASS" : "FAIL", c.name.c_str(), o.measured, o.tolerance,
                seconds, c.budget_seconds, o.detail.c_str(), note.c_str());
    std::fflush(stdout);
    if (pass == c.known_failure) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
