#include "lebedev/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lebedev/error.hpp"

namespace lebedev {

namespace {

using std::numbers::pi;

// Inner results evaluated at outer nodes, with errors weighted by the rest
// of the outer integrand.
struct WeightedInner {
  long evaluations = 0;
  double max_weighted_error = 0.0;
  bool converged = true;

  double operator()(const QuadratureResult& r, double factor) {
    evaluations += r.evaluations;
    max_weighted_error = std::max(max_weighted_error, r.error_estimate * std::abs(factor));
    converged = converged && r.converged;
    return r.value * factor;
  }

  // `length` is the effective length of the outer range.
  QuadratureResult combine(const QuadratureResult& outer, double length, double scale) const {
    return {scale * outer.value,
            std::abs(scale) * (outer.error_estimate + length * max_weighted_error),
            outer.evaluations + evaluations, outer.converged && converged};
  }
};

// Effective length of (0, inf) for integrands that decay at least like e^{-x}.
constexpr double kHalfLineLength = 2.0;

void require_x(double x) {
  if (!(std::isfinite(x) && x > 0.0)) {
    std::ostringstream msg;
    msg << "x must be finite and > 0, got " << x;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

void require_n(int n) {
  if (n < 1 || n > kMaxIndex) {
    std::ostringstream msg;
    msg << "index n must be in [1, " << kMaxIndex << "], got " << n;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

void require_family(const CoefficientSequence& c, KernelFamily expected) {
  if (c.family != expected) {
    throw Error(ErrorCode::FamilyMismatch, "sequence tagged '" + std::string(to_string(c.family)) +
                                               "' used with the '" +
                                               std::string(to_string(expected)) + "' transform");
  }
  if (c.values.empty()) throw Error(ErrorCode::InvalidArgument, "empty coefficient sequence");
  require_n(c.n_max());
  for (double v : c.values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
  }
}

// Profile integrals reduce to (0, pi) through the odd part psi(u) - psi(-u);
// even profiles cancel exactly.
template <class Bracket>
QuadratureResult profile_integral(const PeriodicProfile& p, double x, const QuadratureConfig& cfg,
                                  Bracket bracket, double scale) {
  require_x(x);
  WeightedInner inner;
  auto integrand = [&](double u) {
    const double odd = p(u) - p(-u);
    if (odd == 0.0) return 0.0;
    return inner(bracket(u), odd * std::sinh(u));
  };
  const auto outer = quad::integrate_finite(integrand, 0.0, pi, cfg);
  return inner.combine(outer, pi, scale);
}

SeriesResult finish_series(const std::vector<double>& terms, const std::vector<double>& errors,
                           long evaluations, bool converged) {
  SeriesResult r;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    r.value += terms[i];
    r.error_estimate += errors[i];
  }
  r.evaluations = evaluations;
  r.converged = converged;
  const double last = std::abs(terms.back());
  r.tail_ratio = last == 0.0 ? 0.0 : last / std::max(std::abs(r.value), last);
  r.tail_warning = r.tail_ratio > kTailWarningRatio;
  return r;
}

SeriesResult invert_with(const CoefficientSequence& c, double x, const QuadratureConfig& cfg,
                         KernelFamily family) {
  require_family(c, family);
  require_x(x);
  const bool a = family == KernelFamily::ProductKernel;
  const auto kernels = a ? phi_kernels(c.n_max(), x, cfg) : psi_kernels(c.n_max(), x, cfg);
  const double prefactor = a ? 1.0 / (pi * pi * pi) : 1.0 / (pi * pi);
  std::vector<double> terms;
  std::vector<double> errors;
  long evaluations = 0;
  bool converged = true;
  for (int n = 1; n <= c.n_max(); ++n) {
    const auto& k = kernels[static_cast<std::size_t>(n - 1)];
    const double weight = std::sinh(pi * n) * c[n] * prefactor;
    terms.push_back(weight * k.value);
    errors.push_back(std::abs(weight) * k.error_estimate);
    evaluations += k.evaluations;
    converged = converged && k.converged;
  }
  return finish_series(terms, errors, evaluations, converged);
}

SeriesResult synthesize_with(const CoefficientSequence& c, double x, const QuadratureConfig& cfg,
                             KernelFamily family) {
  require_family(c, family);
  require_x(x);
  const auto probe = summability_probe(c);
  if (!probe.ok) {
    std::ostringstream msg;
    msg << "coefficient prefix fails the summability probe (last weighted terms "
        << probe.last_terms << " not decreasing)";
    throw Error(ErrorCode::SummabilityViolation, msg.str());
  }
  const bool a = family == KernelFamily::ProductKernel;
  std::vector<double> terms;
  std::vector<double> errors;
  long evaluations = 0;
  bool converged = true;
  for (int n = 1; n <= c.n_max(); ++n) {
    if (c[n] == 0.0) {
      terms.push_back(0.0);
      errors.push_back(0.0);
      continue;
    }
    const auto k = a ? product_kernel(n, x, cfg) : squared_kernel(n, x, cfg);
    terms.push_back(c[n] * k.value);
    errors.push_back(std::abs(c[n]) * k.error_estimate);
    evaluations += k.evaluations;
    converged = converged && k.converged;
  }
  return finish_series(terms, errors, evaluations, converged);
}

template <class Single>
CoefficientSequence per_index(KernelFamily family, int n_max, Execution mode, Single single) {
  require_n(n_max);
  CoefficientSequence c{family, std::vector<double>(static_cast<std::size_t>(n_max))};
  for_each_index(c.values.size(), mode,
                 [&](std::size_t i) { c.values[i] = single(static_cast<int>(i) + 1).value; });
  return c;
}

}  // namespace

double MemoizedFunction::operator()(double x) const {
  {
    std::lock_guard lock(mutex_);
    const auto it = values_.find(x);
    if (it != values_.end()) return it->second;
  }
  const double v = f_(x);
  std::lock_guard lock(mutex_);
  values_.emplace(x, v);
  return v;
}

std::size_t MemoizedFunction::size() const {
  std::lock_guard lock(mutex_);
  return values_.size();
}

QuadratureResult build_f_from_profile_a(const PeriodicProfile& p, double x,
                                        const QuadratureConfig& cfg) {
  auto bracket = [&](double u) {
    const double c = std::cosh(u);
    const auto k = macdonald_k0(x * c, cfg);
    return QuadratureResult{k.value * c, k.error_estimate * c, k.evaluations, k.converged};
  };
  return profile_integral(p, x, cfg, bracket, 2.0 * x / pi);
}

QuadratureResult build_f_from_profile_b(const PeriodicProfile& p, double x,
                                        const QuadratureConfig& cfg) {
  auto bracket = [&](double u) { return struve_bracket(x * std::cosh(u), cfg); };
  return profile_integral(p, x, cfg, bracket, 1.0);
}

QuadratureResult build_f_from_profile(const PeriodicProfile& p, KernelFamily family, double x,
                                      const QuadratureConfig& cfg) {
  return family == KernelFamily::ProductKernel ? build_f_from_profile_a(p, x, cfg)
                                               : build_f_from_profile_b(p, x, cfg);
}

QuadratureResult coefficient_from_profile(const PeriodicProfile& p, int n,
                                          const QuadratureConfig& cfg) {
  require_n(n);
  auto odd = [&](double u) { return 0.5 * (p(u) - p(-u)); };
  const auto r = quad::integrate_periodic_oscillatory(odd, n, cfg, quad::Parity::Odd);
  const double scale = pi / std::sinh(pi * n);
  return {scale * r.value, scale * r.error_estimate, r.evaluations, r.converged};
}

CoefficientSequence coefficients_from_profile(const PeriodicProfile& p, KernelFamily family,
                                              int n_max, const QuadratureConfig& cfg,
                                              Execution mode) {
  return per_index(family, n_max, mode,
                   [&](int n) { return coefficient_from_profile(p, n, cfg); });
}

QuadratureResult forward_a(quad::Integrand f, int n, const QuadratureConfig& cfg) {
  require_n(n);
  WeightedInner inner;
  auto integrand = [&](double y) {
    const double fy = f(y);
    if (fy == 0.0) return 0.0;
    return inner(product_kernel(n, y, cfg), fy);
  };
  return inner.combine(quad::integrate_half_line(integrand, cfg), kHalfLineLength, 1.0);
}

QuadratureResult forward_b(quad::Integrand f, int n, const QuadratureConfig& cfg) {
  require_n(n);
  WeightedInner inner;
  auto integrand = [&](double y) {
    const double fy = f(y);
    if (fy == 0.0) return 0.0;
    return inner(squared_kernel(n, y, cfg), fy);
  };
  return inner.combine(quad::integrate_half_line(integrand, cfg), kHalfLineLength, 1.0);
}

CoefficientSequence forward_all(const std::function<double(double)>& f, KernelFamily family,
                                int n_max, const QuadratureConfig& cfg, Execution mode) {
  MemoizedFunction memo(f);
  auto g = [&memo](double y) { return memo(y); };
  return per_index(family, n_max, mode, [&](int n) {
    return family == KernelFamily::ProductKernel ? forward_a(g, n, cfg) : forward_b(g, n, cfg);
  });
}

SeriesResult invert_a(const CoefficientSequence& c, double x, const QuadratureConfig& cfg) {
  return invert_with(c, x, cfg, KernelFamily::ProductKernel);
}

SeriesResult invert_b(const CoefficientSequence& c, double x, const QuadratureConfig& cfg) {
  return invert_with(c, x, cfg, KernelFamily::SquaredKernel);
}

SeriesResult invert(const CoefficientSequence& c, double x, const QuadratureConfig& cfg) {
  return invert_with(c, x, cfg, c.family);
}

SummabilityProbe summability_probe(const CoefficientSequence& c) {
  SummabilityProbe probe;
  std::vector<double> weighted;
  for (int n = 1; n <= c.n_max(); ++n) {
    const double w = c.family == KernelFamily::ProductKernel ? std::exp(-0.5 * pi * n) : 1.0;
    const double t = std::abs(c[n]) * w;
    if (!std::isfinite(t)) probe.ok = false;
    weighted.push_back(t);
    probe.weighted_sum += t;
  }
  const std::size_t size = weighted.size();
  if (size >= 3) {
    const double t1 = weighted[size - 3];
    const double t2 = weighted[size - 2];
    const double t3 = weighted[size - 1];
    probe.last_terms = std::max({t1, t2, t3});
    if (t1 > 0.0 && t1 < t2 && t2 < t3) probe.ok = false;
  } else {
    for (double t : weighted) probe.last_terms = std::max(probe.last_terms, t);
  }
  if (!std::isfinite(probe.weighted_sum)) probe.ok = false;
  return probe;
}

SeriesResult synthesize_a(const CoefficientSequence& c, double x, const QuadratureConfig& cfg) {
  return synthesize_with(c, x, cfg, KernelFamily::ProductKernel);
}

SeriesResult synthesize_b(const CoefficientSequence& c, double x, const QuadratureConfig& cfg) {
  return synthesize_with(c, x, cfg, KernelFamily::SquaredKernel);
}

SeriesResult synthesize(const CoefficientSequence& c, double x, const QuadratureConfig& cfg) {
  return synthesize_with(c, x, cfg, c.family);
}

QuadratureResult analyze_a(quad::Integrand f, int n, const QuadratureConfig& cfg) {
  require_n(n);
  WeightedInner inner;
  auto integrand = [&](double x) {
    const double fx = f(x);
    if (fx == 0.0) return 0.0;
    const auto k = phi_kernel(n, x, cfg);
    return inner({k.value, k.error_estimate, k.evaluations, k.converged}, fx);
  };
  const double scale = std::sinh(pi * n) / (pi * pi * pi);
  return inner.combine(quad::integrate_half_line(integrand, cfg), kHalfLineLength, scale);
}

QuadratureResult analyze_b(quad::Integrand f, int n, const QuadratureConfig& cfg) {
  require_n(n);
  WeightedInner inner;
  auto integrand = [&](double x) {
    const double fx = f(x);
    if (fx == 0.0) return 0.0;
    const auto k = psi_kernel(n, x, cfg);
    return inner({k.value, k.error_estimate, k.evaluations, k.converged}, fx);
  };
  const double scale = std::sinh(pi * n) / (pi * pi);
  return inner.combine(quad::integrate_half_line(integrand, cfg), kHalfLineLength, scale);
}

CoefficientSequence analyze_all(const std::function<double(double)>& f, KernelFamily family,
                                int n_max, const QuadratureConfig& cfg, Execution mode) {
  MemoizedFunction memo(f);
  auto g = [&memo](double x) { return memo(x); };
  return per_index(family, n_max, mode, [&](int n) {
    return family == KernelFamily::ProductKernel ? analyze_a(g, n, cfg) : analyze_b(g, n, cfg);
  });
}

ReconstructionReport roundtrip_report(const PeriodicProfile& p, KernelFamily family, int n_max,
                                      const std::vector<double>& grid,
                                      const QuadratureConfig& cfg, Execution mode) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "reconstruction grid is empty");
  for (double x : grid) require_x(x);
  const auto coeffs = coefficients_from_profile(p, family, n_max, cfg, mode);

  ReconstructionReport report;
  report.family = family;
  report.grid = grid;
  report.truth.assign(grid.size(), 0.0);
  report.reconstructed.assign(grid.size(), 0.0);
  report.terms_used = n_max;
  std::vector<char> warned(grid.size(), 0);
  std::vector<char> converged(grid.size(), 1);
  for_each_index(grid.size(), mode, [&](std::size_t i) {
    const auto truth = build_f_from_profile(p, family, grid[i], cfg);
    const auto series = invert(coeffs, grid[i], cfg);
    report.truth[i] = truth.value;
    report.reconstructed[i] = series.value;
    warned[i] = series.tail_warning;
    converged[i] = truth.converged && series.converged;
  });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = std::abs(report.reconstructed[i] - report.truth[i]);
    report.max_abs_error = std::max(report.max_abs_error, d);
    report.max_rel_error =
        std::max(report.max_rel_error, d / std::max(std::abs(report.truth[i]), cfg.abs_tol));
    report.tail_warning = report.tail_warning || warned[i];
    report.converged = report.converged && converged[i];
  }
  return report;
}

}  // namespace lebedev
