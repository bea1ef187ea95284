#include "lebedev/kernels.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "lebedev/detail/nested.hpp"
#include "lebedev/error.hpp"

namespace lebedev {

namespace {

using std::numbers::pi;

void require_kernel_args(int n, double x) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "kernel index n must be >= 1");
  if (!(std::isfinite(x) && x > 0.0)) {
    std::ostringstream msg;
    msg << "kernel argument x must be finite and > 0, got " << x;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

void require_positive_t(double t) {
  if (!(std::isfinite(t) && t > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "projection argument t must be finite and > 0");
  }
}

// Inner values keyed by the exact node u. Confined to one batch call.
using NodeCache = std::map<double, QuadratureResult>;

enum class Kind { Phi, Psi };

QuadratureResult inner_value(Kind kind, double x, double u, const QuadratureConfig& cfg) {
  const double z = x * std::cosh(u);
  return kind == Kind::Phi ? macdonald_k0(z, cfg) : struve_bracket(z, cfg);
}

KernelEvaluation evaluate(Kind kind, int n, double x, const QuadratureConfig& cfg,
                          KernelOptions options, NodeCache* cache) {
  require_kernel_args(n, x);
  detail::InnerTracker inner;
  auto lookup = [&](double u) {
    if (cache == nullptr) return inner(inner_value(kind, x, u, cfg));
    auto it = cache->find(u);
    if (it == cache->end()) it = cache->emplace(u, inner_value(kind, x, u, cfg)).first;
    return inner(it->second);
  };
  const double sign = options.reflect_index ? -1.0 : 1.0;
  auto integrand = [&](double u) {
    const double weight = kind == Kind::Phi ? std::sinh(2.0 * u) : std::sinh(u);
    return sign * lookup(u) * weight;
  };
  const auto parity = options.full_range ? quad::Parity::None : quad::Parity::Odd;
  const auto outer = quad::integrate_periodic_oscillatory(integrand, n, cfg, parity);

  // Integral of |weight| over (-pi, pi) bounds the propagated inner error.
  double weight_mass = 0.0;
  double scale = 1.0;
  if (kind == Kind::Phi) {
    weight_mass = std::cosh(2.0 * pi) - 1.0;
    scale = x;
  } else {
    weight_mass = 2.0 * (std::cosh(pi) - 1.0);
  }
  const auto r = inner.combine(outer, weight_mass);
  return {n, x, scale * r.value, scale * r.error_estimate, r.evaluations, r.converged};
}

std::vector<KernelEvaluation> evaluate_all(Kind kind, int n_max, double x,
                                           const QuadratureConfig& cfg) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
  NodeCache cache;
  std::vector<KernelEvaluation> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) out.push_back(evaluate(kind, n, x, cfg, {}, &cache));
  return out;
}

// sin(n u) / sinh(u), continuous through u = 0.
double sine_ratio(int n, double u) {
  if (std::abs(u) < 1e-4) {
    const double nn = static_cast<double>(n) * n;
    const double u2 = u * u;
    // sin(nu)/u = n (1 - n^2 u^2/6 + n^4 u^4/120), u/sinh u = 1 - u^2/6 + 7u^4/360.
    const double num = n * (1.0 - nn * u2 / 6.0 + nn * nn * u2 * u2 / 120.0);
    const double den = 1.0 - u2 / 6.0 + 7.0 * u2 * u2 / 360.0;
    return num * den;
  }
  return std::sin(n * u) / std::sinh(u);
}

}  // namespace

KernelEvaluation phi_kernel(int n, double x, const QuadratureConfig& cfg, KernelOptions options) {
  return evaluate(Kind::Phi, n, x, cfg, options, nullptr);
}

KernelEvaluation psi_kernel(int n, double x, const QuadratureConfig& cfg, KernelOptions options) {
  return evaluate(Kind::Psi, n, x, cfg, options, nullptr);
}

std::vector<KernelEvaluation> phi_kernels(int n_max, double x, const QuadratureConfig& cfg) {
  return evaluate_all(Kind::Phi, n_max, x, cfg);
}

std::vector<KernelEvaluation> psi_kernels(int n_max, double x, const QuadratureConfig& cfg) {
  return evaluate_all(Kind::Psi, n_max, x, cfg);
}

double laplace_macdonald_closed(int n, double u) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "index n must be >= 1");
  if (!(std::abs(u) <= pi)) throw Error(ErrorCode::InvalidArgument, "u must lie in [-pi, pi]");
  return pi * sine_ratio(n, u) / std::sinh(pi * n);
}

QuadratureResult laplace_macdonald_numeric(int n, double u, const QuadratureConfig& cfg) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "index n must be >= 1");
  if (!(std::abs(u) <= pi)) throw Error(ErrorCode::InvalidArgument, "u must lie in [-pi, pi]");
  const double c = std::cosh(u);
  const double order = static_cast<double>(n);
  detail::InnerTracker inner;
  auto integrand = [&](double x) {
    return std::exp(-x * c) * inner(macdonald_k_imag_auto(order, x, cfg));
  };
  // |K_{in}(x)| <= K_0(x) <= sqrt(pi/(2x)) e^{-x}.
  auto envelope = [c](double x) { return std::sqrt(0.5 * pi / x) * std::exp(-x * (c + 1.0)); };
  const auto outer = quad::integrate_half_line(integrand, cfg, envelope);
  return inner.combine(outer, 1.0 / c);
}

QuadratureResult k0_halfline_projection(double t, double u, const QuadratureConfig& cfg) {
  require_positive_t(t);
  const double c = std::cosh(u);
  detail::InnerTracker inner;
  auto g = [&](double x) { return x * inner(macdonald_k0(x * c, cfg)); };
  auto envelope = [c](double x) { return x * std::sqrt(0.5 * pi / (x * c)) * std::exp(-x * c); };
  const auto outer = quad::integrate_abel_upper(g, t, cfg, envelope);
  return inner.combine(outer, t * (1.0 + 1.0 / (t * c)) * std::sqrt(0.5 * pi / (t * c)));
}

double k0_halfline_projection_closed(double t, double u) {
  const double c = std::cosh(u);
  return pi * std::exp(-t * c) / (2.0 * c);
}

QuadratureResult struve_abel_projection(double t, double u, const QuadratureConfig& cfg) {
  require_positive_t(t);
  const double c = std::cosh(u);
  detail::InnerTracker inner;
  auto g = [&](double x) { return inner(struve_bracket(x * c, cfg)); };
  const auto outer = quad::integrate_abel_lower(g, t, cfg);
  return inner.combine(outer, 0.5 * pi);
}

double struve_abel_projection_closed(double t, double u) { return std::exp(-t * std::cosh(u)); }

}  // namespace lebedev
