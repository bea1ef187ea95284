#include "lebedev/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lebedev/detail/nested.hpp"
#include "lebedev/error.hpp"

namespace lebedev {

namespace {

using std::numbers::pi;
using cplx = std::complex<double>;

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr int kSeriesMaxTerms = 300;

void require_positive(double x, const char* what) {
  if (!(std::isfinite(x) && x > 0.0)) {
    std::ostringstream msg;
    msg << what << " must be finite and > 0, got " << x;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

void require_index(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "kernel index n must be >= 1");
}

// Upper bound of K_0(t) e^t for t >= x, used as a tail envelope.
double k0_envelope(double t) { return std::sqrt(0.5 * pi / t) * std::exp(-t); }

}  // namespace

std::string_view to_string(KernelFamily family) noexcept {
  return family == KernelFamily::ProductKernel ? "product" : "squared";
}

KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "product") return KernelFamily::ProductKernel;
  if (name == "squared") return KernelFamily::SquaredKernel;
  throw Error(ErrorCode::InvalidArgument, "unknown kernel family '" + std::string(name) + "'");
}

QuadratureResult macdonald_k_imag(double tau, double x, const QuadratureConfig& cfg) {
  require_positive(x, "Macdonald argument x");
  if (!std::isfinite(tau)) throw Error(ErrorCode::InvalidArgument, "order tau must be finite");
  tau = std::abs(tau);

  // exp(-x (cosh u - 1)) with cosh u - 1 = 2 sinh^2(u/2).
  auto damping = [x](double u) {
    const double s = std::sinh(0.5 * u);
    return std::exp(-2.0 * x * s * s);
  };
  auto integrand = [&](double u) {
    const double d = damping(u);
    return tau == 0.0 ? d : d * std::cos(tau * u);
  };
  const auto scaled = quad::integrate_semi_infinite(integrand, 0.0, cfg, damping);
  const double scale = std::exp(-x);
  return {scaled.value * scale, scaled.error_estimate * scale, scaled.evaluations,
          scaled.converged};
}

QuadratureResult macdonald_k0(double x, const QuadratureConfig& cfg) {
  return macdonald_k_imag(0.0, x, cfg);
}

std::complex<double> complex_log_gamma(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
    std::ostringstream msg;
    msg << "log Gamma has a pole at z=" << z.real();
    throw Error(ErrorCode::PoleArgument, msg.str());
  }
  if (z.real() < 0.5) {
    return std::log(pi) - std::log(std::sin(pi * z)) - complex_log_gamma(1.0 - z);
  }
  z -= 1.0;
  cplx sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

namespace {

struct SeriesSum {
  std::complex<double> value;
  double magnitude;  // sum of |terms|
  int terms;
};

// sum_k (x/2)^(2k + i tau) / (k! Gamma(k + 1 + i tau)) = I_{i tau}(x).
SeriesSum ascending_series(double tau, double x) {
  require_positive(x, "Bessel argument x");
  if (x > kSeriesMaxArgument || !(tau <= kSeriesMaxOrder)) {
    std::ostringstream msg;
    msg << "series for I_{i tau}(x) validated for x <= " << kSeriesMaxArgument
        << ", tau <= " << kSeriesMaxOrder << "; got tau=" << tau << ", x=" << x;
    throw Error(ErrorCode::SeriesRangeExceeded, msg.str());
  }
  const double half = 0.5 * x;
  const double q = half * half;
  cplx term = std::exp(cplx(0.0, tau * std::log(half)) - complex_log_gamma(cplx(1.0, tau)));
  cplx sum = term;
  double magnitude = std::abs(term);
  for (int k = 1; k <= kSeriesMaxTerms; ++k) {
    term *= q / (static_cast<double>(k) * cplx(static_cast<double>(k), tau));
    sum += term;
    const double size = std::abs(term);
    magnitude += size;
    if (k > half && size < 1e-16 * std::abs(sum)) return {sum, magnitude, k + 1};
  }
  throw Error(ErrorCode::SeriesRangeExceeded, "ascending series did not terminate");
}

}  // namespace

double bessel_i_imag_re(double tau, double x) {
  return ascending_series(std::abs(tau), x).value.real();
}

QuadratureResult macdonald_k_imag_series(double tau, double x) {
  tau = std::abs(tau);
  if (!(tau >= kSeriesMinOrder)) {
    throw Error(ErrorCode::SeriesRangeExceeded, "series for K_{i tau} needs tau >= 0.5");
  }
  const auto s = ascending_series(tau, x);
  const double scale = pi / std::sinh(pi * tau);
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  return {-scale * s.value.imag(), 4.0 * kEps * scale * s.magnitude, s.terms, true};
}

QuadratureResult macdonald_k_imag_auto(double tau, double x, const QuadratureConfig& cfg) {
  tau = std::abs(tau);
  if (x > 0.0 && x <= kSeriesSwitch && tau >= kSeriesMinOrder && tau <= kSeriesMaxOrder) {
    return macdonald_k_imag_series(tau, x);
  }
  return macdonald_k_imag(tau, x, cfg);
}

QuadratureResult bessel_product(int n, double x, const QuadratureConfig& cfg) {
  require_index(n);
  const double tau = 0.5 * n;
  const double re_i = bessel_i_imag_re(tau, x);
  const auto k = macdonald_k_imag(tau, x, cfg);
  const double prefactor = pi / (2.0 * std::cosh(pi * tau));
  const double value = prefactor * k.value * 2.0 * re_i;
  const double error = prefactor * 2.0 * std::abs(re_i) * k.error_estimate +
                       1e-15 * std::abs(value);
  return {value, error, k.evaluations, k.converged};
}

QuadratureResult bessel_square(int n, double x, const QuadratureConfig& cfg) {
  require_index(n);
  const auto k = macdonald_k_imag(0.5 * n, x, cfg);
  const double e = k.error_estimate;
  return {0.5 * k.value * k.value, std::abs(k.value) * e + 0.5 * e * e, k.evaluations,
          k.converged};
}

QuadratureResult product_kernel(int n, double x, const QuadratureConfig& cfg) {
  require_index(n);
  require_positive(x, "kernel argument x");
  detail::InnerTracker inner;
  const double order = static_cast<double>(n);
  auto k_imag = [&](double t) { return inner(macdonald_k_imag_auto(order, t, cfg)); };
  const auto outer = quad::integrate_abel_lower(k_imag, x, cfg);
  return inner.combine(outer, 0.5 * pi);
}

QuadratureResult product_kernel_series(int n, double x, const QuadratureConfig& cfg) {
  require_positive(x, "kernel argument x");
  const auto r = bessel_product(n, 0.5 * x, cfg);
  return {0.5 * r.value, 0.5 * r.error_estimate, r.evaluations, r.converged};
}

QuadratureResult squared_kernel(int n, double x, const QuadratureConfig& cfg) {
  require_positive(x, "kernel argument x");
  return bessel_square(n, 0.5 * x, cfg);
}

QuadratureResult squared_kernel_abel(int n, double x, const QuadratureConfig& cfg) {
  require_index(n);
  require_positive(x, "kernel argument x");
  detail::InnerTracker inner;
  const double order = static_cast<double>(n);
  auto k_imag = [&](double t) { return inner(macdonald_k_imag(order, t, cfg)); };
  const auto outer = quad::integrate_abel_upper(k_imag, x, cfg, k0_envelope);
  // Inner errors scale like exp(-x cosh v); their integral is at most
  // K_0(x) e^x times the largest one.
  return inner.combine(outer, std::sqrt(0.5 * pi / x) + std::log1p(1.0 / x));
}

QuadratureResult struve_m0(double z, const QuadratureConfig& cfg) {
  if (!(std::isfinite(z) && z >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "Struve argument must be finite and >= 0");
  }
  if (z == 0.0) return {-1.0, 0.0, 0, true};
  // th = pi/2 - phi keeps the peak of exp(-z cos th) at phi = 0.
  auto integrand = [z](double phi) { return std::exp(-z * std::sin(phi)); };
  const auto r = quad::integrate_finite(integrand, 0.0, 0.5 * pi, cfg);
  const double value = std::clamp(-2.0 / pi * r.value, -1.0, 0.0);
  return {value, 2.0 / pi * r.error_estimate, r.evaluations, r.converged};
}

QuadratureResult struve_bracket(double z, const QuadratureConfig& cfg) {
  const auto m = struve_m0(z, cfg);
  return {2.0 / pi + z * m.value, z * m.error_estimate, m.evaluations, m.converged};
}

}  // namespace lebedev
