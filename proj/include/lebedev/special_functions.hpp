#pragma once

// Macdonald functions of imaginary order, the real part of I_{i tau}, the
// modified Struve function M_0 and the two composite kernels of the
// discrete Lebedev transforms.

#include <complex>
#include <string_view>

#include "lebedev/quadrature.hpp"

namespace lebedev {

using quad::QuadratureConfig;
using quad::QuadratureResult;

/// Which transform pair a coefficient sequence belongs to.
/// ProductKernel: K_{in/2} (I_{in/2} + I_{-in/2}).  SquaredKernel: K_{in/2}^2.
enum class KernelFamily { ProductKernel, SquaredKernel };

std::string_view to_string(KernelFamily family) noexcept;
/// Accepts "product" / "squared". Throws Error(InvalidArgument) otherwise.
KernelFamily parse_kernel_family(std::string_view name);

struct ImaginaryOrderPoint {
  double tau;
  double x;
};

/// Largest argument for which the ascending series of Re I_{i tau} is used.
inline constexpr double kSeriesMaxArgument = 30.0;
/// Largest order for which the ascending series is validated.
inline constexpr double kSeriesMaxOrder = 20.0;

/// K_0(x) as the integral of exp(-x cosh u) over u > 0.
QuadratureResult macdonald_k0(double x, const QuadratureConfig& cfg = {});

/// K_{i tau}(x) = integral of exp(-x cosh u) cos(tau u) over u > 0. Even in
/// tau (negative tau is folded). The tolerances apply to e^x K_{i tau}(x).
QuadratureResult macdonald_k_imag(double tau, double x, const QuadratureConfig& cfg = {});
inline QuadratureResult macdonald_k_imag(ImaginaryOrderPoint p, const QuadratureConfig& cfg = {}) {
  return macdonald_k_imag(p.tau, p.x, cfg);
}

/// K_{i tau}(x) = -pi Im I_{i tau}(x) / sinh(pi tau) from the ascending
/// series. Used for small arguments inside the product kernel, where the
/// integral representation needs many oscillations to cancel.
QuadratureResult macdonald_k_imag_series(double tau, double x);

/// Series for x <= kSeriesSwitch and kSeriesMinOrder <= tau <= kSeriesMaxOrder,
/// the integral otherwise.
QuadratureResult macdonald_k_imag_auto(double tau, double x, const QuadratureConfig& cfg = {});

inline constexpr double kSeriesSwitch = 2.0;
inline constexpr double kSeriesMinOrder = 0.5;

/// log Gamma(z) on the branch continuous from the positive real axis
/// (Lanczos, g = 7, with reflection for Re z < 1/2).
std::complex<double> complex_log_gamma(std::complex<double> z);

/// Re I_{i tau}(x) from the ascending series; requires
/// 0 < x <= kSeriesMaxArgument and |tau| <= kSeriesMaxOrder.
double bessel_i_imag_re(double tau, double x);

/// pi/(2 cosh(pi n/2)) K_{in/2}(x) (I_{in/2}(x) + I_{-in/2}(x)): the Bessel
/// product exactly as it appears in the coefficient formula, at argument x.
QuadratureResult bessel_product(int n, double x, const QuadratureConfig& cfg = {});

/// K_{in/2}(x)^2 / 2 at argument x.
QuadratureResult bessel_square(int n, double x, const QuadratureConfig& cfg = {});

/// Kernel of the product family: the Abel integral of K_{in} over (0, x).
/// Equals bessel_product(n, x/2) / 2.
QuadratureResult product_kernel(int n, double x, const QuadratureConfig& cfg = {});

/// The product-family kernel from the Bessel side, bessel_product(n, x/2) / 2
/// (requires x/2 within the ascending-series range).
QuadratureResult product_kernel_series(int n, double x, const QuadratureConfig& cfg = {});

/// Kernel of the squared family, bessel_square(n, x/2).
QuadratureResult squared_kernel(int n, double x, const QuadratureConfig& cfg = {});

/// The squared-family kernel as the Abel integral of K_{in} over (x, inf).
QuadratureResult squared_kernel_abel(int n, double x, const QuadratureConfig& cfg = {});

/// M_0(z) = L_0(z) - I_0(z) = -(2/pi) * integral of exp(-z cos th), th in (0, pi/2).
QuadratureResult struve_m0(double z, const QuadratureConfig& cfg = {});

/// 2/pi + z M_0(z), the bracket shared by the squared-kernel family.
QuadratureResult struve_bracket(double z, const QuadratureConfig& cfg = {});

}  // namespace lebedev
