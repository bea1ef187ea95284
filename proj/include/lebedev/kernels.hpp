#pragma once

// Inversion kernels Phi_n, Psi_n and the closed-form projections that link
// them to the transform kernels.

#include <vector>

#include "lebedev/special_functions.hpp"

namespace lebedev {

struct KernelEvaluation {
  int n = 0;
  double x = 0.0;
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = true;
};

struct KernelOptions {
  /// Integrate over (-pi, pi) instead of doubling the half range.
  bool full_range = false;
  /// Use -sin(n u) in place of sin(n u).
  bool reflect_index = false;
};

/// Phi_n(x) = x * integral over (-pi, pi) of K_0(x cosh u) sinh(2u) sin(n u).
KernelEvaluation phi_kernel(int n, double x, const QuadratureConfig& cfg = {},
                            KernelOptions options = {});

/// Psi_n(x) = integral over (-pi, pi) of (2/pi + x cosh u M_0(x cosh u)) sinh(u) sin(n u).
KernelEvaluation psi_kernel(int n, double x, const QuadratureConfig& cfg = {},
                            KernelOptions options = {});

/// Phi_1..Phi_{n_max} at one x. K_0 values are shared between indices;
/// each entry is bit-identical to the corresponding phi_kernel call.
std::vector<KernelEvaluation> phi_kernels(int n_max, double x, const QuadratureConfig& cfg = {});
std::vector<KernelEvaluation> psi_kernels(int n_max, double x, const QuadratureConfig& cfg = {});

/// pi sin(n u) / (sinh(u) sinh(pi n)); the removable point u = 0 gives
/// pi n / sinh(pi n).
double laplace_macdonald_closed(int n, double u);

/// Integral of exp(-x cosh u) K_{in}(x) over x > 0.
QuadratureResult laplace_macdonald_numeric(int n, double u, const QuadratureConfig& cfg = {});

/// Integral over x > t of x K_0(x cosh u) / sqrt(x^2 - t^2).
QuadratureResult k0_halfline_projection(double t, double u, const QuadratureConfig& cfg = {});
/// pi exp(-t cosh u) / (2 cosh u).
double k0_halfline_projection_closed(double t, double u);

/// Integral over (0, t) of (2/pi + x cosh u M_0(x cosh u)) / sqrt(t^2 - x^2).
QuadratureResult struve_abel_projection(double t, double u, const QuadratureConfig& cfg = {});
/// exp(-t cosh u).
double struve_abel_projection_closed(double t, double u);

}  // namespace lebedev
