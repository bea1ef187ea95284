#pragma once

// The discrete Lebedev transforms: profile-generated functions, coefficient
// extraction, synthesis and inversion series, and integral analysis.

#include <functional>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "lebedev/kernels.hpp"
#include "lebedev/parallel.hpp"
#include "lebedev/profile.hpp"

namespace lebedev {

/// sinh(pi n) overflows just past n = 225.
inline constexpr int kMaxIndex = 200;

/// Ratio of the last retained term to the running sum above which an
/// inversion series is flagged.
inline constexpr double kTailWarningRatio = 1e-6;

struct CoefficientSequence {
  KernelFamily family = KernelFamily::ProductKernel;
  std::vector<double> values;  // a_1 .. a_N

  int n_max() const { return static_cast<int>(values.size()); }
  double operator[](int n) const { return values[static_cast<std::size_t>(n - 1)]; }
};

/// A truncated series value with its bookkeeping.
struct SeriesResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = true;
  /// |last term| / |sum|; zero when both vanish.
  double tail_ratio = 0.0;
  bool tail_warning = false;
};

struct SummabilityProbe {
  /// Sum of |a_n| w_n with w_n = exp(-pi n/2) (product) or 1 (squared).
  double weighted_sum = 0.0;
  /// Largest of the last three weighted terms. The probe fails when those
  /// three are positive and strictly increasing, or anything is non-finite.
  double last_terms = 0.0;
  bool ok = true;
};

struct ReconstructionReport {
  KernelFamily family = KernelFamily::ProductKernel;
  std::vector<double> grid;
  std::vector<double> truth;
  std::vector<double> reconstructed;
  double max_abs_error = 0.0;
  /// Relative to max(|truth|, abs_tol).
  double max_rel_error = 0.0;
  int terms_used = 0;
  bool tail_warning = false;
  bool converged = true;
};

/// Thread-safe cache around a function of one variable. Cached values are
/// the values f itself returns, so callers see identical results.
class MemoizedFunction {
 public:
  explicit MemoizedFunction(std::function<double(double)> f) : f_(std::move(f)) {}
  double operator()(double x) const;
  std::size_t size() const;

 private:
  std::function<double(double)> f_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<double, double> values_;
};

/// (2x/pi) * integral over (-pi, pi) of K_0(x cosh u) psi(u) sinh(u) cosh(u).
QuadratureResult build_f_from_profile_a(const PeriodicProfile& p, double x,
                                        const QuadratureConfig& cfg = {});
/// Integral over (-pi, pi) of psi(u) sinh(u) (2/pi + x cosh u M_0(x cosh u)).
QuadratureResult build_f_from_profile_b(const PeriodicProfile& p, double x,
                                        const QuadratureConfig& cfg = {});
QuadratureResult build_f_from_profile(const PeriodicProfile& p, KernelFamily family, double x,
                                      const QuadratureConfig& cfg = {});

/// a_n = pi / sinh(pi n) * integral over (-pi, pi) of psi(u) sin(n u).
CoefficientSequence coefficients_from_profile(const PeriodicProfile& p, KernelFamily family,
                                              int n_max, const QuadratureConfig& cfg = {},
                                              Execution mode = Execution::Parallel);
QuadratureResult coefficient_from_profile(const PeriodicProfile& p, int n,
                                          const QuadratureConfig& cfg = {});

/// a_n = integral over y > 0 of product_kernel(n, y) f(y).
QuadratureResult forward_a(quad::Integrand f, int n, const QuadratureConfig& cfg = {});
/// a_n = integral over y > 0 of squared_kernel(n, y) f(y).
QuadratureResult forward_b(quad::Integrand f, int n, const QuadratureConfig& cfg = {});
/// forward_a / forward_b for n = 1..n_max. In Parallel mode f is called
/// concurrently.
CoefficientSequence forward_all(const std::function<double(double)>& f, KernelFamily family,
                                int n_max, const QuadratureConfig& cfg = {},
                                Execution mode = Execution::Parallel);

/// pi^-3 sum_n sinh(pi n) Phi_n(x) a_n.
SeriesResult invert_a(const CoefficientSequence& c, double x, const QuadratureConfig& cfg = {});
/// pi^-2 sum_n sinh(pi n) Psi_n(x) a_n.
SeriesResult invert_b(const CoefficientSequence& c, double x, const QuadratureConfig& cfg = {});
SeriesResult invert(const CoefficientSequence& c, double x, const QuadratureConfig& cfg = {});

SummabilityProbe summability_probe(const CoefficientSequence& c);

/// sum_n a_n product_kernel(n, x). Throws Error(SummabilityViolation).
SeriesResult synthesize_a(const CoefficientSequence& c, double x, const QuadratureConfig& cfg = {});
/// sum_n a_n squared_kernel(n, x). Throws Error(SummabilityViolation).
SeriesResult synthesize_b(const CoefficientSequence& c, double x, const QuadratureConfig& cfg = {});
SeriesResult synthesize(const CoefficientSequence& c, double x, const QuadratureConfig& cfg = {});

/// sinh(pi n)/pi^3 * integral over x > 0 of Phi_n(x) f(x).
QuadratureResult analyze_a(quad::Integrand f, int n, const QuadratureConfig& cfg = {});
/// sinh(pi n)/pi^2 * integral over x > 0 of Psi_n(x) f(x).
QuadratureResult analyze_b(quad::Integrand f, int n, const QuadratureConfig& cfg = {});
CoefficientSequence analyze_all(const std::function<double(double)>& f, KernelFamily family,
                                int n_max, const QuadratureConfig& cfg = {},
                                Execution mode = Execution::Parallel);

/// Profile -> f -> coefficients -> inversion series, compared on the grid.
ReconstructionReport roundtrip_report(const PeriodicProfile& p, KernelFamily family, int n_max,
                                      const std::vector<double>& grid,
                                      const QuadratureConfig& cfg = {},
                                      Execution mode = Execution::Parallel);

}  // namespace lebedev
