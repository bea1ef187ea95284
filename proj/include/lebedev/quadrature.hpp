#pragma once

// Adaptive Gauss-Kronrod (7/15) integration with bisection, plus the
// interval shapes needed by the index transforms: semi-infinite ranges with
// exponential decay, Abel-type inverse square root weights and
// zero-aligned panels for sine-weighted periodic integrands.

#include <concepts>
#include <functional>
#include <memory>
#include <type_traits>
#include <utility>

namespace lebedev::quad {

/// Non-owning reference to a callable. Only valid for the duration of the
/// call it is passed to.
template <class Signature>
class FunctionRef;

template <class R, class... Args>
class FunctionRef<R(Args...)> {
 public:
  template <class F>
    requires(!std::same_as<std::remove_cvref_t<F>, FunctionRef> &&
             std::is_invocable_r_v<R, F&, Args...>)
  FunctionRef(F&& f) noexcept  // NOLINT(google-explicit-constructor)
      : object_(const_cast<void*>(static_cast<const void*>(std::addressof(f)))),
        call_([](void* object, Args... args) -> R {
          return (*static_cast<std::remove_reference_t<F>*>(object))(std::forward<Args>(args)...);
        }) {}

  R operator()(Args... args) const { return call_(object_, std::forward<Args>(args)...); }

 private:
  void* object_;
  R (*call_)(void*, Args...);
};

using Integrand = FunctionRef<double(double)>;

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  /// Bisections allowed per initial panel (semi-infinite window, zero panel).
  int max_subdivisions = 60;
  long max_evaluations = 1'000'000;
  /// A semi-infinite tail is dropped once its envelope falls below
  /// decay_cutoff times the accumulated value.
  double decay_cutoff = 1e-16;

  /// Throws Error(InvalidArgument) when the invariants do not hold.
  void validate() const;

  double target(double value) const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = true;
};

/// Parity of f in integrate_periodic_oscillatory (the sine factor excluded).
enum class Parity { None, Even, Odd };

QuadratureResult integrate_finite(Integrand f, double a, double b, const QuadratureConfig& cfg);

/// `envelope`, when given, must bound |f(t)| for all t beyond its argument.
/// Without one the tail is probed from samples of f.
QuadratureResult integrate_semi_infinite(Integrand f, double a, const QuadratureConfig& cfg,
                                         const std::function<double(double)>& envelope = {});

/// Integral over (0, inf), split at 1: (0, 1] through x = exp(-s), the rest
/// through integrate_semi_infinite with the optional envelope.
QuadratureResult integrate_half_line(Integrand f, const QuadratureConfig& cfg,
                                     const std::function<double(double)>& envelope = {});

/// Integral of g(t)/sqrt(x^2-t^2) over (0, x), computed as the integral of
/// g(x sin th) over (0, pi/2).
QuadratureResult integrate_abel_lower(Integrand g, double x, const QuadratureConfig& cfg);

/// Integral of g(t)/sqrt(t^2-x^2) over (x, inf), computed as the integral of
/// g(x cosh v) over (0, inf). `envelope` is expressed in t.
QuadratureResult integrate_abel_upper(Integrand g, double x, const QuadratureConfig& cfg,
                                      const std::function<double(double)>& envelope = {});

/// Integral of f(u) sin(n u) over (-pi, pi), panels split at the zeros k pi / n.
QuadratureResult integrate_periodic_oscillatory(Integrand f, int n, const QuadratureConfig& cfg,
                                                Parity parity = Parity::None);

}  // namespace lebedev::quad
