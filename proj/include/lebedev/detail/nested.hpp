#pragma once

#include <algorithm>

#include "lebedev/quadrature.hpp"

namespace lebedev::detail {

// Collects the bookkeeping of inner integrals evaluated inside an outer
// integrand. One instance per outer call; never shared across threads.
struct InnerTracker {
  long evaluations = 0;
  double max_error = 0.0;
  bool converged = true;

  double operator()(const quad::QuadratureResult& r) {
    evaluations += r.evaluations;
    max_error = std::max(max_error, r.error_estimate);
    converged = converged && r.converged;
    return r.value;
  }

  // Combines an outer result with the inner contributions; `weight` bounds
  // the integral of the outer measure that multiplies the inner errors.
  quad::QuadratureResult combine(const quad::QuadratureResult& outer, double weight) const {
    return {outer.value, outer.error_estimate + weight * max_error,
            outer.evaluations + evaluations, outer.converged && converged};
  }
};

}  // namespace lebedev::detail
