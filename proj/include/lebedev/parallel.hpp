#pragma once

// Index-parallel loops with a serial reference path. Each index writes only
// its own output slot, so results do not depend on the schedule.

#include <cstddef>
#include <exception>
#include <vector>

namespace lebedev {

enum class Execution { Serial, Parallel };

/// Calls fn(i) for i in [0, count). In Parallel mode fn runs concurrently
/// and must not touch shared mutable state. The first exception (by index)
/// is rethrown after the loop.
template <class Fn>
void for_each_index(std::size_t count, Execution mode, Fn&& fn) {
  if (mode == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace lebedev
