#pragma once

// 2 pi-periodic Lipschitz generators psi and the profile mini-language
// used by the CLI.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lebedev {

struct PeriodicProfile {
  std::function<double(double)> psi;
  double lipschitz_bound = 1.0;
  std::string label;

  double operator()(double u) const { return psi(u); }
  /// phi(u) = psi(u) sinh(u).
  double phi(double u) const;

  static PeriodicProfile zero();
  /// psi(u) = sum_k b_k sin(k u).
  static PeriodicProfile sine_series(std::vector<double> b, std::string label = {});
  /// Builtins: "zero", "sin", "cos", "sawtooth", each scaled by amplitude.
  static PeriodicProfile builtin(std::string_view name, double amplitude = 1.0);
  /// Piecewise-linear interpolant of (u, psi) samples covering [-pi, pi],
  /// periodized over [-pi, pi). The Lipschitz bound is the largest slope.
  static PeriodicProfile sampled(std::vector<std::pair<double, double>> samples,
                                 std::string label = {});
};

/// Wraps u into [-pi, pi).
double wrap_angle(double u);

/// Statistical Lipschitz test on random pairs plus a periodicity probe.
/// Throws Error(InvalidProfile) on violation.
void check_profile(const PeriodicProfile& p, std::uint64_t seed = 0, int pairs = 2000);

/// Reads a `u,psi` CSV (header required). Throws Error(InvalidProfile).
std::vector<std::pair<double, double>> read_profile_csv(const std::string& path);

/// Parses "builtin:NAME[:AMPLITUDE]", "fourier:b1,b2,..." or "sampled:PATH".
PeriodicProfile parse_profile(std::string_view spec);

}  // namespace lebedev
