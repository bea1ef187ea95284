#pragma once

// Verification suites over the closed-form identities, the biorthogonality
// of the analysis/synthesis pairs, round trips and the bounds.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "lebedev/parallel.hpp"
#include "lebedev/quadrature.hpp"

namespace lebedev {

/// max |K_{i tau}(x)| x^{1/4} sqrt(sinh(pi tau)) over tau in {0.5, ..., 5},
/// x in {0.1, 0.5, 1, 2, 5, 10}.
inline constexpr double kLebedevLatticeFixture = 1.3813792380174161;

struct Check {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct HonestyCase {
  std::string name;
  double exact;
  std::function<quad::QuadratureResult(const quad::QuadratureConfig&)> run;
};

/// Twenty integrals with closed forms, one per engine entry point shape.
std::vector<HonestyCase> honesty_cases();

/// max |K_{i tau}(x)| x^{1/4} sqrt(sinh(pi tau)) over the lattice.
double lebedev_lattice_statistic(const quad::QuadratureConfig& cfg = {});

/// Tight tolerances used by the identity checks.
quad::QuadratureConfig identity_config();

inline constexpr std::string_view kSuites[] = {"identities", "biorthogonality", "roundtrip",
                                               "bounds"};

/// Runs one suite, or all of them for "all". `cfg` replaces each suite's
/// own configuration when given. Throws Error(InvalidArgument) for an
/// unknown suite.
std::vector<Check> run_suite(std::string_view suite, const quad::QuadratureConfig* cfg,
                             std::uint64_t seed, Execution mode = Execution::Parallel);

}  // namespace lebedev
