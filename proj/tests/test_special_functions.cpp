#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lebedev/error.hpp"
#include "lebedev/special_functions.hpp"
#include "lebedev/verify.hpp"
#include "oracles.hpp"

using namespace lebedev;
using std::numbers::pi;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected lebedev::Error");
  return ErrorCode::InvalidArgument;
}

// K_{i tau}(x) from the oracle series: -pi Im I_{i tau}(x) / sinh(pi tau).
double k_from_series_oracle(double tau, double x) {
  return -pi * oracle::bessel_i_imag(tau, x).imag() / std::sinh(pi * tau);
}

}  // namespace

TEST_CASE("K_0") {
  const auto k1 = macdonald_k0(1.0);
  CHECK(k1.value == doctest::Approx(oracle::k0(1.0)).epsilon(1e-13));
  CHECK(k1.converged);
  const double large = macdonald_k0(50.0).value * std::exp(50.0) * std::sqrt(100.0 / pi);
  CHECK(large >= 0.99);
  CHECK(large <= 1.01);
  const double small = macdonald_k0(1e-6).value / -std::log(1e-6);
  CHECK(small >= 0.9);
  CHECK(small <= 1.1);

  SUBCASE("positive and decreasing") {
    double previous = INFINITY;
    for (double x : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0}) {
      const double v = macdonald_k0(x).value;
      CHECK(v > 0.0);
      CHECK(v < previous);
      previous = v;
    }
  }
  CHECK(code_of([] { macdonald_k0(0.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { macdonald_k0(-1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("K of imaginary order") {
  CHECK(macdonald_k_imag(0.0, 1.0).value == macdonald_k0(1.0).value);
  CHECK(macdonald_k_imag(1.0, 1.0).value == doctest::Approx(oracle::k_imag(1.0, 1.0)).epsilon(1e-12));
  CHECK(macdonald_k_imag(2.0, 1.0).value == macdonald_k_imag(-2.0, 1.0).value);
  CHECK(macdonald_k_imag(ImaginaryOrderPoint{2.0, 1.0}).value == macdonald_k_imag(2.0, 1.0).value);

  SUBCASE("series and integral agree") {
    for (double tau : {0.5, 1.0, 2.5, 6.0, 12.0}) {
      for (double x : {1e-6, 0.05, 0.5, 1.0, 2.0}) {
        CAPTURE(tau);
        CAPTURE(x);
        const double a = macdonald_k_imag(tau, x).value;
        const double b = macdonald_k_imag_series(tau, x).value;
        CHECK(std::abs(a - b) <= 1e-12);
        CHECK(b == doctest::Approx(k_from_series_oracle(tau, x)).epsilon(1e-9));
      }
    }
  }
  SUBCASE("automatic path selection") {
    CHECK(macdonald_k_imag_auto(1.0, 1.0).value == macdonald_k_imag_series(1.0, 1.0).value);
    CHECK(macdonald_k_imag_auto(1.0, 3.0).value == macdonald_k_imag(1.0, 3.0).value);
    CHECK(macdonald_k_imag_auto(0.25, 1.0).value == macdonald_k_imag(0.25, 1.0).value);
  }
}

TEST_CASE("complex log Gamma") {
  CHECK(std::abs(complex_log_gamma({1.0, 0.0})) < 1e-14);
  CHECK(complex_log_gamma({0.5, 0.0}).real() == doctest::Approx(0.5 * std::log(pi)).epsilon(1e-14));
  const auto z = complex_log_gamma({1.0, 1.0});
  const auto ref = oracle::log_gamma({1.0, 1.0});
  CHECK(std::abs(z - ref) < 1e-12);

  SUBCASE("lattice against the oracle and the recurrence") {
    for (double re : {-2.5, -0.7, 0.3, 1.0, 2.2, 7.5}) {
      for (double im : {-3.0, 0.5, 1.0, 4.0, 10.0}) {
        const std::complex<double> w(re, im);
        CAPTURE(w);
        const auto lhs = std::exp(complex_log_gamma(w + 1.0));
        const auto rhs = w * std::exp(complex_log_gamma(w));
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
        if (re > 0.0) {
          const auto g = std::exp(complex_log_gamma(w));
          const auto o = std::exp(oracle::log_gamma(w));
          CHECK(std::abs(g - o) <= 1e-12 * std::abs(o));
        }
      }
    }
  }
  CHECK(code_of([] { complex_log_gamma({0.0, 0.0}); }) == ErrorCode::PoleArgument);
  CHECK(code_of([] { complex_log_gamma({-3.0, 0.0}); }) == ErrorCode::PoleArgument);
}

TEST_CASE("Re I of imaginary order") {
  double direct = 0.0;
  double term = 1.0;
  for (int k = 0; k < 50; ++k) {
    if (k > 0) term *= 0.25 / (static_cast<double>(k) * k);
    direct += term;
  }
  CHECK(bessel_i_imag_re(0.0, 1.0) == doctest::Approx(direct).epsilon(1e-15));
  // Near 0, Re I_{i tau}(x) oscillates with amplitude 1/|Gamma(1 + i tau)|.
  CHECK(std::abs(bessel_i_imag_re(1.0, 1e-8)) <= std::sqrt(std::sinh(pi) / pi) * (1.0 + 1e-12));
  CHECK(bessel_i_imag_re(1.0, 2.0) == doctest::Approx(oracle::bessel_i_imag(1.0, 2.0).real()).epsilon(1e-11));
  CHECK(code_of([] { bessel_i_imag_re(1.0, 31.0); }) == ErrorCode::SeriesRangeExceeded);
  CHECK(code_of([] { bessel_i_imag_re(21.0, 1.0); }) == ErrorCode::SeriesRangeExceeded);
}

TEST_CASE("product kernel") {
  SUBCASE("Abel integral equals the Bessel product at half the argument") {
    for (int n = 1; n <= 4; ++n) {
      for (double x : {0.5, 1.0, 2.0, 4.0}) {
        CAPTURE(n);
        CAPTURE(x);
        const double abel = product_kernel(n, x).value;
        CHECK(abel == doctest::Approx(product_kernel_series(n, x).value).epsilon(1e-8));
      }
    }
  }
  SUBCASE("n = 1, x = 1 against the oracle") {
    const double tau = 0.5;
    const double y = 0.5;
    const double oracle_value = 0.5 * pi / (2.0 * std::cosh(pi * tau)) * oracle::k_imag(tau, y) * 2.0 *
                                oracle::bessel_i_imag(tau, y).real();
    CHECK(product_kernel(1, 1.0).value == doctest::Approx(oracle_value).epsilon(1e-9));
  }
  SUBCASE("large argument") {
    const double limit = pi / (2.0 * std::cosh(0.5 * pi));
    CHECK(50.0 * product_kernel(1, 50.0).value == doctest::Approx(limit).epsilon(0.02));
  }
  SUBCASE("error estimate shrinks with the tolerance") {
    QuadratureConfig loose;
    loose.abs_tol = 1e-6;
    loose.rel_tol = 1e-6;
    const auto a = product_kernel(3, 1.5, loose);
    const auto b = product_kernel(3, 1.5);
    CHECK(std::isfinite(a.value));
    CHECK(b.error_estimate <= a.error_estimate);
    CHECK(std::abs(a.value - b.value) <= 10.0 * (a.error_estimate + b.error_estimate));
  }
  SUBCASE("the literal identity at the same argument does not hold") {
    const double literal = bessel_product(1, 1.0).value;
    const double abel = product_kernel(1, 1.0).value;
    CHECK(std::abs(literal - abel) > 0.1 * std::abs(literal));
  }
}

TEST_CASE("squared kernel") {
  const double k = oracle::k_imag(1.0, 0.5);
  CHECK(squared_kernel(2, 1.0).value == doctest::Approx(0.5 * k * k).epsilon(1e-11));
  SUBCASE("Abel integral equals the square at half the argument") {
    for (int n = 1; n <= 6; ++n) {
      for (double x : {0.5, 1.0, 2.0, 4.0}) {
        CAPTURE(n);
        CAPTURE(x);
        CHECK(squared_kernel_abel(n, x).value == doctest::Approx(squared_kernel(n, x).value).epsilon(1e-9));
      }
    }
  }
  SUBCASE("positive, and decreasing once x exceeds n") {
    for (int n = 1; n <= 6; ++n) {
      for (double x : {0.1, 0.5, 1.0, 2.0}) CHECK(squared_kernel(n, x).value > 0.0);
      double previous = INFINITY;
      for (double x : {8.0, 12.0, 16.0, 24.0}) {
        const double v = squared_kernel(n, x).value;
        CHECK(v > 0.0);
        CHECK(v < previous);
        previous = v;
      }
    }
  }
  SUBCASE("the literal identity at the same argument does not hold") {
    const double literal = bessel_square(1, 1.0).value;
    const double abel = squared_kernel_abel(1, 1.0).value;
    CHECK(std::abs(literal - abel) > 0.1 * std::abs(literal));
  }
}

TEST_CASE("Struve M_0") {
  CHECK(struve_m0(0.0).value == -1.0);
  CHECK(struve_m0(10.0).value == doctest::Approx(oracle::struve_m0(10.0)).epsilon(1e-10));
  for (double z = 0.0; z <= 60.0; z += 0.5) {
    const double m = struve_m0(z).value;
    CHECK(m <= 0.0);
    CHECK(m >= -1.0);
    CHECK(std::abs(struve_bracket(z).value) <= 2.0 / pi + z);
  }
  CHECK(code_of([] { struve_m0(-1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("Lebedev inequality lattice") {
  const double stat = lebedev_lattice_statistic();
  CHECK(stat <= 1.01 * kLebedevLatticeFixture);
  CHECK(stat >= 0.99 * kLebedevLatticeFixture);
}

TEST_CASE("kernel family names") {
  CHECK(parse_kernel_family("product") == KernelFamily::ProductKernel);
  CHECK(parse_kernel_family("squared") == KernelFamily::SquaredKernel);
  CHECK(to_string(KernelFamily::SquaredKernel) == "squared");
  CHECK(code_of([] { parse_kernel_family("phi"); }) == ErrorCode::InvalidArgument);
}
