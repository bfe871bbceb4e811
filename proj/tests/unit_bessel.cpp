#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fls/bessel.hpp"
#include "fls/error.hpp"
#include "mp_oracle.hpp"

using namespace fls;
using oracle::Mp;

namespace {

constexpr double kPi = std::numbers::pi;

// Error scale: |J| is not a usable denominator at its zeros, so relative
// error is taken against the local amplitude max(|J|, sqrt(2/(pi u)) capped at 1).
double amplitude(double j, double u) { return std::max(std::abs(j), std::min(1.0, std::sqrt(2.0 / (kPi * u)))); }

std::vector<double> sweep(double lo, double hi, int n) {
  std::vector<double> u;
  for (int i = 0; i < n; ++i) u.push_back(lo + (hi - lo) * (i + 0.5) / n);
  return u;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> u;
  for (int i = 0; i <= n; ++i) u.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / n));
  return u;
}

}  // namespace

TEST_CASE("order one half is the closed form") {
  Mp mp;
  CHECK(bessel_j(0.5, 0.0) == 0.0);
  CHECK(std::abs(bessel_j(0.5, kPi)) <= 1e-16);
  for (double u : log_grid(1e-6, 1e3, 400)) {
    const double ref = mp.jhalf(0, u);
    CHECK(std::abs(bessel_j(0.5, u) - ref) <= 1e-12 * amplitude(ref, u));
  }
}

TEST_CASE("order zero against the multiple-precision oracle") {
  Mp mp;
  CHECK(bessel_j(0, 0) == 1.0);
  double worst = 0;
  for (double u : sweep(0.0, 1000.0, 20000)) {
    const double ref = mp.jn(0, u);
    worst = std::max(worst, std::abs(bessel_j(0, u) - ref) / amplitude(ref, u));
  }
  for (double u : log_grid(1e-8, 1e3, 300)) {
    const double ref = mp.jn(0, u);
    worst = std::max(worst, std::abs(bessel_j(0, u) - ref) / amplitude(ref, u));
  }
  MESSAGE("J0 worst amplitude-relative error " << worst);
  CHECK(worst <= 1e-10);
  // first positive zero, itself located on the oracle by bisection
  double a = 2.0, b = 3.0;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    (mp.jn(0, a) * mp.jn(0, m) <= 0 ? b : a) = m;
  }
  CHECK(a == doctest::Approx(2.404825557695773).epsilon(1e-15));
  CHECK(std::abs(bessel_j(0, 2.404825557695773)) <= 1e-10);
  // away from zeros the plain relative error meets the bound too
  for (double u : sweep(0.0, 1000.0, 5000)) {
    const double ref = mp.jn(0, u);
    if (std::abs(ref) >= 1e-4) CHECK(std::abs(bessel_j(0, u) - ref) <= 1e-10 * std::abs(ref));
  }
}

TEST_CASE("other orders") {
  Mp mp;
  for (int n : {1, 2, 3, 5}) {
    double worst = 0;
    for (double u : sweep(0.0, 300.0, 6000)) {
      const double ref = mp.jn(n, u);
      worst = std::max(worst, std::abs(bessel_j(n, u) - ref) / amplitude(ref, u));
    }
    MESSAGE("J_" << n << " worst " << worst);
    CHECK(worst <= 1e-10);
  }
  for (int n : {1, 2, 4}) {
    double worst = 0;
    for (double u : sweep(0.05, 300.0, 6000)) {
      const double ref = mp.jhalf(n, u);
      worst = std::max(worst, std::abs(bessel_j(n + 0.5, u) - ref) / amplitude(ref, u));
    }
    MESSAGE("J_" << n << ".5 worst " << worst);
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("remainder after the leading asymptotic term") {
  Mp mp;
  for (double u : log_grid(1.0, 1e4, 200)) CHECK(bessel_remainder(0.5, u) == 0.0);
  // |R(u)| u^{3/2} bounded; calibrated on [1, 1e3] where the max is
  // 0.0997 = sqrt(2/pi)/8, the first correction coefficient
  constexpr double kC0 = 0.11;
  double worst = 0;
  for (double u : log_grid(1.0, 1e3, 600)) {
    const double R = bessel_remainder(0, u);
    worst = std::max(worst, std::abs(R) * std::pow(u, 1.5));
    CHECK(std::abs(R - mp.remainder0(u)) <= 1e-11);
  }
  MESSAGE("order 0: max |R| u^1.5 = " << worst);
  CHECK(worst <= kC0);
  CHECK(std::abs(bessel_remainder(0, 10.0)) <= kC0 * std::pow(10.0, -1.5));
  // order 1: R = J_1 - sqrt(2/(pi u)) cos(u - 3pi/4)
  for (double u : log_grid(1.0, 1e3, 100)) {
    const double lead = std::sqrt(2 / (kPi * u)) * std::cos(u - 0.75 * kPi);
    CHECK(std::abs(bessel_remainder(1, u) - (mp.jn(1, u) - lead)) <= 1e-11);
    CHECK(std::abs(bessel_remainder(1, u)) * std::pow(u, 1.5) <= 1.0);
  }
}

TEST_CASE("kernel J(x) x^-order") {
  for (double nu : {0.0, 0.5, 1.0, 1.5, 3.0}) {
    CHECK(bessel_kernel(nu, 0.0) == doctest::Approx(1.0 / (std::pow(2.0, nu) * std::tgamma(nu + 1))));
    for (double x : {1e-3, 0.1, 1.0, 7.0, 40.0})
      CHECK(bessel_kernel(nu, x) == doctest::Approx(bessel_j(nu, x) / std::pow(x, nu)).epsilon(1e-12).scale(1e-3));
  }
}

TEST_CASE("errors") {
  auto code = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::io_error;
  };
  CHECK(!bessel_order_supported(0.3));
  CHECK(bessel_order_supported(2.5));
  CHECK(code([] { bessel_j(0.3, 1.0); }) == ErrorCode::unsupported_order);
  CHECK(code([] { bessel_j(-1, 1.0); }) == ErrorCode::unsupported_order);
  CHECK(code([] { bessel_j(0, -1.0); }) == ErrorCode::out_of_range);
  CHECK(code([] { bessel_remainder(0, 0.5); }) == ErrorCode::out_of_range);
}
