#include <doctest.h>

#include <cmath>

#include "fls/error.hpp"
#include "fls/spectra.hpp"
#include "oracles.hpp"

using namespace fls;

namespace {

const double kLog23 = std::log(2.0) / std::log(3.0);
const SetDescriptor kCantor = SetDescriptor::cantor({1, 2}, 2, 1.0 / 3.0);
const SetDescriptor kPoly = SetDescriptor::poly_sequence(1.0);
const SetDescriptor kFull = SetDescriptor::interval(1, 2);
const SetDescriptor kPoint = SetDescriptor::points({1.5});

std::vector<SetDescriptor> all_sets() {
  return {kFull, kPoint, kCantor, kPoly, SetDescriptor::union_of({kCantor, SetDescriptor::cantor({1, 2}, 2, 0.25)}),
          SetDescriptor::union_of({kCantor, kPoly})};
}

// Brute force over the half-shifted dyadic family using test-side covers of
// an explicit rendering: returns max_l (alpha l + log2 N_l) / j.
double phi_oracle(const std::vector<oracle::Seg>& pieces, double alpha, int j) {
  const long double delta = std::ldexp(1.0L, -j);
  double best = -1e300;
  for (int l = 0; l <= j; ++l) {
    const long double L = std::ldexp(1.0L, -l);
    std::uint64_t maxN = 0;
    const long long k0 = static_cast<long long>(std::floor((1.0L - L) / (L / 2))) - 1;
    const long long k1 = static_cast<long long>(std::ceil(2.0L / (L / 2))) + 1;
    for (long long k = k0; k <= k1; ++k) {
      const long double lo = k * (L / 2);
      maxN = std::max(maxN, oracle::greedy_cover(oracle::clip(pieces, lo, lo + L), delta));
    }
    if (maxN > 0) best = std::max(best, (alpha * l + std::log2(static_cast<double>(maxN))) / j);
  }
  return best;
}

}  // namespace

TEST_CASE("phi_at_scale closed forms") {
  for (int j : {8, 12, 16}) {
    for (double a = 0; a <= 2.0 + 1e-12; a += 0.125) {
      const double full = phi_at_scale(kFull, a, j);
      CHECK(full >= std::max(1.0, a) - 2.0 / j);
      CHECK(full <= std::max(1.0, a) + 2.0 / j);
      CHECK(phi_at_scale(kPoint, a, j) == doctest::Approx(a).epsilon(1e-14));
    }
  }
  for (double a = 0; a <= 2.0 + 1e-12; a += 0.0625)
    CHECK(std::abs(phi_at_scale(kCantor, a, 14) - std::max(a, kLog23)) <= 0.08);
}

TEST_CASE("phi_at_scale matches a brute-force family sweep") {
  const auto cantor = oracle::cantor_pieces(1, 2, 2, 1.0L / 3, 18);
  std::vector<long double> xs;
  for (auto [a, b] : oracle::polyseq_points(1.0, 1u << 16)) xs.push_back(a);
  std::vector<oracle::Seg> poly;
  std::sort(xs.begin(), xs.end());
  for (long double x : xs) poly.push_back({x, x});
  for (int j : {6, 9}) {
    for (double a : {0.0, 0.3, 0.63, 1.0, 1.7}) {
      CHECK(phi_at_scale(kCantor, a, j) == doctest::Approx(phi_oracle(cantor, a, j)).epsilon(1e-12));
      CHECK(phi_at_scale(kPoly, a, j) == doctest::Approx(phi_oracle(poly, a, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("phi_at_scale invariants on every test set") {
  for (const auto& s : all_sets()) {
    for (int j : {6, 10, 14}) {
      const ScaleProfile prof = scale_profile(s, j);
      std::vector<double> v;
      const double h = 1.0 / 32;
      for (int i = 0; i <= 96; ++i) v.push_back(prof.phi(i * h));
      for (int i = 0; i <= 96; ++i) {
        const double a = i * h;
        CHECK(v[i] >= a - 1e-12);  // diagonal bound
        if (a >= 1.0) CHECK(v[i] <= a + 2.0 / j + 1e-12);  // pinch
        if (i > 0) CHECK(v[i] >= v[i - 1] - 1e-12);  // monotone
        if (i > 0 && i < 96) CHECK(v[i - 1] - 2 * v[i] + v[i + 1] >= -1e-9);  // convex
        CHECK(phi_at_scale(s, a, j) == doctest::Approx(v[i]).epsilon(1e-14));
      }
      // doubling the shift family changes phi by at most log 3 / (j log 2)
      const ScaleProfile four = scale_profile(s, j, 0, 4);
      for (double a : {0.0, 0.5, 1.0, 1.5})
        CHECK(std::abs(four.phi(a) - prof.phi(a)) <= std::log2(3.0) / j + 1e-12);
    }
  }
}

TEST_CASE("nu_sharp_empirical") {
  const SpectrumReport r = nu_sharp_empirical(kFull, "full", {0, 0.5, 1, 1.5, 2}, {12, 14, 16});
  const double expect[] = {1, 1, 1, 1.5, 2};
  for (int i = 0; i < 5; ++i) CHECK(std::abs(r.estimate()[i] - expect[i]) <= 2.0 / 16);
  for (const auto& s : all_sets()) {
    for (int j : {8, 12}) {
      const double v = phi_at_scale(s, 2.0, j);
      CHECK(v >= 2.0 - 1e-12);
      CHECK(v <= 2.0 + 1.0 / j + 1e-12);
    }
  }
  // polyseq at alpha = 0 decreases towards 1/2
  const double p10 = phi_at_scale(kPoly, 0.0, 10), p16 = phi_at_scale(kPoly, 0.0, 16);
  CHECK(p16 <= p10 + 1e-12);
  CHECK(std::abs(p16 - 0.5) <= 0.1);
  CHECK_THROWS_AS(nu_sharp_empirical(kFull, "x", {0.0}, {10, 9}), Error);
}

TEST_CASE("assouad spectrum") {
  for (int j : {10, 14})
    for (double th : {0.0, 0.25, 0.5, 0.7})
      CHECK(std::abs(assouad_spectrum_empirical(kFull, th, j) - 1.0) <= 2.0 / j);
  CHECK(std::abs(assouad_spectrum_empirical(kCantor, 0.5, 14) - kLog23) <= 0.08);
  CHECK(std::abs(assouad_spectrum_empirical(kPoly, 0.75, 14) - 1.0) <= 0.1);
  CHECK(assouad_spectrum_empirical(kPoint, 0.3, 12) == 0.0);
  auto code = [](double th, int j) {
    try {
      assouad_spectrum_empirical(kFull, th, j);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::io_error;
  };
  CHECK(code(1.0, 10) == ErrorCode::invalid_theta);
  CHECK(code(-0.1, 10) == ErrorCode::invalid_theta);
  CHECK(code(0.95, 10) == ErrorCode::invalid_theta);  // ceil(9.5) = 10 = j
  CHECK(theta_level(0.5, 14) == 7);
  CHECK(theta_level(3.0 / 14, 14) == 3);
  const auto g = theta_grid_for(14);
  CHECK(g.size() == 11);
  CHECK(g.back() == doctest::Approx(10.0 / 14));
}

TEST_CASE("dims") {
  const auto p = dims(kPoint, 12);
  CHECK(p.minkowski == 0.0);
  CHECK(p.quasi_assouad == 0.0);
  const auto c = dims(kCantor, 14);
  CHECK(std::abs(c.minkowski - kLog23) <= 0.08);
  CHECK(std::abs(c.quasi_assouad - kLog23) <= 0.08);
  const auto q10 = dims(kPoly, 10), q16 = dims(kPoly, 16);
  CHECK(std::abs(q16.minkowski - 0.5) <= 0.1);
  CHECK(q16.quasi_assouad >= q10.quasi_assouad - 0.05);
  CHECK(q16.quasi_assouad >= 0.9);
  CHECK(q16.j == 16);
}

TEST_CASE("analytic spectra") {
  const auto c = analytic_spectrum(kCantor);
  REQUIRE(c);
  for (double th : {0.0, 0.3, 0.99}) CHECK((*c)(th) == doctest::Approx(kLog23));
  const auto q = analytic_spectrum(kPoly);
  REQUIRE(q);
  CHECK((*q)(0.0) == doctest::Approx(0.5));
  CHECK((*q)(0.25) == doctest::Approx(0.5 / 0.75));
  CHECK((*q)(0.75) == doctest::Approx(1.0));
  const auto u = analytic_spectrum(SetDescriptor::union_of({kPoint, kFull}));
  REQUIRE(u);
  for (double th : {0.0, 0.5, 1.0}) CHECK((*u)(th) == doctest::Approx(1.0));
  CHECK((*analytic_spectrum(kPoint))(0.5) == 0.0);
  CHECK(analytic_spectrum(SetDescriptor::poly_sequence(3.0)).has_value());
  CHECK((*analytic_spectrum(SetDescriptor::poly_sequence(3.0)))(0.0) == doctest::Approx(0.25));
}

TEST_CASE("quasi-regular check") {
  for (const auto& s : {kCantor, kPoly, kFull}) {
    const auto r = quasi_regular_check(s, 14, default_tolerance(14));
    CHECK(r.regular);
  }
  const auto u = quasi_regular_check(SetDescriptor::union_of({kCantor, SetDescriptor::cantor({1, 2}, 2, 0.25)}), 14,
                                     default_tolerance(14));
  CHECK(u.max_deviation >= 0.0);
  CHECK(u.gamma >= u.beta - 1e-12);
}

TEST_CASE("spectrum report shares its grid") {
  const auto r = assouad_spectrum_report(kCantor, "cantor", 10, 14);
  CHECK(r.scales == std::vector<int>{10, 11, 12, 13, 14});
  for (const auto& row : r.values) CHECK(row.size() == r.grid.size());
  REQUIRE(r.reference);
  CHECK(r.max_deviation_at_last() <= default_tolerance(14));
}
