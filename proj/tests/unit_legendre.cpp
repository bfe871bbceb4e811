#include <doctest.h>

#include <cmath>

#include "fls/error.hpp"
#include "fls/legendre.hpp"
#include "fls/spectra.hpp"
#include "oracles.hpp"

using namespace fls;

namespace {

const UniformGrid kTheta{0.0, 1.0, 257};
const UniformGrid kAlpha{0.0, 4.0, 257};

std::vector<double> vals(const SampledFunction& f) { return {f.values().begin(), f.values().end()}; }

SampledFunction quasi_regular_nu(double beta, double gamma) {
  // nu = -(1-theta) min(beta/(1-theta), gamma) = -min(beta, gamma (1-theta))
  return SampledFunction::tabulate(kTheta, [&](double t) { return -std::min(beta, gamma * (1.0 - t)); });
}

}  // namespace

TEST_CASE("transform examples") {
  const auto lin = SampledFunction::tabulate(kTheta, [](double t) { return -(1.0 - t); });
  const auto zero = SampledFunction::tabulate(kTheta, [](double) { return 0.0; });
  const auto a = legendre_transform(lin, kAlpha), b = legendre_transform(zero, kAlpha);
  for (std::size_t i = 0; i < kAlpha.n; ++i) {
    const double x = kAlpha.node(i);
    CHECK(a.value(i) == doctest::Approx(std::max(1.0, x)).epsilon(1e-14));
    CHECK(b.value(i) == doctest::Approx(x).epsilon(1e-14));
  }
}

TEST_CASE("quasi-regular transform against a fine brute-force max") {
  for (auto [beta, gamma] : {std::pair{0.5, 1.0}, {0.3, 0.7}, {0.2, 0.2}}) {
    const auto nu = quasi_regular_nu(beta, gamma);
    const auto ns = legendre_transform(nu, kAlpha);
    std::vector<double> th, f;
    for (int i = 0; i <= 20000; ++i) {
      th.push_back(i / 20000.0);
      f.push_back(-std::min(beta, gamma * (1.0 - th.back())));
    }
    // exact when the kink theta = 1 - beta/gamma is a grid node, else within alpha*h
    const double kink = (1.0 - beta / gamma) * 256.0;
    const bool on_grid = std::abs(kink - std::round(kink)) < 1e-12;
    for (std::size_t i = 0; i < kAlpha.n; ++i) {
      const double x = kAlpha.node(i);
      const double closed = x <= gamma ? (1.0 - beta / gamma) * x + beta : x;
      const double tol = on_grid ? 1e-12 : x * kTheta.step() + 1e-12;
      CHECK(std::abs(ns.value(i) - oracle::conjugate(th, f, x)) <= tol);
      CHECK(std::abs(ns.value(i) - closed) <= tol);
      CHECK(ns.value(i) <= closed + 1e-12);  // sampling can only lower the max
    }
  }
}

TEST_CASE("involution, order reversal, certificates") {
  const auto f = SampledFunction::tabulate(kTheta, [](double t) { return std::sin(7 * t) - t * t; });
  const auto g = SampledFunction::tabulate(kTheta, [](double t) { return std::sin(7 * t) - t * t - 0.1 - t; });
  const auto f1 = legendre_transform(f, kAlpha);
  const auto f2 = legendre_transform(f1, kTheta);
  const auto f3 = legendre_transform(f2, kAlpha);
  const double slack = 2 * std::max(kTheta.step(), kAlpha.step());
  for (std::size_t i = 0; i < kAlpha.n; ++i) CHECK(std::abs(f3.value(i) - f1.value(i)) <= slack);
  const auto g1 = legendre_transform(g, kAlpha);
  for (std::size_t i = 0; i < kAlpha.n; ++i) CHECK(g1.value(i) >= f1.value(i) - 1e-12);
  CHECK(certify_convex(f1).is_convex);
  CHECK(certify_convex(f2).is_convex);
  CHECK(certify_convex(f3).is_convex);
  const auto c = certify_convex(f);
  CHECK(!c.is_convex);
  CHECK(c.max_violation > 1e-6);
  CHECK(c.witness > 0);
  CHECK(c.witness + 1 < f.size());
}

TEST_CASE("convex hull against the monotone-chain envelope") {
  const auto concave = SampledFunction::tabulate(kTheta, [](double t) { return t < 0.4 ? -t : -0.4 - 0.2 * (t - 0.4); });
  const auto wiggle = SampledFunction::tabulate(kTheta, [](double t) { return std::cos(11 * t) + 0.3 * t; });
  const auto poly = nu_from_spectrum(*analytic_spectrum(SetDescriptor::poly_sequence(1.0)));
  for (const auto& f : {concave, wiggle, poly}) {
    const auto h = convex_hull(f);
    const auto env = oracle::lower_envelope(kTheta.nodes(), vals(f));
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(h.value(i) <= f.value(i) + 1e-12);
      CHECK(h.value(i) == doctest::Approx(env[i]).epsilon(1e-10).scale(1.0));
    }
    CHECK(certify_convex(h).is_convex);
    CHECK(h.value(0) == doctest::Approx(f.value(0)));
    CHECK(h.value(f.size() - 1) == doctest::Approx(f.value(f.size() - 1)));
  }
  const auto convex = SampledFunction::tabulate(kTheta, [](double t) { return t * t - t; });
  const auto h = convex_hull(convex);
  for (std::size_t i = 0; i < h.size(); ++i) CHECK(h.value(i) == doctest::Approx(convex.value(i)).epsilon(1e-12));
  // the uniform-dual-grid variant stays within a grid step of the exact hull
  const auto hu = convex_hull(wiggle, UniformGrid{-40, 40, 8001});
  const auto env = oracle::lower_envelope(kTheta.nodes(), vals(wiggle));
  for (std::size_t i = 0; i < hu.size(); ++i) CHECK(std::abs(hu.value(i) - env[i]) <= 2 * kTheta.step());
}

TEST_CASE("nu from spectrum") {
  const auto one = nu_from_spectrum(SampledFunction::tabulate(kTheta, [](double) { return 1.0; }));
  const auto zero = nu_from_spectrum(SampledFunction::tabulate(kTheta, [](double) { return 0.0; }));
  const auto poly = nu_from_spectrum(*analytic_spectrum(SetDescriptor::poly_sequence(1.0)));
  for (std::size_t i = 0; i < kTheta.n; ++i) {
    const double t = kTheta.node(i);
    CHECK(one.value(i) == doctest::Approx(t - 1.0));
    CHECK(zero.value(i) == 0.0);
    CHECK(poly.value(i) == doctest::Approx(-std::min(0.5, 1.0 - t)));
  }
  CHECK(one.value(kTheta.n - 1) == 0.0);
  try {
    nu_from_spectrum(SampledFunction::tabulate(kTheta, [](double) { return 1.5; }));
    FAIL("expected invalid_spectrum");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_spectrum);
  }
}

TEST_CASE("nu-sharp analytic") {
  for (double beta : {0.0, 0.3, 0.6309, 1.0}) {
    const auto ns = nu_sharp_analytic(SampledFunction::tabulate(kTheta, [&](double) { return beta; }));
    for (std::size_t i = 0; i < ns.size(); ++i) CHECK(ns.value(i) == doctest::Approx(std::max(beta, ns.node(i))));
  }
  const auto ns = nu_sharp_analytic(*analytic_spectrum(SetDescriptor::poly_sequence(1.0)));
  CHECK(certify_convex(ns).is_convex);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double a = ns.node(i);
    CHECK(ns.value(i) == doctest::Approx(std::max(0.5 * a + 0.5, a)).epsilon(1e-12));
    CHECK(ns.value(i) >= a - 1e-12);
    if (i > 0) CHECK(ns.value(i) >= ns.value(i - 1));
    if (a >= 1.0) CHECK(ns.value(i) == doctest::Approx(a));
    if (a < 1.0) CHECK(ns.value(i) > a);  // strict below gamma when beta < gamma
  }
}

TEST_CASE("tau admissibility") {
  const UniformGrid A{0.0, 2.0, 129};
  const auto good = SampledFunction::tabulate(A, [](double a) { return std::max(1.0, a); });
  CHECK(tau_admissible(good).passed());
  const auto sq = SampledFunction::tabulate(A, [](double a) { return a < 1 ? a * a : a; });
  const auto r = tau_admissible(sq);
  CHECK(!r.passed());
  CHECK(!r.dominates_identity);
  CHECK(A.node(r.dominates_witness) > 0.0);
  CHECK(A.node(r.dominates_witness) < 1.0);
  const auto qr = SampledFunction::tabulate(A, [](double a) { return a <= 0.7 ? (1 - 0.3 / 0.7) * a + 0.3 : a; });
  CHECK(tau_admissible(qr).passed());
  const auto short_dom = SampledFunction::tabulate(UniformGrid{0.0, 1.5, 97}, [](double a) { return std::max(1.0, a); });
  CHECK(!tau_admissible(short_dom).domain_ok);
  const auto bent = SampledFunction::tabulate(A, [](double a) { return a < 1 ? 1.0 : 1.0 + 2 * (a - 1); });
  CHECK(!tau_admissible(bent).identity_beyond_one);
}

TEST_CASE("spectrum from tau") {
  const UniformGrid A{0.0, 2.0, 513};
  {
    const auto s = spectrum_from_tau(SampledFunction::tabulate(A, [](double a) { return std::max(1.0, a); }));
    for (std::size_t i = 0; i < s.spectrum.size(); ++i) CHECK(s.spectrum.value(i) == doctest::Approx(1.0));
    CHECK(s.round_trip_error <= 2 * A.step());
  }
  {
    // beta on the alpha grid: exact
    const double beta = 0.375;
    const auto s = spectrum_from_tau(SampledFunction::tabulate(A, [&](double a) { return std::max(beta, a); }));
    for (std::size_t i = 0; i < s.spectrum.size(); ++i) CHECK(s.spectrum.value(i) == doctest::Approx(beta));
    CHECK(s.round_trip_error <= 2 * A.step());
  }
  {
    // beta off the grid: nu is within one alpha step, gamma = -nu/(1-theta) inherits 1/(1-theta)
    const double beta = 0.4;
    const auto s = spectrum_from_tau(SampledFunction::tabulate(A, [&](double a) { return std::max(beta, a); }));
    for (std::size_t i = 0; i < s.spectrum.size(); ++i) {
      const double th = s.spectrum.node(i);
      CHECK(std::abs(s.spectrum.value(i) - beta) * (1.0 - th) <= A.step());
    }
    CHECK(s.round_trip_error <= 2 * A.step());
  }
  {
    // strictly convex on [0,1]: 0.6 + 0.4 a^2, joining a with slope 0.8 <= 1
    const auto tau = SampledFunction::tabulate(A, [](double a) { return a < 1 ? 0.6 + 0.4 * a * a : a; });
    REQUIRE(tau_admissible(tau).passed());
    const auto s = spectrum_from_tau(tau);
    CHECK(s.round_trip_error <= 2 * A.step());
    CHECK(s.spectrum_increasing);
    CHECK(s.spectrum_in_unit_range);
    CHECK(s.nu_increasing);
    double lo = 1e9, hi = -1e9;
    for (double v : s.spectrum.values()) lo = std::min(lo, v), hi = std::max(hi, v);
    CHECK(hi - lo > 0.3);  // non-constant
    CHECK(s.spectrum(0.0) == doctest::Approx(0.6).epsilon(1e-3));
    // nu(theta) = sup_a a theta - tau(a) = theta^2/1.6 - 0.6 for theta <= 0.8
    CHECK(s.nu(0.5) == doctest::Approx(0.25 / 1.6 - 0.6).epsilon(1e-4));
  }
  const auto bad = SampledFunction::tabulate(A, [](double a) { return a < 1 ? a * a : a; });
  try {
    spectrum_from_tau(bad);
    FAIL("expected admissibility_failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::admissibility_failure);
  }
}

TEST_CASE("union of nu-sharp curves") {
  const UniformGrid A{0.0, 4.0, 257};
  auto mk = [&](double b) { return SampledFunction::tabulate(A, [=](double a) { return std::max(a, b); }); };
  const auto u = union_nu_sharp({mk(0.3), mk(0.7)});
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(u.value(i) == doctest::Approx(std::max(u.node(i), 0.7)));
  const auto q1 = SampledFunction::tabulate(A, [](double a) { return a <= 1 ? 0.5 * a + 0.5 : a; });
  const auto q2 = SampledFunction::tabulate(A, [](double a) { return a <= 0.8 ? 0.25 * a + 0.6 : a; });
  const auto w = union_nu_sharp({q1, q2});
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(w.value(i) == std::max(q1.value(i), q2.value(i)));
  const auto id = union_nu_sharp({q1});
  for (std::size_t i = 0; i < id.size(); ++i) CHECK(id.value(i) == q1.value(i));
  // a differently sampled member is regridded onto the first
  const auto coarse = SampledFunction::tabulate(UniformGrid{0.0, 4.0, 65}, [](double a) { return std::max(a, 0.9); });
  const auto m = union_nu_sharp({q1, coarse});
  CHECK(m.grid() == A);
  CHECK(m(0.0) == doctest::Approx(0.9));
}
