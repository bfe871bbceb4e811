#include "fls/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fls/error.hpp"

namespace fls {

UniformGrid default_theta_grid() { return UniformGrid::with_step(0.0, 1.0, 1.0 / 256.0); }
UniformGrid default_alpha_grid() { return UniformGrid::with_step(0.0, 4.0, 1.0 / 64.0); }

ConvexityCertificate certify_convex(const SampledFunction& f, double slack) {
  ConvexityCertificate c;
  const auto v = f.values();
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const double d2 = v[i + 1] - 2.0 * v[i] + v[i - 1];
    if (-d2 > c.max_violation) {
      c.max_violation = -d2;
      c.witness = i;
    }
  }
  c.is_convex = c.max_violation <= slack;
  return c;
}

namespace {

// max_i (x_i * a - y_i) for a single a.
double conjugate_at(std::span<const double> xs, std::span<const double> ys, double a) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) best = std::max(best, xs[i] * a - ys[i]);
  return best;
}

}  // namespace

SampledFunction legendre_transform(const SampledFunction& f, const UniformGrid& alpha) {
  const std::vector<double> xs = f.grid().nodes();
  std::vector<double> out(alpha.n);
  for (std::size_t k = 0; k < alpha.n; ++k) out[k] = conjugate_at(xs, f.values(), alpha.node(k));
  return SampledFunction(alpha, std::move(out));
}

SampledFunction convex_hull(const SampledFunction& f) {
  // Every slope of the lower envelope is a chord slope, so using all of them
  // as dual nodes makes f** exact at the primal nodes.
  const std::vector<double> xs = f.grid().nodes();
  const auto ys = f.values();
  std::vector<double> slopes;
  slopes.reserve(xs.size() * (xs.size() - 1) / 2);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = i + 1; k < xs.size(); ++k)
      slopes.push_back((ys[k] - ys[i]) / (xs[k] - xs[i]));
  std::sort(slopes.begin(), slopes.end());
  slopes.erase(std::unique(slopes.begin(), slopes.end()), slopes.end());

  std::vector<double> dual(slopes.size());
  for (std::size_t k = 0; k < slopes.size(); ++k) dual[k] = conjugate_at(xs, ys, slopes[k]);

  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double v = conjugate_at(slopes, dual, xs[i]);
    out[i] = std::min(v, ys[i]);  // rounding can lift f** by an ulp above f
  }
  return SampledFunction(f.grid(), std::move(out));
}

SampledFunction convex_hull(const SampledFunction& f, const UniformGrid& alpha) {
  return legendre_transform(legendre_transform(f, alpha), f.grid());
}

SampledFunction nu_from_spectrum(const SampledFunction& spectrum) {
  constexpr double eps = 1e-12;
  std::vector<double> out(spectrum.size());
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const double g = spectrum.value(i);
    if (g < -eps || g > 1.0 + eps)
      fail(ErrorCode::invalid_spectrum, "spectrum values must lie in [0,1]");
    out[i] = -(1.0 - spectrum.node(i)) * g;
  }
  return SampledFunction(spectrum.grid(), std::move(out));
}

SampledFunction nu_sharp_analytic(const SampledFunction& spectrum, const UniformGrid& alpha) {
  return legendre_transform(nu_from_spectrum(spectrum), alpha);
}

AdmissibilityReport tau_admissible(const SampledFunction& tau, double slack) {
  AdmissibilityReport r;
  r.domain_ok = std::abs(tau.lo()) <= 1e-12 && tau.hi() >= 2.0 - 1e-12;
  const auto v = tau.values();
  r.nonnegative = std::all_of(v.begin(), v.end(), [&](double x) { return x >= -slack; });

  r.increasing = true;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1] - slack) {
      r.increasing = false;
      r.increasing_witness = i;
      break;
    }
  r.convexity = certify_convex(tau, slack);

  r.identity_beyond_one = true;
  r.dominates_identity = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = tau.node(i);
    if (r.identity_beyond_one && a >= 1.0 - 1e-12 && std::abs(v[i] - a) > slack) {
      r.identity_beyond_one = false;
      r.identity_witness = i;
    }
    if (r.dominates_identity && v[i] < a - slack) {
      r.dominates_identity = false;
      r.dominates_witness = i;
    }
  }
  return r;
}

SpectrumFromTau spectrum_from_tau(const SampledFunction& tau, const UniformGrid& theta) {
  if (!tau_admissible(tau).passed())
    fail(ErrorCode::admissibility_failure, "tau is not admissible");
  if (theta.lo != 0.0 || std::abs(theta.hi - 1.0) > 1e-12)
    fail(ErrorCode::invalid_argument, "theta grid must span [0,1]");

  SampledFunction nu = legendre_transform(tau, theta);

  // gamma lives on [0, 1-h]; at theta = 1 the normalisation degenerates.
  const double h = theta.step();
  const UniformGrid g_grid{0.0, 1.0 - h, theta.n - 1};
  std::vector<double> g(g_grid.n);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = -nu.value(i) / (1.0 - nu.node(i));

  SampledFunction round = legendre_transform(nu, tau.grid());
  double err = 0.0;
  for (std::size_t i = 0; i < tau.size(); ++i)
    err = std::max(err, std::abs(round.value(i) - tau.value(i)));

  constexpr double eps = 1e-9;
  bool g_inc = true, g_unit = true, nu_inc = true;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] < -eps || g[i] > 1.0 + eps) g_unit = false;
    if (i > 0 && g[i] < g[i - 1] - eps) g_inc = false;
  }
  for (std::size_t i = 1; i < nu.size(); ++i)
    if (nu.value(i) < nu.value(i - 1) - eps) nu_inc = false;

  return {std::move(nu), SampledFunction(g_grid, std::move(g)), err, g_inc, g_unit, nu_inc};
}

SampledFunction union_nu_sharp(const std::vector<SampledFunction>& parts) {
  if (parts.empty()) fail(ErrorCode::invalid_argument, "union of zero functions");
  const UniformGrid& grid = parts.front().grid();
  std::vector<double> out(parts.front().values().begin(), parts.front().values().end());
  for (std::size_t p = 1; p < parts.size(); ++p) {
    const SampledFunction g = parts[p].grid() == grid ? parts[p] : parts[p].regrid(grid);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], g.value(i));
  }
  return SampledFunction(grid, std::move(out));
}

}  // namespace fls
