#pragma once

// Half-wave propagation of frequency-localised radial data, evaluated as a
// one-dimensional Bessel integral, and the two-term asymptotic split.

#include <complex>
#include <cstddef>
#include <vector>

#include "fls/setkit.hpp"

namespace fls {

using cplx = std::complex<double>;

/// phi(s) = psi((s - center)/half_width), psi(x) = exp(1 - 1/(1 - x^2)) on (-1, 1).
struct BumpSpec {
  double center = 1.25;
  double half_width = 0.75;

  double operator()(double s) const noexcept;
  double lo() const noexcept { return center - half_width; }
  double hi() const noexcept { return center + half_width; }
};

struct WaveParams {
  int d = 3;
  int j = 10;
  double t_I = 1.0;
  BumpSpec bump;
  double nodes_per_frequency = 8.0;  // K: nodes >= K (1 + 2^j (|t - t_I| + r))
  double tolerance = 1e-6;           // half-panel error relative to integrand mass
  std::size_t max_nodes = std::size_t{1} << 24;

  void validate() const;
  double scale() const;  // 2^j
};

struct WaveRow {
  double t = 0.0;
  std::vector<double> r;
  std::vector<cplx> u;
  double error_estimate = 0.0;  // max over r of |I_P - I_{P/2}| / mass
  std::size_t nodes = 0;
};

/// u(r, t) for every r in r_grid (r >= 0). Uses the closed-form kernel for
/// d = 3 and a rotation recurrence when r_grid is uniform.
WaveRow propagate(const WaveParams& params, double t, const std::vector<double>& r_grid);

cplx propagate_point(const WaveParams& params, double t, double r);

struct MainTerms {
  std::vector<double> r;
  std::vector<cplx> minus;
  std::vector<cplx> plus;
  std::vector<cplx> rem;
  double error_estimate = 0.0;
};

/// T^-, T^+ and T^rem at time t. Every r must satisfy r >= 2^{-j+2}.
MainTerms main_terms(const WaveParams& params, double t, const std::vector<double>& r_grid);

/// J_t = [|t - t_I| - 2^{-j-5}, |t - t_I| + 2^{-j-5}].
Interval region_for(const WaveParams& params, double t);

/// `count` equally spaced radii on J_t, clipped to r >= 0.
std::vector<double> region_nodes(const WaveParams& params, double t, int count = 5);

/// (int |u|^p r^{d-1} dr)^{1/p} over r_range by the trapezoid rule on the
/// given samples; p = inf gives the max of |u|. Throws refine_failure when
/// the samples do not cover r_range with steps <= max_step.
double shell_lp_norm(const std::vector<double>& r, const std::vector<cplx>& u, int d, double p,
                     Interval r_range, double max_step);

/// Surface area of the unit sphere in R^d.
double sphere_area(int d);

struct GNorm {
  double value = 0.0;       // ||g_I||_p on R^d
  double band_part = 0.0;   // contribution of the resolved band around r = t_I, p-th power
  double tail_bound = 0.0;  // bound on the rest of [0, t_I + 4], p-th power
  std::size_t samples = 0;
};

/// ||g_I||_p, with g_I the data whose evolution is u(., t): g_I = u(., 0).
GNorm g_I_norm(const WaveParams& params, double p);

/// Exact L^2 norm from Plancherel.
double plancherel_l2(const WaveParams& params);

struct WaveField {
  WaveParams params;
  std::vector<WaveRow> rows;
};

WaveField simulate(const WaveParams& params, const std::vector<double>& times,
                   const std::vector<double>& r_grid);

}  // namespace fls
