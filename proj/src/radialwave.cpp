#include "fls/radialwave.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fls/bessel.hpp"
#include "fls/error.hpp"
#include "fls/quadrature.hpp"

namespace fls {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Adaptive {
  std::vector<cplx> value;
  double error = 0.0;
  std::size_t nodes = 0;
};

// Runs eval(panels, out, mass) at P/2 and P panels and doubles P until the
// two agree to params.tolerance relative to the integrand mass.
template <class Eval>
Adaptive adaptive(const WaveParams& params, double min_nodes, std::size_t n_out, Eval&& eval) {
  auto panels = static_cast<std::size_t>(std::ceil(min_nodes / kGaussOrder));
  panels = std::max<std::size_t>(panels, 8);
  panels += panels % 2;

  std::vector<cplx> coarse(n_out), fine(n_out);
  std::vector<double> mass_c(n_out), mass_f(n_out);
  eval(panels / 2, coarse, mass_c);
  double err = 0.0;
  while (true) {
    eval(panels, fine, mass_f);
    err = 0.0;
    for (std::size_t k = 0; k < n_out; ++k) {
      if (mass_f[k] <= 0.0) continue;
      err = std::max(err, std::abs(fine[k] - coarse[k]) / mass_f[k]);
    }
    if (err <= params.tolerance) break;
    if (2 * panels * kGaussOrder > params.max_nodes) {
      std::ostringstream os;
      os << "quadrature did not reach " << params.tolerance << " within " << params.max_nodes
         << " nodes (achieved " << err << ")";
      fail(ErrorCode::refine_failure, os.str());
    }
    coarse.swap(fine);
    mass_c.swap(mass_f);
    panels *= 2;
  }
  return {std::move(fine), err, panels * kGaussOrder};
}

bool is_uniform(const std::vector<double>& r) {
  if (r.size() < 3) return r.size() == 2;
  const double step = (r.back() - r.front()) / static_cast<double>(r.size() - 1);
  if (!(step > 0.0)) return false;
  const double tol = 1e-12 * std::max(1.0, std::abs(r.back()));
  for (std::size_t k = 0; k < r.size(); ++k)
    if (std::abs(r[k] - (r.front() + static_cast<double>(k) * step)) > tol) return false;
  return true;
}

void check_radii(const std::vector<double>& r, double min_r) {
  if (r.empty()) fail(ErrorCode::invalid_argument, "radial grid is empty");
  for (double x : r)
    if (!(x >= min_r) || !std::isfinite(x)) {
      std::ostringstream os;
      os << "radius " << x << " below " << min_r;
      fail(ErrorCode::out_of_range, os.str());
    }
}

}  // namespace

double BumpSpec::operator()(double s) const noexcept {
  const double x = (s - center) / half_width;
  if (!(std::abs(x) < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

void WaveParams::validate() const {
  if (d < 2 || d > 64) fail(ErrorCode::invalid_argument, "wave dimension must be in [2, 64]");
  if (j < 2 || j > 24) fail(ErrorCode::invalid_resolution, "wave scale j must be in [2, 24]");
  if (!(t_I >= 0.0 && t_I <= 3.0)) fail(ErrorCode::invalid_argument, "t_I must lie in [0, 3]");
  if (!(bump.half_width > 0.0) || !(bump.lo() > 0.0))
    fail(ErrorCode::invalid_argument, "bump must have positive support");
  if (!(nodes_per_frequency >= 1.0)) fail(ErrorCode::invalid_argument, "K must be >= 1");
  if (!(tolerance > 0.0)) fail(ErrorCode::invalid_argument, "tolerance must be positive");
}

double WaveParams::scale() const { return std::ldexp(1.0, j); }

WaveRow propagate(const WaveParams& params, double t, const std::vector<double>& r_grid) {
  params.validate();
  check_radii(r_grid, 0.0);
  const int d = params.d;
  const double S = params.scale();
  const double tau = t - params.t_I;
  const double nu = (d - 2) / 2.0;
  const double pref = std::pow(kTwoPi, -d / 2.0) * std::pow(S, d);
  const std::size_t n = r_grid.size();
  const bool uniform3 = d == 3 && is_uniform(r_grid);
  const double r0 = r_grid.front();
  const double dr = n > 1 ? (r_grid.back() - r0) / static_cast<double>(n - 1) : 0.0;
  const double c3 = std::sqrt(2.0 / kPi);
  const double rmax = *std::max_element(r_grid.begin(), r_grid.end());
  std::vector<double> kern(n);

  auto eval = [&](std::size_t panels, std::vector<cplx>& out, std::vector<double>& mass) {
    std::fill(out.begin(), out.end(), cplx{});
    std::fill(mass.begin(), mass.end(), 0.0);
    for_each_gauss_node(params.bump.lo(), params.bump.hi(), panels, [&](double s, double w) {
      const double f = w * pref * params.bump(s) * std::pow(s, d - 1);
      if (f == 0.0) return;
      const cplx base = f * std::polar(1.0, tau * S * s);
      if (uniform3) {
        cplx z = std::polar(1.0, S * s * r0);
        const cplx dz = std::polar(1.0, S * s * dr);
        for (std::size_t k = 0; k < n; ++k) {
          const double x = S * s * (r0 + static_cast<double>(k) * dr);
          kern[k] = x < 1e-3 ? c3 * (1.0 - x * x / 6.0) : c3 * z.imag() / x;
          z *= dz;
        }
      } else if (d == 3) {
        for (std::size_t k = 0; k < n; ++k) {
          const double x = S * s * r_grid[k];
          kern[k] = x < 1e-3 ? c3 * (1.0 - x * x / 6.0) : c3 * std::sin(x) / x;
        }
      } else {
        for (std::size_t k = 0; k < n; ++k) kern[k] = bessel_kernel(nu, S * s * r_grid[k]);
      }
      for (std::size_t k = 0; k < n; ++k) {
        out[k] += base * kern[k];
        mass[k] += std::abs(f * kern[k]);
      }
    });
  };

  const double min_nodes = params.nodes_per_frequency * (1.0 + S * (std::abs(tau) + rmax));
  Adaptive a = adaptive(params, min_nodes, n, eval);
  return {t, r_grid, std::move(a.value), a.error, a.nodes};
}

cplx propagate_point(const WaveParams& params, double t, double r) {
  return propagate(params, t, {r}).u.front();
}

MainTerms main_terms(const WaveParams& params, double t, const std::vector<double>& r_grid) {
  params.validate();
  const double S = params.scale();
  check_radii(r_grid, std::ldexp(1.0, -params.j + 2) * (1.0 - 1e-12));
  const int d = params.d;
  const double tau = t - params.t_I;
  const double nu = (d - 2) / 2.0;
  const bool has_rem = d != 3;
  const std::size_t n = r_grid.size();
  const double rmax = *std::max_element(r_grid.begin(), r_grid.end());

  // layout: [minus | plus | rem]
  auto eval = [&](std::size_t panels, std::vector<cplx>& out, std::vector<double>& mass) {
    std::fill(out.begin(), out.end(), cplx{});
    std::fill(mass.begin(), mass.end(), 0.0);
    for_each_gauss_node(params.bump.lo(), params.bump.hi(), panels, [&](double s, double w) {
      const double b = params.bump(s);
      if (b == 0.0) return;
      const double f = w * b * std::pow(s, 0.5 * (d - 1));
      const cplx ph = std::polar(1.0, tau * S * s);
      for (std::size_t k = 0; k < n; ++k) {
        const double x = S * r_grid[k] * s;
        const cplx e = std::polar(1.0, x);
        out[k] += f * ph * std::conj(e);
        out[n + k] += f * ph * e;
        mass[k] += std::abs(f);
        mass[n + k] += std::abs(f);
        if (has_rem) {
          const double g = w * b * std::pow(s, 0.5 * d) * bessel_remainder(nu, x);
          out[2 * n + k] += g * ph;
          mass[2 * n + k] += std::abs(g);
        }
      }
    });
  };

  const double min_nodes = params.nodes_per_frequency * (1.0 + S * (std::abs(tau) + rmax));
  Adaptive a = adaptive(params, min_nodes, 3 * n, eval);

  MainTerms m;
  m.r = r_grid;
  m.error_estimate = a.error;
  const double shift = kPi * (d - 1) / 4.0;
  const cplx rot_minus = std::polar(1.0, shift);
  const cplx rot_plus = std::polar(1.0, -shift);
  const double c_pm = std::pow(kTwoPi, -(d + 1) / 2.0) * std::pow(S, (d + 1) / 2.0);
  const double c_rem = std::pow(kTwoPi, -d / 2.0) * std::pow(S, d / 2.0 + 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = r_grid[k];
    const double amp = c_pm * std::pow(r, -(d - 1) / 2.0);
    m.minus.push_back(amp * rot_minus * a.value[k]);
    m.plus.push_back(amp * rot_plus * a.value[n + k]);
    m.rem.push_back(c_rem * std::pow(r, -(d - 2) / 2.0) * a.value[2 * n + k]);
  }
  return m;
}

Interval region_for(const WaveParams& params, double t) {
  const double c = std::abs(t - params.t_I);
  const double h = std::ldexp(1.0, -params.j - 5);
  return {c - h, c + h};
}

std::vector<double> region_nodes(const WaveParams& params, double t, int count) {
  if (count < 2) fail(ErrorCode::invalid_argument, "region needs >= 2 nodes");
  const Interval J = region_for(params, t);
  const double lo = std::max(0.0, J.lo);
  std::vector<double> r(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) r[k] = lo + (J.hi - lo) * k / (count - 1);
  r.back() = J.hi;
  return r;
}

double shell_lp_norm(const std::vector<double>& r, const std::vector<cplx>& u, int d, double p,
                     Interval r_range, double max_step) {
  if (r.size() != u.size() || r.empty()) fail(ErrorCode::invalid_argument, "shell samples mismatch");
  if (!(p >= 1.0)) fail(ErrorCode::out_of_range, "shell norm needs p >= 1");
  const double lo = std::max(0.0, r_range.lo), hi = r_range.hi;
  if (!(hi >= lo)) fail(ErrorCode::invalid_argument, "shell range is empty");
  const double eps = 1e-12 * std::max(1.0, hi);
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (k > 0 && !(r[k] > r[k - 1])) fail(ErrorCode::invalid_argument, "shell radii must increase");
    if (r[k] >= lo - eps && r[k] <= hi + eps) idx.push_back(k);
  }
  if (idx.empty() || r[idx.front()] > lo + eps || r[idx.back()] < hi - eps)
    fail(ErrorCode::refine_failure, "shell samples do not cover the range");
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (r[idx[i]] - r[idx[i - 1]] > max_step * (1.0 + 1e-9))
      fail(ErrorCode::refine_failure, "shell samples are coarser than the required step");

  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t k : idx) m = std::max(m, std::abs(u[k]));
    return m;
  }
  double s = 0.0;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    const std::size_t a = idx[i - 1], b = idx[i];
    const double fa = std::pow(std::abs(u[a]), p) * std::pow(r[a], d - 1);
    const double fb = std::pow(std::abs(u[b]), p) * std::pow(r[b], d - 1);
    s += 0.5 * (r[b] - r[a]) * (fa + fb);
  }
  return std::pow(s, 1.0 / p);
}

double sphere_area(int d) {
  if (d < 1) fail(ErrorCode::invalid_argument, "sphere dimension must be >= 1");
  return 2.0 * std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0);
}

GNorm g_I_norm(const WaveParams& params, double p) {
  params.validate();
  if (!(p >= 2.0)) fail(ErrorCode::out_of_range, "g_I norm needs p in [2, inf]");
  const int d = params.d;
  const double S = params.scale();
  const double omega = sphere_area(d);
  const double band = 48.0 / S;
  const double h = 1.0 / (32.0 * S);
  const double r_max = params.t_I + 4.0;

  const double lo = std::max(0.0, params.t_I - band);
  const double hi = params.t_I + band;
  const auto steps = static_cast<std::size_t>(std::ceil((hi - lo) / h));
  std::vector<double> r(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) r[k] = lo + (hi - lo) * static_cast<double>(k) / steps;
  const WaveRow core = propagate(params, 0.0, r);

  GNorm out;
  out.samples = r.size();
  const bool inf = std::isinf(p);
  if (inf) {
    for (const cplx& z : core.u) out.band_part = std::max(out.band_part, std::abs(z));
  } else {
    const double s = shell_lp_norm(r, core.u, d, p, {lo, hi}, h * (1.0 + 1e-9));
    out.band_part = omega * std::pow(s, p);
  }

  // Sparse samples at geometrically growing distance from the band edges;
  // each gap is bounded by its larger endpoint value.
  std::vector<double> tail;
  for (double dist = band * 1.25; params.t_I - dist > 0.0; dist *= 1.25) tail.push_back(params.t_I - dist);
  if (lo > 0.0) tail.push_back(0.0);
  for (double dist = band * 1.25; params.t_I + dist < r_max; dist *= 1.25) tail.push_back(params.t_I + dist);
  tail.push_back(r_max);
  std::sort(tail.begin(), tail.end());
  const WaveRow far = propagate(params, 0.0, tail);
  out.samples += tail.size();

  auto mag = [&](double x) -> double {
    if (x == lo) return std::abs(core.u.front());
    if (x == hi) return std::abs(core.u.back());
    const auto it = std::lower_bound(tail.begin(), tail.end(), x);
    return std::abs(far.u[static_cast<std::size_t>(it - tail.begin())]);
  };
  std::vector<double> knots = tail;
  knots.push_back(lo);
  knots.push_back(hi);
  std::sort(knots.begin(), knots.end());
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double a = knots[i - 1], b = knots[i];
    if (a >= lo && b <= hi) continue;  // inside the band
    const double m = std::max(mag(a), mag(b));
    if (inf) {
      out.tail_bound = std::max(out.tail_bound, m);
    } else {
      const double vol = (std::pow(b, d) - std::pow(a, d)) / d;
      out.tail_bound += omega * std::pow(m, p) * vol;
    }
  }
  out.value = inf ? std::max(out.band_part, out.tail_bound)
                  : std::pow(out.band_part + out.tail_bound, 1.0 / p);
  return out;
}

double plancherel_l2(const WaveParams& params) {
  params.validate();
  const int d = params.d;
  const double S = params.scale();
  const double I = integrate(params.bump.lo(), params.bump.hi(), 256, [&](double s) {
    const double b = params.bump(s);
    return b * b * std::pow(s, d - 1);
  });
  return std::sqrt(std::pow(kTwoPi, -d) * sphere_area(d) * std::pow(S, d) * I);
}

WaveField simulate(const WaveParams& params, const std::vector<double>& times,
                   const std::vector<double>& r_grid) {
  WaveField f;
  f.params = params;
  for (double t : times) f.rows.push_back(propagate(params, t, r_grid));
  return f;
}

}  // namespace fls
