#pragma once

// Closed-form local smoothing and Strichartz-type exponents, and the
// kappa / lambda scale bookkeeping built on covering counts.

#include <functional>
#include <optional>
#include <vector>

#include "fls/sampled_function.hpp"
#include "fls/spectra.hpp"

namespace fls {

/// Parameters shared by the exponent formulas. p, q may be +infinity.
struct ExponentQuery {
  int d = 3;
  double p = 2.0;
  double q = 2.0;
  double beta = 0.0;
  double gamma = 0.0;
  double gamma_circ = 0.0;
};

/// A nu-sharp curve on alpha >= 0. Beyond the sampled domain it continues
/// as alpha (exact once alpha is past the quasi-Assouad dimension); below
/// the domain it is clamped to the first sample.
class NuSharpCurve {
 public:
  explicit NuSharpCurve(SampledFunction samples);
  explicit NuSharpCurve(std::function<double(double)> fn);

  double operator()(double alpha) const;

  /// nu-sharp of [1,2]: max(1, alpha).
  static NuSharpCurve full_interval();
  /// nu-sharp of a point: alpha.
  static NuSharpCurve point();
  /// Two affine pieces for a quasi-Assouad regular set with parameters (beta, gamma).
  static NuSharpCurve quasi_regular(double beta, double gamma);

 private:
  std::optional<SampledFunction> samples_;
  std::function<double(double)> fn_;
};

double inv(double p);  // 1/p with 1/inf = 0

double s_p(int d, double p);
double sigma_p(int d, double p);
double ls_exponent(int d, double p, const NuSharpCurve& nu);
double p_gamma(int d, double gamma);
double s_E_q(int d, double q, const NuSharpCurve& nu);
double s_E_pq(int d, double p, double q, const NuSharpCurve& nu);
double q_gamma(int d, double gamma);
double q_circ(int d, double gamma_circ);

/// Variable part of the L^p -> L^q lower bound (constants omitted).
double lower_bound_rhs(int d, double p, double q, int j, double window_length, double count);

/// maxN(length 2^{m-j}) * |I|^{-p s_p}; the profile must reach level j - m.
double kappa(const ScaleProfile& profile, int m, int d, double p);

/// 2^{jd(1-2/q)} 2^{-m(d-1)(1/2-1/q)} maxN(length 2^{m-j})^{2/q}, m <= j + 10.
double lambda(const ScaleProfile& profile, int m, int d, double q);

struct BookkeepingReport {
  int j = 0, d = 0;
  double p = 0.0, q = 0.0;
  std::vector<double> kappa;    // m = 0..j
  std::vector<double> lambda;   // m = 0..j+10
  double kappa_sum = 0.0;
  double lambda_sum = 0.0;      // over m <= j
  double phi_ps = 0.0;          // phi_j(p s_p)
  double s_E_q_at_scale = 0.0;  // s_E(q) with phi_j as nu-sharp
  double kappa_ratio = 0.0;     // kappa_sum / ((j+1) 2^{j phi_ps})
  double lambda_ratio = 0.0;    // lambda_sum / ((j+1) 2^{2j s_E_q_at_scale})
  double kappa_max_excess = 0.0;  // max_m log2 kappa - j phi_ps
  double slack = 1e-9;

  bool passed() const noexcept {
    return kappa_ratio <= 1.0 + slack && lambda_ratio <= 1.0 + slack && kappa_max_excess <= slack;
  }
};

BookkeepingReport bookkeeping_sums(const SetDescriptor& set, int j, int d, double p, double q);

}  // namespace fls
