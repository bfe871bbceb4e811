#include "fls/exponents.hpp"

#include <cmath>
#include <limits>

#include "fls/error.hpp"

namespace fls {

NuSharpCurve::NuSharpCurve(SampledFunction samples) : samples_(std::move(samples)) {}

NuSharpCurve::NuSharpCurve(std::function<double(double)> fn) : fn_(std::move(fn)) {
  if (!fn_) fail(ErrorCode::invalid_argument, "empty nu-sharp callable");
}

double NuSharpCurve::operator()(double alpha) const {
  if (fn_) return fn_(alpha);
  const SampledFunction& s = *samples_;
  if (alpha > s.hi()) return alpha;
  if (alpha < s.lo()) return s.value(0);
  return s(alpha);
}

NuSharpCurve NuSharpCurve::full_interval() {
  return NuSharpCurve([](double a) { return std::max(1.0, a); });
}

NuSharpCurve NuSharpCurve::point() {
  return NuSharpCurve([](double a) { return a; });
}

NuSharpCurve NuSharpCurve::quasi_regular(double beta, double gamma) {
  if (!(beta >= 0.0 && beta <= gamma && gamma <= 1.0))
    fail(ErrorCode::invalid_argument, "quasi-regular curve needs 0 <= beta <= gamma <= 1");
  return NuSharpCurve([beta, gamma](double a) {
    if (gamma <= 0.0 || a >= gamma) return a;
    return (1.0 - beta / gamma) * a + beta;
  });
}

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

namespace {

void check_d(int d) {
  if (d < 2) fail(ErrorCode::out_of_range, "dimension d must be >= 2");
}

}  // namespace

double s_p(int d, double p) {
  check_d(d);
  if (!(p >= 2.0)) fail(ErrorCode::out_of_range, "s_p needs p >= 2");
  return (d - 1) * (0.5 - inv(p));
}

double sigma_p(int d, double p) {
  check_d(d);
  if (!(p > 2.0)) fail(ErrorCode::out_of_range, "sigma_p needs p > 2");
  const double joint = 2.0 * d / (d - 1);
  if (p <= joint) return 0.0;
  return s_p(d, p) - inv(p);
}

double ls_exponent(int d, double p, const NuSharpCurve& nu) {
  const double sp = s_p(d, p);
  if (std::isinf(p)) return sp;  // (1/p) nu(p s_p) -> s_p as p grows
  return nu(p * sp) / p;
}

double p_gamma(int d, double gamma) {
  check_d(d);
  return 2.0 * (d - 1 + gamma) / (d - 1);
}

double s_E_q(int d, double q, const NuSharpCurve& nu) {
  check_d(d);
  if (!(q >= 2.0)) fail(ErrorCode::out_of_range, "s_E(q) needs q >= 2");
  if (std::isinf(q)) fail(ErrorCode::out_of_range, "s_E(q) needs finite q");
  return 0.5 * (d + 1) * (0.5 - 1.0 / q) + nu(0.5 * (d - 1) * (q / 2.0 - 1.0)) / q;
}

double s_E_pq(int d, double p, double q, const NuSharpCurve& nu) {
  check_d(d);
  if (!(p > 1.0 && p <= q) || std::isinf(q))
    fail(ErrorCode::out_of_range, "s_E(p,q) needs 1 < p <= q < inf");
  const double pprime = std::isinf(p) ? 1.0 : p / (p - 1.0);
  if (!(q > pprime)) fail(ErrorCode::out_of_range, "s_E(p,q) needs q > p'");
  const double ip = inv(p), iq = 1.0 / q;
  return 0.5 * (d + 1) * (ip - iq) + nu(q * 0.5 * (d - 1) * (1.0 - ip - iq)) * iq;
}

double q_gamma(int d, double gamma) {
  check_d(d);
  return 2.0 * (d - 1 + 2.0 * gamma) / (d - 1);
}

double q_circ(int d, double gamma_circ) { return q_gamma(d, gamma_circ); }

double lower_bound_rhs(int d, double p, double q, int j, double window_length, double count) {
  check_d(d);
  if (!(window_length > 0.0) || std::ldexp(window_length, j) < 1.0 - 1e-12)
    fail(ErrorCode::out_of_range, "lower bound needs 2^j |I| >= 1");
  if (!(count >= 0.0)) fail(ErrorCode::invalid_argument, "count must be nonnegative");
  const double ip = inv(p), iq = inv(q);
  const double log2v = std::log2(count) * iq + j * 0.5 * (d + 1) * (ip - iq) -
                       std::log2(window_length) * 0.5 * (d - 1) * (1.0 - ip - iq);
  return std::exp2(log2v);
}

double kappa(const ScaleProfile& profile, int m, int d, double p) {
  const int j = profile.j();
  if (m < 0 || m > j) fail(ErrorCode::out_of_range, "kappa needs 0 <= m <= j");
  const double a = p * s_p(d, p);
  const double n = static_cast<double>(profile.at(j - m).count);
  return n * std::exp2(a * (j - m));  // |I|^{-a} with |I| = 2^{m-j}
}

double lambda(const ScaleProfile& profile, int m, int d, double q) {
  check_d(d);
  const int j = profile.j();
  if (m > j + 10 || !(q >= 2.0)) fail(ErrorCode::out_of_range, "lambda needs m <= j+10, q >= 2");
  const double iq = inv(q);
  const double n = static_cast<double>(profile.at(j - m).count);
  return std::exp2(j * d * (1.0 - 2.0 * iq) - m * (d - 1) * (0.5 - iq) + 2.0 * iq * std::log2(n));
}

BookkeepingReport bookkeeping_sums(const SetDescriptor& set, int j, int d, double p, double q) {
  if (j < 2) fail(ErrorCode::invalid_resolution, "bookkeeping needs j >= 2");
  const ScaleProfile prof = scale_profile(set, j, -10);
  BookkeepingReport r;
  r.j = j;
  r.d = d;
  r.p = p;
  r.q = q;
  r.phi_ps = prof.phi(p * s_p(d, p));
  const NuSharpCurve at_scale([&prof](double a) { return prof.phi(a); });
  r.s_E_q_at_scale = s_E_q(d, q, at_scale);

  r.kappa_max_excess = -std::numeric_limits<double>::infinity();
  for (int m = 0; m <= j; ++m) {
    const double k = kappa(prof, m, d, p);
    r.kappa.push_back(k);
    r.kappa_sum += k;
    r.kappa_max_excess = std::max(r.kappa_max_excess, std::log2(k) - j * r.phi_ps);
  }
  for (int m = 0; m <= j + 10; ++m) {
    const double l = lambda(prof, m, d, q);
    r.lambda.push_back(l);
    if (m <= j) r.lambda_sum += l;
  }
  r.kappa_ratio = r.kappa_sum / ((j + 1) * std::exp2(j * r.phi_ps));
  r.lambda_ratio = r.lambda_sum / ((j + 1) * std::exp2(2.0 * j * r.s_E_q_at_scale));
  return r;
}

}  // namespace fls
