#include "fls/bessel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fls/error.hpp"

namespace fls {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesLimit = 12.0;
constexpr double kAsymptoticStart = 25.0;

struct Order {
  int twice;  // 2 * order
  bool half() const { return twice % 2 != 0; }
  int n() const { return twice / 2; }  // integer part
  double value() const { return twice / 2.0; }
};

Order checked_order(double order) {
  if (!bessel_order_supported(order)) {
    std::ostringstream os;
    os << "order " << order << " is not an integer or half-integer in [0, 64]";
    fail(ErrorCode::unsupported_order, os.str());
  }
  return {static_cast<int>(std::lround(2.0 * order))};
}

// sum_k (-1)^k (x/2)^{2k} / (k! Gamma(k+v+1)), i.e. J_v(x) (x/2)^{-v}.
long double scaled_series(double v, double x) {
  const long double h2 = static_cast<long double>(x) * x / 4.0L;
  long double term = 1.0L / std::tgamma(static_cast<long double>(v) + 1.0L);
  long double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= -h2 / (static_cast<long double>(k) * (k + v));
    sum += term;
    if (std::fabs(term) < 1e-21L * std::fabs(sum) && k > x / 2) break;
  }
  return sum;
}

long double series_j(double v, double u) {
  return scaled_series(v, u) * std::pow(static_cast<long double>(u) / 2.0L, static_cast<long double>(v));
}

// Backward recurrence normalised by J_0 + 2 sum J_2k = 1.
long double miller_j(int n, double u) {
  int top = static_cast<int>(std::max<double>(n, u)) + 60;
  if (top % 2) ++top;
  long double jp1 = 0.0L, jk = 1e-30L, norm = 0.0L, want = 0.0L;
  for (int k = top; k >= 1; --k) {
    const long double jm1 = (2.0L * k / u) * jk - jp1;
    jp1 = jk;
    jk = jm1;  // now holds J_{k-1}
    if (k - 1 == n) want = jk;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0L * jk;
    if (std::fabs(jk) > 1e300L) {
      jk *= 1e-300L;
      jp1 *= 1e-300L;
      norm *= 1e-300L;
      want *= 1e-300L;
    }
  }
  if (n == 0) want = jk;
  norm += jk;
  return want / norm;
}

struct Hankel {
  double p = 0.0;
  double q = 0.0;
};

// P and Q of the Hankel expansion. For half-integer orders the series
// terminates and is exact.
Hankel hankel_pq(Order o, double u) {
  const long double mu = static_cast<long double>(o.twice) * o.twice;  // 4 v^2
  Hankel h;
  long double p = 1.0L, q = 0.0L, a = 1.0L, prev = INFINITY;
  for (int k = 1; k < 400; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    a *= (mu - odd * odd) / (8.0L * k * u);
    if (a == 0.0L) break;
    const long double mag = std::fabs(a);
    if (!o.half() && mag > prev) break;  // asymptotic series started to diverge
    prev = mag;
    const long double sgn = ((k / 2) % 2 == 0) ? 1.0L : -1.0L;
    if (k % 2) q += sgn * a;
    else p += sgn * a;
    if (!o.half() && k >= 8 && mag < 1e-18L * std::fabs(p)) break;
  }
  h.p = static_cast<double>(p);
  h.q = static_cast<double>(q);
  return h;
}

// cos and sin of u - (v/2 + 1/4) pi without forming the difference.
void phase(Order o, double u, double& c, double& s) {
  const double phi0 = (o.value() / 2.0 + 0.25) * kPi;
  const double cu = std::cos(u), su = std::sin(u);
  const double c0 = std::cos(phi0), s0 = std::sin(phi0);
  c = cu * c0 + su * s0;
  s = su * c0 - cu * s0;
}

bool asymptotic_regime(Order o, double u) {
  return !o.half() && u >= std::max(kAsymptoticStart, 2.0 * o.n() * o.n() + kAsymptoticStart);
}

double half_integer_j(Order o, double u) {
  const int n = o.n();
  if (n == 0) return std::sqrt(2.0 / (kPi * u)) * std::sin(u);
  if (u <= n) return static_cast<double>(series_j(o.value(), u));
  // spherical Bessel upward recurrence
  const long double x = u;
  long double jm = std::sin(x) / x;
  long double jc = std::sin(x) / (x * x) - std::cos(x) / x;
  for (int k = 1; k < n; ++k) {
    const long double jn = (2.0L * k + 1.0L) / x * jc - jm;
    jm = jc;
    jc = jn;
  }
  return static_cast<double>(std::sqrt(2.0L * x / static_cast<long double>(kPi)) * jc);
}

}  // namespace

bool bessel_order_supported(double order) noexcept {
  if (!(order >= 0.0 && order <= 64.0)) return false;
  const double t = 2.0 * order;
  return t == std::round(t);
}

double bessel_j(double order, double u) {
  const Order o = checked_order(order);
  if (!(u >= 0.0) || !std::isfinite(u)) fail(ErrorCode::out_of_range, "bessel_j needs finite u >= 0");
  if (u == 0.0) return o.twice == 0 ? 1.0 : 0.0;
  if (o.half()) return half_integer_j(o, u);
  if (u <= kSeriesLimit) return static_cast<double>(series_j(o.value(), u));
  if (!asymptotic_regime(o, u)) return static_cast<double>(miller_j(o.n(), u));
  const Hankel h = hankel_pq(o, u);
  double c, s;
  phase(o, u, c, s);
  return std::sqrt(2.0 / (kPi * u)) * (h.p * c - h.q * s);
}

double bessel_remainder(double order, double u) {
  const Order o = checked_order(order);
  if (!(u >= 1.0) || !std::isfinite(u)) fail(ErrorCode::out_of_range, "bessel_remainder needs u >= 1");
  if (o.twice == 1) return 0.0;
  double c, s;
  phase(o, u, c, s);
  const double amp = std::sqrt(2.0 / (kPi * u));
  if (o.half() || asymptotic_regime(o, u)) {
    const Hankel h = hankel_pq(o, u);
    return amp * ((h.p - 1.0) * c - h.q * s);
  }
  return bessel_j(order, u) - amp * c;
}

double bessel_kernel(double order, double x) {
  const Order o = checked_order(order);
  if (!(x >= 0.0) || !std::isfinite(x)) fail(ErrorCode::out_of_range, "bessel_kernel needs x >= 0");
  if (o.twice == 0) return bessel_j(0.0, x);
  if (o.twice == 1) {
    if (x < 1e-4) return std::sqrt(2.0 / kPi) * (1.0 - x * x / 6.0);
    return std::sqrt(2.0 / kPi) * std::sin(x) / x;
  }
  const double v = o.value();
  if (x <= std::max(kSeriesLimit, v))
    return static_cast<double>(scaled_series(v, x) / std::pow(2.0L, static_cast<long double>(v)));
  return bessel_j(order, x) / std::pow(x, v);
}

}  // namespace fls
