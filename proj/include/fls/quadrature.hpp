#pragma once

// Composite Gauss-Legendre rules.

#include <array>
#include <cstddef>

namespace fls {

inline constexpr std::size_t kGaussOrder = 16;

struct GaussRule {
  std::array<double, kGaussOrder> x;  // nodes on [-1, 1], ascending
  std::array<double, kGaussOrder> w;
};

/// 16-point rule, computed once by Newton iteration on P_16.
const GaussRule& gauss_legendre16();

/// Calls f(node, weight) for every node of the composite rule with
/// `panels` equal panels on [a, b].
template <class F>
void for_each_gauss_node(double a, double b, std::size_t panels, F&& f) {
  const GaussRule& g = gauss_legendre16();
  const double h = (b - a) / static_cast<double>(panels);
  const double half = 0.5 * h;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * h;
    for (std::size_t i = 0; i < kGaussOrder; ++i) f(mid + half * g.x[i], half * g.w[i]);
  }
}

/// Plain composite integral of a real function.
template <class F>
double integrate(double a, double b, std::size_t panels, F&& f) {
  double s = 0.0;
  for_each_gauss_node(a, b, panels, [&](double x, double w) { s += w * f(x); });
  return s;
}

}  // namespace fls
