#pragma once

// Bessel functions of the first kind for integer and half-integer orders.

namespace fls {

/// True for 0, 1/2, 1, 3/2, ... up to order 64.
bool bessel_order_supported(double order) noexcept;

/// J_order(u) for u >= 0. Throws unsupported_order / out_of_range.
double bessel_j(double order, double u);

/// J(u) minus the leading two-exponential asymptotic term
/// sqrt(2/(pi u)) cos(u - (order/2 + 1/4) pi). Requires u >= 1.
double bessel_remainder(double order, double u);

/// J_order(x) x^{-order}, smooth at x = 0 where it equals 1/(2^order Gamma(order+1)).
double bessel_kernel(double order, double x);

}  // namespace fls
