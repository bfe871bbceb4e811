#pragma once

// Discrete Legendre transform and the convex-duality checks built on it.

#include <cstddef>
#include <vector>

#include "fls/sampled_function.hpp"

namespace fls {

/// Default grids: theta in [0,1] step 1/256, alpha in [0,4] step 1/64.
UniformGrid default_theta_grid();
UniformGrid default_alpha_grid();

inline constexpr double kConvexitySlack = 1e-9;

struct ConvexityCertificate {
  bool is_convex = true;
  double max_violation = 0.0;  // largest negative second difference, as a positive number
  std::size_t witness = 0;     // node index of the worst second difference
};

ConvexityCertificate certify_convex(const SampledFunction& f, double slack = kConvexitySlack);

/// f*(alpha) = max over grid nodes theta of theta*alpha - f(theta).
/// Exact for the piecewise-linear interpolant of f.
SampledFunction legendre_transform(const SampledFunction& f, const UniformGrid& alpha);

/// Lower convex envelope through the double transform. The dual nodes are all
/// chord slopes between grid nodes, which makes the result exact on the grid.
SampledFunction convex_hull(const SampledFunction& f);

/// Double transform through a caller-chosen uniform dual grid.
SampledFunction convex_hull(const SampledFunction& f, const UniformGrid& alpha);

/// nu(theta) = -(1 - theta) * gamma(theta). Spectrum values must lie in [0,1].
SampledFunction nu_from_spectrum(const SampledFunction& spectrum);

/// Legendre transform of nu_from_spectrum(spectrum).
SampledFunction nu_sharp_analytic(const SampledFunction& spectrum,
                                  const UniformGrid& alpha = default_alpha_grid());

struct AdmissibilityReport {
  bool domain_ok = false;          // defined on [0, A] with A >= 2
  bool nonnegative = false;
  bool increasing = false;
  std::size_t increasing_witness = 0;
  ConvexityCertificate convexity;
  bool identity_beyond_one = false;  // tau(a) = a for a >= 1
  std::size_t identity_witness = 0;
  bool dominates_identity = false;   // tau(a) >= a everywhere
  std::size_t dominates_witness = 0;

  bool passed() const noexcept {
    return domain_ok && nonnegative && increasing && convexity.is_convex &&
           identity_beyond_one && dominates_identity;
  }
};

AdmissibilityReport tau_admissible(const SampledFunction& tau, double slack = 1e-9);

struct SpectrumFromTau {
  SampledFunction nu;        // tau* restricted to [0,1]
  SampledFunction spectrum;  // -nu/(1-theta) on [0, 1-h]
  double round_trip_error;   // max |nu* - tau| over the alpha grid
  bool spectrum_increasing;
  bool spectrum_in_unit_range;
  bool nu_increasing;
};

/// Builds the spectrum that realises an admissible tau. Throws
/// admissibility_failure when tau_admissible(tau) does not pass.
SpectrumFromTau spectrum_from_tau(const SampledFunction& tau,
                                  const UniformGrid& theta = default_theta_grid());

/// Pointwise max. Inputs on differing grids are re-sampled onto the first.
SampledFunction union_nu_sharp(const std::vector<SampledFunction>& parts);

}  // namespace fls
