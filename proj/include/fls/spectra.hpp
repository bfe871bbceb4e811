#pragma once

// Finite-scale dimension spectra over the two-shifted dyadic window family,
// and their analytic counterparts for the five set generators.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fls/sampled_function.hpp"
#include "fls/setkit.hpp"

namespace fls {

/// Largest covering count N(E∩I, 2^-j) among family windows of length 2^-level.
struct LevelMax {
  int level = 0;
  std::uint64_t count = 0;
  Interval window;  // first window (by left endpoint) attaining the count
};

/// Per-level maxima for one set at one resolution. Windows of length
/// L = 2^-level are [kL, (k+1)L] and the copies shifted by L/shifts, 2L/shifts, ...
class ScaleProfile {
 public:
  ScaleProfile(int j, int level_min, std::vector<LevelMax> levels);

  int j() const noexcept { return j_; }
  int level_min() const noexcept { return level_min_; }
  int level_max() const noexcept { return j_; }
  const LevelMax& at(int level) const;
  const std::vector<LevelMax>& levels() const noexcept { return levels_; }

  /// max over levels 0..j of (alpha*level + log2 maxN) / j.
  double phi(double alpha) const;

 private:
  int j_;
  int level_min_;
  std::vector<LevelMax> levels_;
};

/// level_min may be negative (windows longer than 1). shifts >= 1.
ScaleProfile scale_profile(const SetDescriptor& set, int j, int level_min = 0, int shifts = 2);

/// Finite-scale Legendre-Assouad functional. Requires j >= 2.
double phi_at_scale(const SetDescriptor& set, double alpha, int j);

/// Window level used for the spectrum at theta: ceil(theta*j) with a 1e-9 guard.
int theta_level(double theta, int j);

/// log2 maxN over windows of length 2^-ceil(theta j), divided by j - ceil(theta j).
/// theta outside [0,1), or so close to 1 that ceil(theta j) = j, gives invalid_theta.
double assouad_spectrum_empirical(const SetDescriptor& set, double theta, int j);
double assouad_spectrum_empirical(const ScaleProfile& profile, double theta);

/// {0, 1/j, ..., (j-4)/j}.
std::vector<double> theta_grid_for(int j);

struct DimensionEstimate {
  double minkowski = 0.0;        // spectrum at theta = 0
  double quasi_assouad = 0.0;    // spectrum at theta = (j-4)/j
  int j = 0;
};

DimensionEstimate dims(const SetDescriptor& set, int j);
DimensionEstimate dims(const ScaleProfile& profile);

/// Default scale-dependent tolerance, 0.08 at j = 14.
double default_tolerance(int j);

/// Analytic spectrum on [0,1] (step 1/256), or nullopt when the set has no
/// closed form (only unions with such members).
std::optional<SampledFunction> analytic_spectrum(const SetDescriptor& set);

struct QuasiRegularCheck {
  double beta = 0.0;
  double gamma = 0.0;
  double max_deviation = 0.0;
  double worst_theta = 0.0;
  bool regular = false;
};

/// Compares the empirical spectrum against min(beta/(1-theta), gamma) built
/// from the estimated (beta, gamma) over the theta grid of scale j.
QuasiRegularCheck quasi_regular_check(const SetDescriptor& set, int j, double tol);

enum class GridKind { alpha, theta };

/// Per-scale table of an empirical functional on a shared grid.
struct SpectrumReport {
  std::string set_id;
  GridKind kind = GridKind::alpha;
  std::vector<double> grid;
  std::vector<int> scales;
  std::vector<std::vector<double>> values;           // values[row][grid index]
  std::optional<std::vector<double>> reference;     // analytic, on the same grid

  /// Row of the largest scale.
  const std::vector<double>& estimate() const { return values.back(); }
  double max_deviation_at_last() const;
};

SpectrumReport nu_sharp_empirical(const SetDescriptor& set, const std::string& set_id,
                                  const std::vector<double>& alpha_grid,
                                  const std::vector<int>& scales);

SpectrumReport assouad_spectrum_report(const SetDescriptor& set, const std::string& set_id,
                                       int j_min, int j_max);

/// Analytic nu-sharp for the set (Legendre transform of its analytic nu)
/// evaluated at arbitrary alpha >= 0, or nullopt without a closed form.
std::optional<SampledFunction> analytic_nu_sharp(const SetDescriptor& set);

}  // namespace fls
