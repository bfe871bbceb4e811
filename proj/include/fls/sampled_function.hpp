#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fls {

/// Closed interval [lo, hi] split into n - 1 equal steps.
struct UniformGrid {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t n = 2;

  double step() const noexcept { return (hi - lo) / static_cast<double>(n - 1); }
  double node(std::size_t i) const noexcept;
  std::vector<double> nodes() const;

  /// Grid from lo to hi with the given step (hi is snapped to a whole number
  /// of steps). Throws invalid_argument on a degenerate request.
  static UniformGrid with_step(double lo, double hi, double step);

  /// Parses "lo:step:hi".
  static UniformGrid parse(const std::string& text);
};

bool operator==(const UniformGrid& a, const UniformGrid& b) noexcept;

/// Values on a uniform grid, read back by piecewise-linear interpolation.
class SampledFunction {
 public:
  SampledFunction(UniformGrid grid, std::vector<double> values);

  static SampledFunction tabulate(UniformGrid grid, const std::function<double(double)>& f);

  const UniformGrid& grid() const noexcept { return grid_; }
  double lo() const noexcept { return grid_.lo; }
  double hi() const noexcept { return grid_.hi; }
  std::size_t size() const noexcept { return values_.size(); }
  double step() const noexcept { return grid_.step(); }
  double node(std::size_t i) const noexcept { return grid_.node(i); }
  std::span<const double> values() const noexcept { return values_; }
  double value(std::size_t i) const noexcept { return values_[i]; }

  /// Linear interpolation; x must lie in [lo, hi] up to 1e-12 slack.
  double operator()(double x) const;

  /// Re-sample onto another grid by interpolation.
  SampledFunction regrid(const UniformGrid& target) const;

 private:
  UniformGrid grid_;
  std::vector<double> values_;
};

}  // namespace fls
