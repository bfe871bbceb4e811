#include "fls/sampled_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fls/error.hpp"

namespace fls {

double UniformGrid::node(std::size_t i) const noexcept {
  if (i + 1 == n) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

std::vector<double> UniformGrid::nodes() const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = node(i);
  return out;
}

UniformGrid UniformGrid::with_step(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
    fail(ErrorCode::invalid_argument, "grid needs lo < hi and a positive step");
  const double k = std::round((hi - lo) / step);
  if (k < 1.0 || k > 1e8) fail(ErrorCode::invalid_argument, "grid step count out of range");
  return {lo, lo + k * step, static_cast<std::size_t>(k) + 1};
}

UniformGrid UniformGrid::parse(const std::string& text) {
  std::istringstream is(text);
  double lo = 0, step = 0, hi = 0;
  char c1 = 0, c2 = 0;
  if (!(is >> lo >> c1 >> step >> c2 >> hi) || c1 != ':' || c2 != ':')
    fail(ErrorCode::parse_error, "grid must be written lo:step:hi, got '" + text + "'");
  return with_step(lo, hi, step);
}

bool operator==(const UniformGrid& a, const UniformGrid& b) noexcept {
  return a.n == b.n && a.lo == b.lo && a.hi == b.hi;
}

SampledFunction::SampledFunction(UniformGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (grid_.n < 2 || values_.size() != grid_.n)
    fail(ErrorCode::invalid_argument, "sampled function needs >= 2 nodes matching its grid");
  if (!(grid_.hi > grid_.lo)) fail(ErrorCode::invalid_argument, "sampled function domain is empty");
  for (double v : values_)
    if (!std::isfinite(v)) fail(ErrorCode::invalid_argument, "sampled function value is not finite");
}

SampledFunction SampledFunction::tabulate(UniformGrid grid,
                                          const std::function<double(double)>& f) {
  std::vector<double> v(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) v[i] = f(grid.node(i));
  return SampledFunction(grid, std::move(v));
}

double SampledFunction::operator()(double x) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(grid_.hi - grid_.lo));
  if (x < grid_.lo - slack || x > grid_.hi + slack) {
    std::ostringstream os;
    os << "evaluation point " << x << " outside [" << grid_.lo << ", " << grid_.hi << "]";
    fail(ErrorCode::out_of_range, os.str());
  }
  const double h = step();
  double pos = (x - grid_.lo) / h;
  pos = std::clamp(pos, 0.0, static_cast<double>(grid_.n - 1));
  auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= grid_.n) return values_.back();
  const double w = pos - static_cast<double>(i);
  if (w == 0.0) return values_[i];
  return (1.0 - w) * values_[i] + w * values_[i + 1];
}

SampledFunction SampledFunction::regrid(const UniformGrid& target) const {
  return tabulate(target, [this](double x) { return (*this)(x); });
}

}  // namespace fls
