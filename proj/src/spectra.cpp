#include "fls/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fls/error.hpp"
#include "fls/legendre.hpp"

namespace fls {

ScaleProfile::ScaleProfile(int j, int level_min, std::vector<LevelMax> levels)
    : j_(j), level_min_(level_min), levels_(std::move(levels)) {
  if (levels_.size() != static_cast<std::size_t>(j_ - level_min_ + 1))
    fail(ErrorCode::invalid_argument, "scale profile needs one entry per level");
}

const LevelMax& ScaleProfile::at(int level) const {
  if (level < level_min_ || level > j_)
    fail(ErrorCode::out_of_range, "level " + std::to_string(level) + " not in profile");
  return levels_[static_cast<std::size_t>(level - level_min_)];
}

double ScaleProfile::phi(double alpha) const {
  double best = -std::numeric_limits<double>::infinity();
  for (int l = std::max(0, level_min_); l <= j_; ++l) {
    const auto n = static_cast<double>(at(l).count);
    if (n < 1.0) continue;
    best = std::max(best, alpha * l + std::log2(n));
  }
  return best / j_;
}

namespace {

LevelMax level_max(const SetDescriptor& set, int level, int shifts, double delta) {
  const double len = std::ldexp(1.0, -level);
  const double g = len / shifts;
  const Interval span = set.span();
  LevelMax best{level, 0, {}};
  auto k = static_cast<long long>(std::ceil((span.lo - len) / g));
  while (true) {
    const double left = static_cast<double>(k) * g;
    if (left > span.hi) break;
    const auto nx = set.next_point(left);
    if (!nx) break;
    if (*nx > left + len) {
      const auto jump = static_cast<long long>(std::ceil((*nx - len) / g));
      k = std::max(k + 1, jump);
      continue;
    }
    const Interval w{left, left + len};
    const std::uint64_t c = covering_count(set, w, delta);
    if (c > best.count) best = {level, c, w};
    ++k;
  }
  return best;
}

}  // namespace

ScaleProfile scale_profile(const SetDescriptor& set, int j, int level_min, int shifts) {
  if (j < 0 || level_min > j || level_min < -30 || j > 40)
    fail(ErrorCode::invalid_resolution, "scale profile needs -30 <= level_min <= j <= 40");
  if (shifts < 1) fail(ErrorCode::invalid_argument, "shifts must be >= 1");
  const double delta = std::ldexp(1.0, -j);
  std::vector<LevelMax> levels;
  levels.reserve(static_cast<std::size_t>(j - level_min + 1));
  for (int l = level_min; l <= j; ++l) levels.push_back(level_max(set, l, shifts, delta));
  return ScaleProfile(j, level_min, std::move(levels));
}

double phi_at_scale(const SetDescriptor& set, double alpha, int j) {
  if (j < 2) fail(ErrorCode::invalid_resolution, "phi_at_scale needs j >= 2");
  return scale_profile(set, j).phi(alpha);
}

int theta_level(double theta, int j) {
  return std::max(0, static_cast<int>(std::ceil(theta * j - 1e-9)));
}

double assouad_spectrum_empirical(const ScaleProfile& profile, double theta) {
  if (!(theta >= 0.0 && theta < 1.0)) fail(ErrorCode::invalid_theta, "theta must lie in [0,1)");
  const int j = profile.j();
  const int k = theta_level(theta, j);
  if (k >= j) fail(ErrorCode::invalid_theta, "theta too close to 1 for this scale");
  return std::log2(static_cast<double>(profile.at(k).count)) / (j - k);
}

double assouad_spectrum_empirical(const SetDescriptor& set, double theta, int j) {
  if (!(theta >= 0.0 && theta < 1.0)) fail(ErrorCode::invalid_theta, "theta must lie in [0,1)");
  if (j < 1) fail(ErrorCode::invalid_resolution, "spectrum needs j >= 1");
  return assouad_spectrum_empirical(scale_profile(set, j), theta);
}

std::vector<double> theta_grid_for(int j) {
  if (j < 4) fail(ErrorCode::invalid_resolution, "theta grid needs j >= 4");
  std::vector<double> out;
  for (int i = 0; i <= j - 4; ++i) out.push_back(static_cast<double>(i) / j);
  return out;
}

DimensionEstimate dims(const ScaleProfile& profile) {
  const int j = profile.j();
  if (j < 5) fail(ErrorCode::invalid_resolution, "dimension estimates need j >= 5");
  return {assouad_spectrum_empirical(profile, 0.0),
          assouad_spectrum_empirical(profile, static_cast<double>(j - 4) / j), j};
}

DimensionEstimate dims(const SetDescriptor& set, int j) {
  if (j < 5) fail(ErrorCode::invalid_resolution, "dimension estimates need j >= 5");
  return dims(scale_profile(set, j));
}

double default_tolerance(int j) { return 1.12 / j; }

namespace {

std::optional<std::vector<double>> spectrum_values(const SetDescriptor& set,
                                                   const std::vector<double>& th) {
  struct Visitor {
    const std::vector<double>& th;
    std::optional<std::vector<double>> operator()(const CantorLike& c) const {
      const double b = std::min(1.0, std::log(c.branches) / std::log(1.0 / c.contraction));
      return std::vector<double>(th.size(), b);
    }
    std::optional<std::vector<double>> operator()(const PolySequence& p) const {
      const double beta = 1.0 / (p.exponent + 1.0);
      std::vector<double> v(th.size());
      for (std::size_t i = 0; i < th.size(); ++i)
        v[i] = th[i] >= 1.0 ? 1.0 : std::min(beta / (1.0 - th[i]), 1.0);
      return v;
    }
    std::optional<std::vector<double>> operator()(const FullInterval& f) const {
      // a degenerate interval is a single point
      return std::vector<double>(th.size(), f.range.length() > 0.0 ? 1.0 : 0.0);
    }
    std::optional<std::vector<double>> operator()(const FinitePoints&) const {
      return std::vector<double>(th.size(), 0.0);
    }
    std::optional<std::vector<double>> operator()(const SetUnion& u) const {
      std::vector<double> v(th.size(), 0.0);
      for (const auto& m : u.members) {
        auto mv = spectrum_values(m, th);
        if (!mv) return std::nullopt;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::max(v[i], (*mv)[i]);
      }
      return v;
    }
  };
  return std::visit(Visitor{th}, set.variant());
}

}  // namespace

std::optional<SampledFunction> analytic_spectrum(const SetDescriptor& set) {
  const UniformGrid grid = default_theta_grid();
  auto v = spectrum_values(set, grid.nodes());
  if (!v) return std::nullopt;
  return SampledFunction(grid, std::move(*v));
}

std::optional<SampledFunction> analytic_nu_sharp(const SetDescriptor& set) {
  auto s = analytic_spectrum(set);
  if (!s) return std::nullopt;
  return nu_sharp_analytic(*s);
}

QuasiRegularCheck quasi_regular_check(const SetDescriptor& set, int j, double tol) {
  const ScaleProfile prof = scale_profile(set, j);
  const DimensionEstimate d = dims(prof);
  QuasiRegularCheck q;
  q.beta = d.minkowski;
  q.gamma = d.quasi_assouad;
  for (double th : theta_grid_for(j)) {
    const double model = std::min(q.beta / (1.0 - th), q.gamma);
    const double dev = std::abs(assouad_spectrum_empirical(prof, th) - model);
    if (dev > q.max_deviation) {
      q.max_deviation = dev;
      q.worst_theta = th;
    }
  }
  q.regular = q.max_deviation <= tol;
  return q;
}

double SpectrumReport::max_deviation_at_last() const {
  if (!reference || values.empty()) return 0.0;
  double m = 0.0;
  const auto& row = values.back();
  for (std::size_t i = 0; i < row.size(); ++i) m = std::max(m, std::abs(row[i] - (*reference)[i]));
  return m;
}

SpectrumReport nu_sharp_empirical(const SetDescriptor& set, const std::string& set_id,
                                  const std::vector<double>& alpha_grid,
                                  const std::vector<int>& scales) {
  if (scales.empty()) fail(ErrorCode::invalid_argument, "scale list is empty");
  for (std::size_t i = 1; i < scales.size(); ++i)
    if (scales[i] <= scales[i - 1]) fail(ErrorCode::invalid_argument, "scales must increase");
  SpectrumReport r;
  r.set_id = set_id;
  r.kind = GridKind::alpha;
  r.grid = alpha_grid;
  r.scales = scales;
  for (int j : scales) {
    if (j < 2) fail(ErrorCode::invalid_resolution, "phi_at_scale needs j >= 2");
    const ScaleProfile prof = scale_profile(set, j);
    std::vector<double> row;
    row.reserve(alpha_grid.size());
    for (double a : alpha_grid) row.push_back(prof.phi(a));
    r.values.push_back(std::move(row));
  }
  if (auto ns = analytic_nu_sharp(set)) {
    std::vector<double> ref;
    for (double a : alpha_grid) ref.push_back(a > ns->hi() ? a : (*ns)(std::max(a, ns->lo())));
    r.reference = std::move(ref);
  }
  return r;
}

SpectrumReport assouad_spectrum_report(const SetDescriptor& set, const std::string& set_id,
                                       int j_min, int j_max) {
  if (j_min < 5 || j_max < j_min)
    fail(ErrorCode::invalid_resolution, "spectrum report needs 5 <= jmin <= jmax");
  SpectrumReport r;
  r.set_id = set_id;
  r.kind = GridKind::theta;
  r.grid = theta_grid_for(j_min);  // valid at every larger scale as well
  for (int j = j_min; j <= j_max; ++j) {
    const ScaleProfile prof = scale_profile(set, j);
    std::vector<double> row;
    for (double th : r.grid) row.push_back(assouad_spectrum_empirical(prof, th));
    r.scales.push_back(j);
    r.values.push_back(std::move(row));
  }
  if (auto s = analytic_spectrum(set)) {
    std::vector<double> ref;
    for (double th : r.grid) ref.push_back((*s)(th));
    r.reference = std::move(ref);
  }
  return r;
}

}  // namespace fls
