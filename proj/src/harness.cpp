#include "fls/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "fls/error.hpp"
#include "fls/legendre.hpp"
#include "fls/spectra.hpp"

namespace fls {

namespace {

double read_extended(const json& v, const char* key) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  }
  try {
    return parse_rational(v);
  } catch (const Error&) {
    fail(ErrorCode::parse_error, std::string("field '") + key + "' must be a number");
  }
}

UniformGrid read_grid(const json& v, const char* key) {
  if (!v.is_string()) fail(ErrorCode::parse_error, std::string("field '") + key + "' must be \"lo:step:hi\"");
  return UniformGrid::parse(v.get<std::string>());
}

std::vector<int> scale_range(const ExperimentConfig& cfg) {
  std::vector<int> js;
  for (int j = cfg.j_min; j <= cfg.j_max; ++j) js.push_back(j);
  return js;
}

const SetDescriptor& need_set(const ExperimentConfig& cfg) {
  if (!cfg.set) fail(ErrorCode::invalid_argument, "experiment '" + cfg.kind + "' needs a set");
  return *cfg.set;
}

std::string opt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json interval_json(const Interval& i) { return json::array({i.lo, i.hi}); }

}  // namespace

void ExperimentConfig::validate() const {
  if (d < 2) fail(ErrorCode::invalid_argument, "d must be >= 2");
  if (j_min < 0 || j_max < j_min) fail(ErrorCode::invalid_argument, "need 0 <= jmin <= jmax");
  if (j_max > 30) fail(ErrorCode::invalid_argument, "jmax must be <= 30");
  if (tol && !(*tol > 0.0)) fail(ErrorCode::invalid_argument, "tolerance must be positive");
  if (window_M < 1 || (window_M & (window_M - 1)) != 0)
    fail(ErrorCode::invalid_argument, "M must be a power of two");
  if (!(p >= 1.0) || !(q >= 1.0)) fail(ErrorCode::invalid_argument, "p and q must be >= 1");
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::parse_error, "config must be a JSON object");
  static const std::set<std::string> known = {
      "kind", "set", "set_id", "d", "p", "q", "jmin", "jmax", "alpha_grid", "tol", "seed", "M",
      "max_times", "full_window", "full_window_max_times", "K", "wave_tol", "p_grid", "q_grid",
      "p_values", "q_values", "t_I", "times", "r_grid"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) fail(ErrorCode::parse_error, "unknown config field '" + it.key() + "'");

  ExperimentConfig c;
  try {
    if (j.contains("kind")) c.kind = j["kind"].get<std::string>();
    if (j.contains("set")) {
      c.set = set_from_json(j["set"]);
      c.set_id = set_label(j["set"]);
    }
    if (j.contains("set_id")) c.set_id = j["set_id"].get<std::string>();
    if (j.contains("d")) c.d = j["d"].get<int>();
    if (j.contains("p")) c.p = read_extended(j["p"], "p");
    if (j.contains("q")) c.q = read_extended(j["q"], "q");
    if (j.contains("jmin")) c.j_min = j["jmin"].get<int>();
    if (j.contains("jmax")) c.j_max = j["jmax"].get<int>();
    if (j.contains("alpha_grid")) c.alpha_grid = read_grid(j["alpha_grid"], "alpha_grid");
    if (j.contains("tol")) c.tol = read_extended(j["tol"], "tol");
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("M")) c.window_M = j["M"].get<int>();
    if (j.contains("max_times")) c.max_times = j["max_times"].get<std::size_t>();
    if (j.contains("full_window")) c.full_window = j["full_window"].get<bool>();
    if (j.contains("full_window_max_times"))
      c.full_window_max_times = j["full_window_max_times"].get<std::size_t>();
    if (j.contains("K")) c.nodes_per_frequency = read_extended(j["K"], "K");
    if (j.contains("wave_tol")) c.wave_tolerance = read_extended(j["wave_tol"], "wave_tol");
    if (j.contains("p_grid")) c.p_values = read_grid(j["p_grid"], "p_grid").nodes();
    if (j.contains("q_grid")) c.q_values = read_grid(j["q_grid"], "q_grid").nodes();
    if (j.contains("p_values"))
      for (const auto& v : j["p_values"]) c.p_values.push_back(read_extended(v, "p_values"));
    if (j.contains("q_values"))
      for (const auto& v : j["q_values"]) c.q_values.push_back(read_extended(v, "q_values"));
    if (j.contains("t_I")) c.t_I = read_extended(j["t_I"], "t_I");
    if (j.contains("times"))
      for (const auto& t : j["times"]) c.times.push_back(read_extended(t, "times"));
    if (j.contains("r_grid")) c.r_grid = read_grid(j["r_grid"], "r_grid");
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

// ---- duality ----------------------------------------------------------------

double duality_tolerance(int j) { return 3.12 / j; }

namespace {

// Analytic nu-sharp reference. Unions go through the pointwise max of the
// members' transforms rather than the transform of the max spectrum.
std::optional<SampledFunction> duality_reference(const SetDescriptor& set) {
  if (const auto* u = std::get_if<SetUnion>(&set.variant())) {
    std::vector<SampledFunction> parts;
    for (const auto& m : u->members) {
      auto ns = duality_reference(m);
      if (!ns) return std::nullopt;
      parts.push_back(std::move(*ns));
    }
    return union_nu_sharp(parts);
  }
  return analytic_nu_sharp(set);
}

double eval_extended(const SampledFunction& f, double a) {
  if (a > f.hi()) return a;
  return f(std::max(a, f.lo()));
}

}  // namespace

DualityReport run_duality(const ExperimentConfig& cfg) {
  const SetDescriptor& set = need_set(cfg);
  const auto ref = duality_reference(set);
  if (!ref) fail(ErrorCode::unsupported_set, "set has no analytic spectrum");
  if (cfg.j_min < 2) fail(ErrorCode::invalid_resolution, "duality needs jmin >= 2");

  DualityReport r;
  r.set_id = cfg.set_id;
  r.alpha = cfg.alpha_grid.value_or(UniformGrid::with_step(0.0, 2.0, 1.0 / 16.0)).nodes();
  r.scales = scale_range(cfg);
  for (double a : r.alpha) r.reference.push_back(eval_extended(*ref, a));
  for (int j : r.scales) {
    const ScaleProfile prof = scale_profile(set, j);
    std::vector<double> row;
    for (double a : r.alpha) row.push_back(prof.phi(a));
    r.phi.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < r.alpha.size(); ++i)
    r.max_deviation_last = std::max(r.max_deviation_last, std::abs(r.phi.back()[i] - r.reference[i]));
  r.tol = cfg.tol.value_or(duality_tolerance(cfg.j_max));
  r.passed = r.max_deviation_last <= r.tol;
  return r;
}

Report render(const DualityReport& r) {
  Report out;
  out.passed = r.passed;
  out.csv = "j,alpha,phi,reference,deviation\n";
  json rows = json::array();
  for (std::size_t k = 0; k < r.scales.size(); ++k) {
    double worst = 0.0;
    for (std::size_t i = 0; i < r.alpha.size(); ++i) {
      const double dev = r.phi[k][i] - r.reference[i];
      worst = std::max(worst, std::abs(dev));
      out.csv += std::to_string(r.scales[k]) + "," + fmt(r.alpha[i]) + "," + fmt(r.phi[k][i]) + "," +
                 fmt(r.reference[i]) + "," + fmt(dev) + "\n";
    }
    rows.push_back({{"j", r.scales[k]}, {"max_deviation", worst}});
  }
  out.summary = {{"experiment", "duality"}, {"set", r.set_id},        {"tolerance", r.tol},
                 {"max_deviation", r.max_deviation_last},            {"passed", r.passed},
                 {"scales", rows}};
  return out;
}

// ---- sharpness --------------------------------------------------------------

SlopeFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) fail(ErrorCode::invalid_argument, "slope fit needs >= 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) fail(ErrorCode::invalid_argument, "slope fit needs distinct abscissae");
  const double s = sxy / sxx;
  return {s, my - s * mx};
}

LevelMax sharpness_window(const ScaleProfile& profile, double alpha, int window_M) {
  const int top = profile.j() - static_cast<int>(std::lround(std::log2(window_M)));
  const int bottom = std::max(0, profile.level_min());
  if (top < bottom) fail(ErrorCode::degenerate_window, "no window with 2^j |I| >= M at this scale");
  const LevelMax* best = nullptr;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int l = bottom; l <= top; ++l) {
    const LevelMax& lm = profile.at(l);
    if (lm.count == 0) continue;
    const double score = alpha * l + std::log2(static_cast<double>(lm.count));
    if (score >= best_score - 1e-12) {  // later levels are shorter windows
      best = &lm;
      best_score = std::max(score, best_score);
    }
  }
  if (!best) fail(ErrorCode::degenerate_window, "set meets no window");
  return *best;
}

namespace {

struct WindowMeasure {
  Interval half;
  double t_I = 0.0;
  std::size_t total = 0;
  std::size_t used = 0;
  double g_norm = 0.0;
  double q = 0.0;
};

WindowMeasure measure_window(const ExperimentConfig& cfg, const SetDescriptor& set,
                             const Discretization& disc, int j, Interval window, std::size_t max_times,
                             std::uint64_t stream) {
  const double delta = std::ldexp(1.0, -j);
  const double mid = 0.5 * (window.lo + window.hi);
  const std::uint64_t n_all = covering_count(set, window, delta);
  const std::uint64_t n_right = covering_count(set, {mid, window.hi}, delta);

  WindowMeasure m;
  const bool right = 2 * n_right >= n_all;
  m.half = right ? Interval{mid, window.hi} : Interval{window.lo, mid};
  // the time origin sits at the far end of I so that |t - t_I| >= |I|/2
  m.t_I = right ? window.lo : window.hi;

  std::vector<double> times;
  for (double t : disc.points)
    if (m.half.contains(t)) times.push_back(t);
  m.total = times.size();
  if (times.empty()) fail(ErrorCode::degenerate_window, "no discretization point in the chosen half window");

  double weight = 1.0;
  if (max_times > 0 && times.size() > max_times) {
    std::mt19937_64 rng(cfg.seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
    std::vector<double> pick;
    std::sample(times.begin(), times.end(), std::back_inserter(pick), max_times, rng);
    weight = static_cast<double>(times.size()) / static_cast<double>(pick.size());
    times.swap(pick);
  }
  m.used = times.size();

  WaveParams wp;
  wp.d = cfg.d;
  wp.j = j;
  wp.t_I = m.t_I;
  wp.nodes_per_frequency = cfg.nodes_per_frequency;
  wp.tolerance = cfg.wave_tolerance;

  m.g_norm = g_I_norm(wp, cfg.p).value;
  const double omega = sphere_area(cfg.d);
  const double step = std::ldexp(1.0, -j) / 32.0;
  double sum = 0.0;
  for (double t : times) {
    const std::vector<double> r = region_nodes(wp, t, 5);
    const WaveRow row = propagate(wp, t, r);
    const double s = shell_lp_norm(r, row.u, cfg.d, cfg.p, region_for(wp, t), step);
    sum += weight * omega * std::pow(s, cfg.p);
  }
  m.q = sum / std::pow(m.g_norm, cfg.p);
  return m;
}

}  // namespace

SlopeReport run_sharpness(const ExperimentConfig& cfg) {
  const SetDescriptor& set = need_set(cfg);
  if (cfg.j_max - cfg.j_min + 1 < 4) fail(ErrorCode::invalid_argument, "slope fit needs >= 4 scales");
  if (std::isinf(cfg.p) || cfg.p < 2.0) fail(ErrorCode::out_of_range, "sharpness needs finite p >= 2");
  const double alpha = cfg.p * s_p(cfg.d, cfg.p);

  SlopeReport r;
  r.set_id = cfg.set_id;
  r.d = cfg.d;
  r.p = cfg.p;
  std::vector<double> xs, ys, fys;
  std::optional<ScaleProfile> last;
  for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
    ScaleProfile prof = scale_profile(set, j);
    const LevelMax win = sharpness_window(prof, alpha, cfg.window_M);
    const Discretization disc = discretize(set, j);
    const WindowMeasure m = measure_window(cfg, set, disc, j, win.window, cfg.max_times,
                                           static_cast<std::uint64_t>(j));

    SharpnessRow row;
    row.j = j;
    row.level = win.level;
    row.window = win.window;
    row.half = m.half;
    row.t_I = m.t_I;
    row.times_total = m.total;
    row.times_used = m.used;
    row.g_norm = m.g_norm;
    row.q_value = m.q;
    row.log2_q = std::log2(m.q);

    if (cfg.full_window) {
      const Interval full{1.0, 2.0};
      if (win.window.lo == full.lo && win.window.hi == full.hi &&
          (cfg.max_times == 0 || cfg.max_times == cfg.full_window_max_times)) {
        row.full_log2_q = row.log2_q;
      } else {
        const WindowMeasure f = measure_window(cfg, set, disc, j, full, cfg.full_window_max_times,
                                               static_cast<std::uint64_t>(j) + 1000);
        row.full_log2_q = std::log2(f.q);
      }
      fys.push_back(*row.full_log2_q);
    }
    xs.push_back(j);
    ys.push_back(row.log2_q);
    r.rows.push_back(row);
    last.emplace(std::move(prof));
  }
  r.fit = least_squares(xs, ys);
  if (cfg.full_window) r.full_fit = least_squares(xs, fys);
  const ScaleProfile& top = *last;
  r.predicted = cfg.p * ls_exponent(cfg.d, cfg.p, NuSharpCurve([&top](double a) { return top.phi(a); }));
  r.deviation = std::abs(r.fit.slope - r.predicted);
  r.tol = cfg.tol.value_or(0.2);
  r.passed = r.deviation <= r.tol;
  return r;
}

Report render(const SlopeReport& r) {
  Report out;
  out.passed = r.passed;
  out.csv = "j,level,window_lo,window_hi,half_lo,half_hi,t_I,times_total,times_used,g_norm,Q,log2_Q,full_log2_Q\n";
  json rows = json::array();
  for (const auto& w : r.rows) {
    out.csv += std::to_string(w.j) + "," + std::to_string(w.level) + "," + fmt(w.window.lo) + "," +
               fmt(w.window.hi) + "," + fmt(w.half.lo) + "," + fmt(w.half.hi) + "," + fmt(w.t_I) + "," +
               std::to_string(w.times_total) + "," + std::to_string(w.times_used) + "," + fmt(w.g_norm) +
               "," + fmt(w.q_value) + "," + fmt(w.log2_q) + "," + opt(w.full_log2_q) + "\n";
    rows.push_back({{"j", w.j},
                    {"level", w.level},
                    {"window", interval_json(w.window)},
                    {"half", interval_json(w.half)},
                    {"t_I", w.t_I},
                    {"times_total", w.times_total},
                    {"times_used", w.times_used},
                    {"g_norm", w.g_norm},
                    {"Q", w.q_value},
                    {"log2_Q", w.log2_q},
                    {"full_log2_Q", opt_json(w.full_log2_q)}});
  }
  out.summary = {{"experiment", "sharpness-slope"},
                 {"set", r.set_id},
                 {"d", r.d},
                 {"p", r.p},
                 {"slope", r.fit.slope},
                 {"intercept", r.fit.intercept},
                 {"full_window_slope", r.full_fit ? json(r.full_fit->slope) : json(nullptr)},
                 {"predicted", r.predicted},
                 {"deviation", r.deviation},
                 {"tolerance", r.tol},
                 {"passed", r.passed},
                 {"rows", rows}};
  return out;
}

// ---- exponent table ---------------------------------------------------------

ExponentTable run_exponent_table(const ExperimentConfig& cfg) {
  const SetDescriptor& set = need_set(cfg);
  if (cfg.j_max < 5) fail(ErrorCode::invalid_resolution, "exponent table needs jmax >= 5");
  const ScaleProfile prof = scale_profile(set, cfg.j_max);
  const NuSharpCurve emp([&prof](double a) { return prof.phi(a); });
  std::optional<NuSharpCurve> ana;
  ExponentTable t;
  t.set_id = cfg.set_id;
  t.j = cfg.j_max;
  t.gamma_empirical = dims(prof).quasi_assouad;
  if (auto spec = analytic_spectrum(set)) {
    t.gamma_analytic = spec->value(spec->size() - 1);
    ana.emplace(nu_sharp_analytic(*spec));
  }
  const double gamma = t.gamma_analytic.value_or(t.gamma_empirical);
  const int d = cfg.d;
  t.p_gamma = p_gamma(d, gamma);
  t.q_gamma = q_gamma(d, gamma);
  t.q_circ = q_circ(d, gamma);

  const std::vector<double> dflt = UniformGrid::with_step(2.0, 8.0, 0.5).nodes();
  const std::vector<double>& ps = cfg.p_values.empty() ? dflt : cfg.p_values;
  const std::vector<double>& qs = cfg.q_values.empty() ? dflt : cfg.q_values;
  for (double p : ps) {
    if (!(p >= 2.0) || std::isinf(p)) fail(ErrorCode::out_of_range, "exponent table needs finite p >= 2");
    for (double q : qs) {
      ExponentRow row;
      row.d = d;
      row.p = p;
      row.q = q;
      row.s_p = s_p(d, p);
      if (p > 2.0) row.sigma_p = sigma_p(d, p);
      row.ls_empirical = ls_exponent(d, p, emp);
      if (ana) row.ls_analytic = ls_exponent(d, p, *ana);
      if (q >= 2.0 && !std::isinf(q)) {
        row.s_E_q_empirical = s_E_q(d, q, emp);
        if (ana) row.s_E_q_analytic = s_E_q(d, q, *ana);
      }
      const double pprime = p / (p - 1.0);
      if (p <= q && q > pprime && !std::isinf(q)) {
        row.s_E_pq_empirical = s_E_pq(d, p, q, emp);
        if (ana) row.s_E_pq_analytic = s_E_pq(d, p, q, *ana);
      }
      t.rows.push_back(row);
    }
  }
  return t;
}

Report render(const ExponentTable& t) {
  Report out;
  out.csv = "d,p,q,s_p,sigma_p,ls_empirical,ls_analytic,s_E_q_empirical,s_E_q_analytic,s_E_pq_empirical,s_E_pq_analytic\n";
  json rows = json::array();
  for (const auto& r : t.rows) {
    out.csv += std::to_string(r.d) + "," + fmt(r.p) + "," + fmt(r.q) + "," + fmt(r.s_p) + "," + opt(r.sigma_p) +
               "," + fmt(r.ls_empirical) + "," + opt(r.ls_analytic) + "," + opt(r.s_E_q_empirical) + "," +
               opt(r.s_E_q_analytic) + "," + opt(r.s_E_pq_empirical) + "," + opt(r.s_E_pq_analytic) + "\n";
    rows.push_back({{"d", r.d},
                    {"p", r.p},
                    {"q", r.q},
                    {"s_p", r.s_p},
                    {"sigma_p", opt_json(r.sigma_p)},
                    {"ls_empirical", r.ls_empirical},
                    {"ls_analytic", opt_json(r.ls_analytic)},
                    {"s_E_q_empirical", opt_json(r.s_E_q_empirical)},
                    {"s_E_q_analytic", opt_json(r.s_E_q_analytic)},
                    {"s_E_pq_empirical", opt_json(r.s_E_pq_empirical)},
                    {"s_E_pq_analytic", opt_json(r.s_E_pq_analytic)}});
  }
  out.summary = {{"experiment", "exponent-table"},
                 {"set", t.set_id},
                 {"j", t.j},
                 {"gamma_empirical", t.gamma_empirical},
                 {"gamma_analytic", opt_json(t.gamma_analytic)},
                 {"p_gamma", t.p_gamma},
                 {"q_gamma", t.q_gamma},
                 {"q_circ", t.q_circ},
                 {"rows", rows}};
  return out;
}

// ---- bookkeeping ------------------------------------------------------------

BookkeepingRun run_bookkeeping(const ExperimentConfig& cfg) {
  const SetDescriptor& set = need_set(cfg);
  BookkeepingRun b{cfg.set_id, bookkeeping_sums(set, cfg.j_max, cfg.d, cfg.p, cfg.q)};
  if (cfg.tol) b.report.slack = *cfg.tol;
  return b;
}

Report render(const BookkeepingRun& b) {
  const BookkeepingReport& r = b.report;
  Report out;
  out.passed = r.passed();
  out.csv = "m,kappa,lambda\n";
  for (std::size_t m = 0; m < r.lambda.size(); ++m)
    out.csv += std::to_string(m) + "," + (m < r.kappa.size() ? fmt(r.kappa[m]) : std::string()) + "," +
               fmt(r.lambda[m]) + "\n";
  out.summary = {{"experiment", "bookkeeping"},
                 {"set", b.set_id},
                 {"j", r.j},
                 {"d", r.d},
                 {"p", r.p},
                 {"q", r.q},
                 {"kappa_sum", r.kappa_sum},
                 {"lambda_sum", r.lambda_sum},
                 {"phi_p_sp", r.phi_ps},
                 {"s_E_q_at_scale", r.s_E_q_at_scale},
                 {"kappa_ratio", r.kappa_ratio},
                 {"lambda_ratio", r.lambda_ratio},
                 {"kappa_max_excess", r.kappa_max_excess},
                 {"slack", r.slack},
                 {"passed", r.passed()}};
  return out;
}

// ---- plain reports ----------------------------------------------------------

namespace {

Report render_spectrum(const SpectrumReport& s, const char* grid_name) {
  Report out;
  out.csv = std::string("j,") + grid_name + ",estimate,reference,deviation\n";
  for (std::size_t k = 0; k < s.scales.size(); ++k)
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      const double v = s.values[k][i];
      std::optional<double> ref, dev;
      if (s.reference) {
        ref = (*s.reference)[i];
        dev = v - *ref;
      }
      out.csv += std::to_string(s.scales[k]) + "," + fmt(s.grid[i]) + "," + fmt(v) + "," + opt(ref) + "," +
                 opt(dev) + "\n";
    }
  out.summary = {{"set", s.set_id},
                 {"grid", s.grid},
                 {"scales", s.scales},
                 {"estimate", s.estimate()},
                 {"reference", s.reference ? json(*s.reference) : json(nullptr)},
                 {"max_deviation_at_largest_j", s.reference ? json(s.max_deviation_at_last()) : json(nullptr)}};
  return out;
}

}  // namespace

Report run_spectrum_report(const ExperimentConfig& cfg) {
  const SetDescriptor& set = need_set(cfg);
  const SpectrumReport s = assouad_spectrum_report(set, cfg.set_id, cfg.j_min, cfg.j_max);
  Report out = render_spectrum(s, "theta");
  const DimensionEstimate dm = dims(set, cfg.j_max);
  const double tol = cfg.tol.value_or(default_tolerance(cfg.j_max));
  const QuasiRegularCheck qr = quasi_regular_check(set, cfg.j_max, tol);
  out.summary["experiment"] = "spectrum";
  out.summary["dim_M"] = dm.minkowski;
  out.summary["dim_qA"] = dm.quasi_assouad;
  out.summary["dims_j"] = dm.j;
  out.summary["quasi_regular"] = {{"beta", qr.beta},
                                  {"gamma", qr.gamma},
                                  {"max_deviation", qr.max_deviation},
                                  {"worst_theta", qr.worst_theta},
                                  {"tolerance", tol},
                                  {"regular", qr.regular}};
  return out;
}

Report run_nu_sharp_report(const ExperimentConfig& cfg) {
  const SetDescriptor& set = need_set(cfg);
  if (cfg.j_min < 2) fail(ErrorCode::invalid_resolution, "nu-sharp needs jmin >= 2");
  const auto alpha = cfg.alpha_grid.value_or(UniformGrid::with_step(0.0, 2.0, 1.0 / 16.0)).nodes();
  const SpectrumReport s = nu_sharp_empirical(set, cfg.set_id, alpha, scale_range(cfg));
  Report out = render_spectrum(s, "alpha");
  out.summary["experiment"] = "nu-sharp";
  return out;
}

Report run_legendre_report(const ExperimentConfig& cfg) {
  const SetDescriptor& set = need_set(cfg);
  const auto spec = analytic_spectrum(set);
  if (!spec) fail(ErrorCode::unsupported_set, "set has no analytic spectrum");
  const UniformGrid ag = cfg.alpha_grid.value_or(default_alpha_grid());
  if (ag.lo != 0.0 || ag.hi < 2.0) fail(ErrorCode::invalid_argument, "legendre alpha grid must span [0, A], A >= 2");

  const SampledFunction nu = nu_from_spectrum(*spec);
  const SampledFunction hull = convex_hull(nu);
  const SampledFunction ns = legendre_transform(nu, ag);
  const ConvexityCertificate cert = certify_convex(ns);
  const AdmissibilityReport adm = tau_admissible(ns);
  Report out;
  out.csv = "series,x,value\n";
  auto emit = [&](const char* name, const SampledFunction& f) {
    for (std::size_t i = 0; i < f.size(); ++i)
      out.csv += std::string(name) + "," + fmt(f.node(i)) + "," + fmt(f.value(i)) + "\n";
  };
  emit("spectrum", *spec);
  emit("nu", nu);
  emit("nu_hull", hull);
  emit("nu_sharp", ns);

  json sft = nullptr;
  bool ok = cert.is_convex && adm.passed();
  if (adm.passed()) {
    const SpectrumFromTau back = spectrum_from_tau(ns);
    emit("spectrum_from_nu_sharp", back.spectrum);
    const double slack = 2.0 * ag.step();
    ok = ok && back.round_trip_error <= slack;
    sft = {{"round_trip_error", back.round_trip_error},
           {"round_trip_slack", slack},
           {"spectrum_increasing", back.spectrum_increasing},
           {"spectrum_in_unit_range", back.spectrum_in_unit_range},
           {"nu_increasing", back.nu_increasing}};
  }
  out.passed = ok;
  out.summary = {{"experiment", "legendre"},
                 {"set", cfg.set_id},
                 {"nu_sharp_convex", cert.is_convex},
                 {"nu_sharp_max_violation", cert.max_violation},
                 {"admissible",
                  {{"domain", adm.domain_ok},
                   {"nonnegative", adm.nonnegative},
                   {"increasing", adm.increasing},
                   {"convex", adm.convexity.is_convex},
                   {"identity_beyond_one", adm.identity_beyond_one},
                   {"dominates_identity", adm.dominates_identity}}},
                 {"spectrum_from_tau", sft},
                 {"passed", ok}};
  return out;
}

Report run_wave_sim(const ExperimentConfig& cfg) {
  if (cfg.times.empty()) fail(ErrorCode::invalid_argument, "wave-sim needs at least one time");
  if (!cfg.r_grid) fail(ErrorCode::invalid_argument, "wave-sim needs an r grid");
  WaveParams wp;
  wp.d = cfg.d;
  wp.j = cfg.j_max;
  wp.t_I = cfg.t_I;
  wp.nodes_per_frequency = cfg.nodes_per_frequency;
  wp.tolerance = cfg.wave_tolerance;
  const WaveField field = simulate(wp, cfg.times, cfg.r_grid->nodes());
  Report out;
  out.csv = "t,r,re_u,im_u\n";
  json rows = json::array();
  for (const auto& row : field.rows) {
    for (std::size_t k = 0; k < row.r.size(); ++k)
      out.csv += fmt(row.t) + "," + fmt(row.r[k]) + "," + fmt(row.u[k].real()) + "," + fmt(row.u[k].imag()) + "\n";
    rows.push_back({{"t", row.t}, {"error_estimate", row.error_estimate}, {"nodes", row.nodes}});
  }
  out.summary = {{"experiment", "wave-sim"},
                 {"d", wp.d},
                 {"j", wp.j},
                 {"t_I", wp.t_I},
                 {"bump", {{"center", wp.bump.center}, {"half_width", wp.bump.half_width}}},
                 {"r_grid", {{"lo", cfg.r_grid->lo}, {"hi", cfg.r_grid->hi}, {"n", cfg.r_grid->n}}},
                 {"rows", rows}};
  return out;
}

Report run_experiment(const ExperimentConfig& cfg) {
  if (cfg.kind == "duality") return render(run_duality(cfg));
  if (cfg.kind == "sharpness-slope") return render(run_sharpness(cfg));
  if (cfg.kind == "exponent-table") return render(run_exponent_table(cfg));
  if (cfg.kind == "bookkeeping") return render(run_bookkeeping(cfg));
  if (cfg.kind == "spectrum") return run_spectrum_report(cfg);
  if (cfg.kind == "nu-sharp") return run_nu_sharp_report(cfg);
  if (cfg.kind == "legendre") return run_legendre_report(cfg);
  if (cfg.kind == "wave-sim") return run_wave_sim(cfg);
  fail(ErrorCode::invalid_argument, "unknown experiment kind '" + cfg.kind + "'");
}

}  // namespace fls
