#pragma once

// Experiment runners: duality, sharpness slopes, exponent tables and
// bookkeeping, each emitting a CSV table and a JSON summary.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fls/exponents.hpp"
#include "fls/json_io.hpp"
#include "fls/radialwave.hpp"
#include "fls/sampled_function.hpp"
#include "fls/setkit.hpp"

namespace fls {

struct ExperimentConfig {
  std::string kind;  // duality | sharpness-slope | exponent-table | bookkeeping | ...
  std::optional<SetDescriptor> set;
  std::string set_id = "set";
  int d = 3;
  double p = 4.0;
  double q = 4.0;
  int j_min = 8;
  int j_max = 14;
  std::optional<UniformGrid> alpha_grid;
  std::optional<double> tol;
  std::uint64_t seed = 0;

  // sharpness
  int window_M = 32;
  std::size_t max_times = 0;  // 0 = every time in E_j ∩ I'
  bool full_window = true;
  std::size_t full_window_max_times = 512;
  double nodes_per_frequency = 8.0;
  double wave_tolerance = 1e-6;

  // exponent table; empty means 2:0.5:8
  std::vector<double> p_values;
  std::vector<double> q_values;

  // wave-sim
  double t_I = 1.0;
  std::vector<double> times;
  std::optional<UniformGrid> r_grid;

  void validate() const;
};

/// Reads a JSON config; "set" is an inline set object.
ExperimentConfig config_from_json(const json& j);

struct Report {
  bool passed = true;
  std::string csv;
  json summary;
};

// ---- duality ----------------------------------------------------------------

struct DualityReport {
  std::string set_id;
  std::vector<double> alpha;
  std::vector<int> scales;
  std::vector<std::vector<double>> phi;  // phi[row][alpha]
  std::vector<double> reference;
  double max_deviation_last = 0.0;
  double tol = 0.0;
  bool passed = false;
};

/// Default tolerance 0.08 + 2/14 at j = 14, scaled as 3.12/j.
double duality_tolerance(int j);

DualityReport run_duality(const ExperimentConfig& cfg);
Report render(const DualityReport& r);

// ---- sharpness --------------------------------------------------------------

struct SharpnessRow {
  int j = 0;
  int level = 0;
  Interval window;
  Interval half;
  double t_I = 0.0;
  std::size_t times_total = 0;
  std::size_t times_used = 0;
  double g_norm = 0.0;
  double q_value = 0.0;
  double log2_q = 0.0;
  std::optional<double> full_log2_q;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Unweighted least squares; needs >= 2 points.
SlopeFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

struct SlopeReport {
  std::string set_id;
  int d = 3;
  double p = 0.0;
  std::vector<SharpnessRow> rows;
  SlopeFit fit;
  std::optional<SlopeFit> full_fit;
  double predicted = 0.0;
  double deviation = 0.0;
  double tol = 0.0;
  bool passed = false;
};

/// Window for scale j: among levels l <= j - log2(M), the family window
/// maximising 2^{alpha l} N_l (alpha = p s_p); ties go to the shorter window.
LevelMax sharpness_window(const ScaleProfile& profile, double alpha, int window_M);

SlopeReport run_sharpness(const ExperimentConfig& cfg);
Report render(const SlopeReport& r);

// ---- exponent table ---------------------------------------------------------

struct ExponentRow {
  int d = 0;
  double p = 0.0, q = 0.0;
  double s_p = 0.0;
  std::optional<double> sigma_p;
  double ls_empirical = 0.0;
  std::optional<double> ls_analytic;
  std::optional<double> s_E_q_empirical, s_E_q_analytic;
  std::optional<double> s_E_pq_empirical, s_E_pq_analytic;
};

struct ExponentTable {
  std::string set_id;
  int j = 0;
  double gamma_empirical = 0.0;
  std::optional<double> gamma_analytic;
  double p_gamma = 0.0, q_gamma = 0.0, q_circ = 0.0;
  std::vector<ExponentRow> rows;
};

ExponentTable run_exponent_table(const ExperimentConfig& cfg);
Report render(const ExponentTable& t);

// ---- bookkeeping ------------------------------------------------------------

struct BookkeepingRun {
  std::string set_id;
  BookkeepingReport report;
};

BookkeepingRun run_bookkeeping(const ExperimentConfig& cfg);
Report render(const BookkeepingRun& b);

// ---- plain reports used by the CLI -----------------------------------------

Report run_spectrum_report(const ExperimentConfig& cfg);
Report run_nu_sharp_report(const ExperimentConfig& cfg);
Report run_legendre_report(const ExperimentConfig& cfg);
Report run_wave_sim(const ExperimentConfig& cfg);

/// Dispatches on cfg.kind.
Report run_experiment(const ExperimentConfig& cfg);

}  // namespace fls
