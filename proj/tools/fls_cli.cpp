// fls: command-line front end over the C interface.
//
// Exit codes: 0 success / check passed, 1 check failed, 2 usage or input error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fls/fls.h"

namespace {

using json = nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string set_path;
  std::string config_path;
  std::optional<int> d;
  std::optional<std::string> p, q;
  std::optional<int> jmin, jmax, j;
  std::optional<std::string> alpha_grid, p_grid, q_grid, r_grid, times;
  std::optional<double> tol, t_I, delta;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_times;
  std::optional<int> window_M;
  std::optional<bool> full_window;
  std::string window = "1,2";
  std::string out;
  std::string format = "csv";
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(what + " is not valid JSON: " + e.what());
  }
}

std::vector<double> split_numbers(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad number in ") + what + ": '" + tok + "'");
    }
  }
  return out;
}

json number_or_string(const std::string& s) {
  if (s == "inf" || s == "infinity") return s;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("expected a number, got '" + s + "'");
}

// Config precedence: defaults < --config file < flags.
json build_config(const Options& o, bool needs_set) {
  json c = json::object();
  if (!o.config_path.empty()) {
    c = parse_json(slurp(o.config_path), "config file");
    if (!c.is_object()) throw UsageError("config file must hold a JSON object");
    c.erase("kind");
  }
  if (!o.set_path.empty()) c["set"] = parse_json(slurp(o.set_path), "set file");
  if (needs_set && !c.contains("set")) throw UsageError("--set is required");
  if (o.d) c["d"] = *o.d;
  if (o.p) c["p"] = number_or_string(*o.p);
  if (o.q) c["q"] = number_or_string(*o.q);
  if (o.jmin) c["jmin"] = *o.jmin;
  if (o.jmax) c["jmax"] = *o.jmax;
  if (o.alpha_grid) c["alpha_grid"] = *o.alpha_grid;
  if (o.tol) c["tol"] = *o.tol;
  if (o.seed) c["seed"] = *o.seed;
  if (o.max_times) c["max_times"] = *o.max_times;
  if (o.window_M) c["M"] = *o.window_M;
  if (o.full_window) c["full_window"] = *o.full_window;
  if (o.p_grid) c["p_grid"] = *o.p_grid;
  if (o.q_grid) c["q_grid"] = *o.q_grid;
  if (o.r_grid) c["r_grid"] = *o.r_grid;
  if (o.t_I) c["t_I"] = *o.t_I;
  if (o.times) c["times"] = split_numbers(*o.times, "--times");
  return c;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + o.out + "'");
  f << text;
}

[[noreturn]] void library_error(fls_status st) {
  throw UsageError(std::string(fls_status_string(st)) + ": " + fls_last_error());
}

using Runner = fls_status (*)(const char*, fls_report**);

int run_config(const Options& o, const json& cfg, Runner run, bool is_check) {
  fls_report* rep = nullptr;
  const fls_status st = run(cfg.dump().c_str(), &rep);
  if (st != FLS_OK) library_error(st);
  const bool passed = fls_report_passed(rep) != 0;
  const std::string text = o.format == "json" ? fls_report_json(rep) : fls_report_csv(rep);
  fls_report_free(rep);
  emit(o, text);
  if (!is_check) return kExitPass;
  return passed ? kExitPass : kExitFail;
}

int run_report(const Options& o, Runner run, bool is_check) {
  return run_config(o, build_config(o, true), run, is_check);
}

int cmd_set_info(const Options& o) {
  if (o.set_path.empty()) throw UsageError("--set is required");
  fls_set* set = nullptr;
  fls_status st = fls_set_from_file(o.set_path.c_str(), &set);
  if (st != FLS_OK) library_error(st);
  char* desc = nullptr;
  st = fls_set_describe(set, o.j.value_or(o.jmax.value_or(10)), &desc);
  fls_set_free(set);
  if (st != FLS_OK) library_error(st);
  std::string text = desc;
  fls_string_free(desc);
  if (o.format == "csv") {
    const json d = json::parse(text);
    std::string csv = "key,value\n";
    for (auto it = d.begin(); it != d.end(); ++it)
      if (!it->is_structured()) csv += it.key() + "," + (it->is_string() ? it->get<std::string>() : it->dump()) + "\n";
    text = csv;
  }
  emit(o, text);
  return kExitPass;
}

std::string fixed(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int cmd_covering(const Options& o) {
  if (o.set_path.empty()) throw UsageError("--set is required");
  const std::vector<double> w = split_numbers(o.window, "--window");
  if (w.size() != 2) throw UsageError("--window takes lo,hi");
  const int j = o.j.value_or(o.jmax.value_or(10));
  const double delta = o.delta.value_or(std::ldexp(1.0, -j));
  fls_set* set = nullptr;
  fls_status st = fls_set_from_file(o.set_path.c_str(), &set);
  if (st != FLS_OK) library_error(st);
  std::uint64_t n = 0;
  std::size_t disc = 0;
  st = fls_covering_number(set, w[0], w[1], delta, &n);
  if (st == FLS_OK) st = fls_discretize(set, j, nullptr, 0, &disc);
  fls_set_free(set);
  if (st != FLS_OK) library_error(st);
  std::string text;
  if (o.format == "json") {
    const json d = {{"window", w}, {"delta", delta}, {"j", j}, {"covering_number", n}, {"discretization_size", disc}};
    text = d.dump(2) + "\n";
  } else {
    text = "window_lo,window_hi,delta,j,covering_number,discretization_size\n" + fixed(w[0]) + "," + fixed(w[1]) +
           "," + fixed(delta) + "," + std::to_string(j) + "," + std::to_string(n) + "," + std::to_string(disc) + "\n";
  }
  emit(o, text);
  return kExitPass;
}

void common_flags(CLI::App* sub, Options& o) {
  sub->add_option("--set", o.set_path, "set descriptor JSON file");
  sub->add_option("--config", o.config_path, "experiment config JSON file");
  sub->add_option("--d", o.d, "spatial dimension")->check(CLI::Range(2, 64));
  sub->add_option("--p", o.p, "integrability exponent p (number or inf)");
  sub->add_option("--q", o.q, "integrability exponent q (number or inf)");
  sub->add_option("--jmin", o.jmin, "smallest scale j")->check(CLI::Range(0, 30));
  sub->add_option("--jmax", o.jmax, "largest scale j")->check(CLI::Range(0, 30));
  sub->add_option("--alpha-grid", o.alpha_grid, "alpha grid lo:step:hi");
  sub->add_option("--out", o.out, "write output to this file");
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--tol", o.tol, "pass/fail tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "random seed for sampled subsets");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractal local smoothing toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fls_version());
  Options o;

  auto* set_info = app.add_subcommand("set-info", "describe a set");
  auto* covering = app.add_subcommand("covering", "covering number and discretization size");
  auto* spectrum = app.add_subcommand("spectrum", "empirical Assouad spectrum table");
  auto* nu_sharp = app.add_subcommand("nu-sharp", "finite-scale Legendre-Assouad function");
  auto* legendre = app.add_subcommand("legendre", "analytic spectrum, its transform and round trip");
  auto* exponents = app.add_subcommand("exponents", "critical exponent table");
  auto* wave = app.add_subcommand("wave-sim", "sample the radial wave field");
  auto* v_dual = app.add_subcommand("verify-duality", "phi_j against the analytic nu-sharp");
  auto* v_sharp = app.add_subcommand("verify-sharpness", "growth slope of the radial witness");
  auto* v_book = app.add_subcommand("verify-bookkeeping", "kappa / lambda sum ratios");

  for (auto* s : {set_info, covering, spectrum, nu_sharp, legendre, exponents, wave, v_dual, v_sharp, v_book})
    common_flags(s, o);
  for (auto* s : {set_info, covering, wave}) s->add_option("--j", o.j, "scale j")->check(CLI::Range(0, 30));
  covering->add_option("--window", o.window, "window lo,hi (default 1,2)");
  covering->add_option("--delta", o.delta, "resolution (default 2^-j)")->check(CLI::PositiveNumber);
  exponents->add_option("--p-grid", o.p_grid, "p grid lo:step:hi");
  exponents->add_option("--q-grid", o.q_grid, "q grid lo:step:hi");
  wave->add_option("--t-I", o.t_I, "time origin t_I");
  wave->add_option("--times", o.times, "comma-separated times");
  wave->add_option("--r-grid", o.r_grid, "radial grid lo:step:hi");
  v_sharp->add_option("--max-times", o.max_times, "subsample at most this many times per scale");
  v_sharp->add_option("--M", o.window_M, "minimum 2^j |I|");
  v_sharp->add_option("--full-window", o.full_window, "also measure the window [1,2]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (set_info->parsed()) return cmd_set_info(o);
    if (covering->parsed()) return cmd_covering(o);
    if (spectrum->parsed()) return run_report(o, fls_run_spectrum, false);
    if (nu_sharp->parsed()) return run_report(o, fls_run_nu_sharp, false);
    if (legendre->parsed()) return run_report(o, fls_run_legendre, false);
    if (exponents->parsed()) {
      json c = build_config(o, true);
      if (o.p && !o.p_grid) c["p_values"] = json::array({c["p"]});
      if (o.q && !o.q_grid) c["q_values"] = json::array({c["q"]});
      return run_config(o, c, fls_run_exponent_table, false);
    }
    if (wave->parsed()) {
      Options w = o;
      if (o.j) w.jmin = w.jmax = o.j;
      return run_config(o, build_config(w, false), fls_run_wave_sim, false);
    }
    if (v_dual->parsed()) return run_report(o, fls_run_duality, true);
    if (v_sharp->parsed()) return run_report(o, fls_run_sharpness, true);
    if (v_book->parsed()) return run_report(o, fls_run_bookkeeping, true);
  } catch (const std::exception& e) {
    std::cerr << "fls: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
