#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "fls/error.hpp"
#include "fls/exponents.hpp"
#include "fls/harness.hpp"
#include "fls/spectra.hpp"
#include "oracles.hpp"

using namespace fls;

namespace {

json load_set(const std::string& name) {
  std::ifstream in(std::string(FLS_DATA_DIR) + "/sets/" + name + ".json");
  REQUIRE(in.good());
  return json::parse(in);
}

ExperimentConfig make(const std::string& kind, const std::string& set, json extra = json::object()) {
  extra["kind"] = kind;
  extra["set"] = load_set(set);
  return config_from_json(extra);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::io_error;
}

}  // namespace

TEST_CASE("config parsing") {
  const ExperimentConfig c = make("duality", "cantor", {{"jmin", 10}, {"jmax", 12}, {"p", "inf"}, {"tol", "1/8"},
                                                        {"alpha_grid", "0:0.25:2"}, {"seed", 42}});
  CHECK(c.set_id == "cantor");
  CHECK(c.j_min == 10);
  CHECK(std::isinf(c.p));
  CHECK(*c.tol == 0.125);
  CHECK(c.alpha_grid->nodes().size() == 9);
  CHECK(c.seed == 42);
  CHECK(code_of([] { config_from_json({{"kind", "duality"}, {"bogus", 1}}); }) == ErrorCode::parse_error);
  CHECK(code_of([] { config_from_json(json::array()); }) == ErrorCode::parse_error);
  CHECK(code_of([] { config_from_json({{"p", "x"}}); }) == ErrorCode::parse_error);
  CHECK(code_of([] { config_from_json({{"jmin", 5}, {"jmax", 4}}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { config_from_json({{"M", 24}}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { config_from_json({{"alpha_grid", 3}}); }) == ErrorCode::parse_error);
  CHECK(code_of([] { run_experiment(config_from_json({{"kind", "nope"}})); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { run_duality(config_from_json({{"kind", "duality"}})); }) == ErrorCode::invalid_argument);
}

TEST_CASE("least squares") {
  const auto f = least_squares({1, 2, 3, 4}, {3, 5, 7, 9});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(least_squares({0, 1, 2}, {0, 1, 0}).slope == doctest::Approx(0.0));
  CHECK(least_squares({8, 9, 10}, {1, 2, 2}).slope == doctest::Approx(oracle::slope({8, 9, 10}, {1, 2, 2})));
  CHECK(code_of([] { least_squares({1}, {1}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { least_squares({1, 1}, {1, 2}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("sharpness window selection") {
  const SetDescriptor full = SetDescriptor::interval(1, 2), point = SetDescriptor::points({1.5});
  // alpha = p s_p(3,4) = 2 > 1: the interval prefers the shortest admissible window
  const ScaleProfile pf = scale_profile(full, 12);
  const LevelMax w = sharpness_window(pf, 2.0, 32);
  CHECK(w.level == 7);
  CHECK(w.window.length() == doctest::Approx(std::ldexp(1.0, -7)));
  // alpha < 1 flips the choice to the whole interval
  CHECK(sharpness_window(pf, 0.5, 32).level == 0);
  CHECK(sharpness_window(scale_profile(point, 12), 2.0, 32).level == 7);
  CHECK(code_of([&] { sharpness_window(scale_profile(full, 4), 2.0, 32); }) == ErrorCode::degenerate_window);
}

TEST_CASE("duality runner") {
  auto cfg = make("duality", "interval", {{"jmin", 14}, {"jmax", 16}, {"tol", 2.0 / 16}});
  const DualityReport r = run_duality(cfg);
  CHECK(r.passed);
  CHECK(r.alpha.size() == 33);
  CHECK(r.scales.size() == 3);
  for (std::size_t i = 0; i < r.alpha.size(); ++i) {
    CHECK(r.reference[i] == doctest::Approx(std::max(1.0, r.alpha[i])));
    CHECK(r.phi.back()[i] == doctest::Approx(phi_at_scale(SetDescriptor::interval(1, 2), r.alpha[i], 16)));
  }
  CHECK(duality_tolerance(14) == doctest::Approx(0.08 + 2.0 / 14));
  const Report rep = render(r);
  CHECK(rep.summary["passed"] == true);
  CHECK(rep.csv.rfind("j,alpha,phi,reference,deviation\n", 0) == 0);
  CHECK(std::count(rep.csv.begin(), rep.csv.end(), '\n') == 1 + 3 * 33);
  // deterministic output
  CHECK(render(run_duality(cfg)).csv == rep.csv);
  // a tight tolerance fails honestly
  auto tight = make("duality", "polyseq", {{"jmin", 10}, {"jmax", 10}, {"tol", 1e-3}});
  CHECK_FALSE(run_duality(tight).passed);
}

TEST_CASE("exponent table") {
  auto cfg = make("exponent-table", "interval", {{"d", 2}, {"jmin", 12}, {"jmax", 12}});
  cfg.p_values = {2.0, 6.0};
  cfg.q_values = {2.0, 4.0, 6.0};
  const ExponentTable t = run_exponent_table(cfg);
  REQUIRE(t.rows.size() == 6);
  const auto full = NuSharpCurve::full_interval();
  for (const auto& row : t.rows) {
    if (row.p == 6.0) {
      CHECK(*row.ls_analytic == doctest::Approx(1.0 / 3));
      CHECK(row.ls_empirical == doctest::Approx(1.0 / 3).epsilon(2.0 / 12));
    }
    if (row.p == 2.0) {
      REQUIRE(row.s_E_q_analytic);
      CHECK(*row.s_E_q_analytic == doctest::Approx(s_E_q(2, row.q, full)));
      if (row.q > 2.0) REQUIRE(row.s_E_pq_analytic);
      if (row.q > 2.0) CHECK(*row.s_E_pq_analytic == doctest::Approx(*row.s_E_q_analytic).epsilon(1e-12));
    }
    CHECK_FALSE(row.sigma_p.has_value() != (row.p > 2.0));
  }
  CHECK(*t.gamma_analytic == doctest::Approx(1.0));
  CHECK(t.p_gamma == doctest::Approx(4.0));
  const Report rep = render(t);
  CHECK(rep.summary["rows"].size() == 6);
  CHECK(rep.csv == render(run_exponent_table(cfg)).csv);
}

TEST_CASE("bookkeeping runner") {
  for (const char* s : {"interval", "point", "cantor", "polyseq", "cantor_union"}) {
    auto cfg = make("bookkeeping", s, {{"jmin", 12}, {"jmax", 12}, {"p", 3}, {"q", 4}});
    const BookkeepingRun b = run_bookkeeping(cfg);
    CHECK(b.report.passed());
    const Report rep = render(b);
    CHECK(rep.passed);
    CHECK(rep.csv.rfind("m,kappa,lambda\n", 0) == 0);
  }
}

TEST_CASE("sharpness pipeline on the point set") {
  auto cfg = make("sharpness-slope", "point", {{"jmin", 8}, {"jmax", 11}, {"p", 4}, {"d", 3}});
  const SlopeReport r = run_sharpness(cfg);
  REQUIRE(r.rows.size() == 4);
  // predicted slope is p times the critical exponent at the finest scale
  const ScaleProfile top = scale_profile(SetDescriptor::points({1.5}), 11);
  CHECK(r.predicted == doctest::Approx(4 * ls_exponent(3, 4, NuSharpCurve([&](double a) { return top.phi(a); }))));
  CHECK(r.predicted == doctest::Approx(2.0));
  for (const auto& row : r.rows) {
    CHECK(row.times_total == 1);
    CHECK(row.times_used == 1);
    CHECK(row.g_norm > 0.0);
  }
  CHECK(r.deviation <= 0.2);
  CHECK(r.passed);
  const Report a = render(r), b = render(run_sharpness(cfg));
  CHECK(a.csv == b.csv);
  CHECK(a.summary.dump() == b.summary.dump());
  CHECK(code_of([&] {
          auto c = cfg;
          c.j_max = 10;
          run_sharpness(c);
        }) == ErrorCode::invalid_argument);
}

TEST_CASE("other report kinds") {
  auto spec = make("spectrum", "cantor", {{"jmin", 10}, {"jmax", 11}});
  CHECK(run_experiment(spec).csv.rfind("j,theta,", 0) == 0);
  auto ns = make("nu-sharp", "cantor", {{"jmin", 10}, {"jmax", 11}});
  CHECK(run_experiment(ns).csv.rfind("j,alpha,", 0) == 0);
  auto lg = make("legendre", "polyseq");
  CHECK(run_experiment(lg).csv.rfind("series,x,value\n", 0) == 0);
  ExperimentConfig w;
  w.kind = "wave-sim";
  w.j_min = w.j_max = 6;
  w.times = {1.0, 1.5};
  w.r_grid = UniformGrid::parse("0:0.5:2");
  const Report wr = run_experiment(w);
  CHECK(std::count(wr.csv.begin(), wr.csv.end(), '\n') == 1 + 2 * 5);
  w.times.clear();
  CHECK(code_of([&] { run_experiment(w); }) == ErrorCode::invalid_argument);
}
