#include "fls/fls.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "fls/bessel.hpp"
#include "fls/error.hpp"
#include "fls/exponents.hpp"
#include "fls/harness.hpp"
#include "fls/json_io.hpp"
#include "fls/legendre.hpp"
#include "fls/radialwave.hpp"
#include "fls/setkit.hpp"
#include "fls/spectra.hpp"

struct fls_set {
  fls::SetDescriptor set;
  fls::json source;
};

struct fls_function {
  fls::SampledFunction f;
};

struct fls_report {
  std::string csv;
  std::string json;
  int passed;
};

namespace {

thread_local std::string g_last_error;

fls_status to_status(fls::ErrorCode c) {
  // the two enums share numbering
  return static_cast<fls_status>(static_cast<int>(c));
}

template <class F>
fls_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return FLS_OK;
  } catch (const fls::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FLS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FLS_ERR_INTERNAL;
  }
}

fls_status null_arg(const char* what) {
  g_last_error = std::string("null pointer: ") + what;
  return FLS_ERR_NULL_POINTER;
}

#define FLS_REQUIRE(ptr)                       \
  do {                                         \
    if ((ptr) == nullptr) return null_arg(#ptr); \
  } while (0)

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fls_function* wrap(fls::SampledFunction f) { return new fls_function{std::move(f)}; }

fls::NuSharpCurve curve(const fls_function* f) { return fls::NuSharpCurve(f->f); }

fls_status run_kind(const char* config_json, const char* kind, fls_report** out) {
  FLS_REQUIRE(config_json);
  FLS_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    fls::json j;
    try {
      j = fls::json::parse(config_json);
    } catch (const fls::json::exception& e) {
      fls::fail(fls::ErrorCode::parse_error, std::string("config JSON: ") + e.what());
    }
    if (kind) {
      if (!j.is_object()) fls::fail(fls::ErrorCode::parse_error, "config must be a JSON object");
      j["kind"] = kind;
    }
    const fls::ExperimentConfig cfg = fls::config_from_json(j);
    fls::Report r = fls::run_experiment(cfg);
    *out = new fls_report{std::move(r.csv), r.summary.dump(2) + "\n", r.passed ? 1 : 0};
  });
}

}  // namespace

extern "C" {

const char* fls_version(void) { return "1.0.0"; }

const char* fls_status_string(fls_status status) {
  switch (status) {
    case FLS_OK: return "ok";
    case FLS_ERR_NULL_POINTER: return "null-pointer";
    case FLS_ERR_BUFFER_TOO_SMALL: return "buffer-too-small";
    case FLS_ERR_INTERNAL: return "internal-error";
    default: break;
  }
  const int c = static_cast<int>(status);
  if (c >= 1 && c <= static_cast<int>(fls::ErrorCode::io_error))
    return fls::to_string(static_cast<fls::ErrorCode>(c)).data();
  return "unknown-status";
}

const char* fls_last_error(void) { return g_last_error.c_str(); }

void fls_string_free(char* s) { std::free(s); }

// ---- sets -------------------------------------------------------------------

fls_status fls_set_from_json(const char* json_text, fls_set** out) {
  FLS_REQUIRE(json_text);
  FLS_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    fls::json j;
    try {
      j = fls::json::parse(json_text);
    } catch (const fls::json::exception& e) {
      fls::fail(fls::ErrorCode::parse_error, std::string("set JSON: ") + e.what());
    }
    fls::SetDescriptor s = [&] {
      try {
        return fls::set_from_json(j);
      } catch (const fls::json::exception& e) {
        fls::fail(fls::ErrorCode::parse_error, std::string("set JSON: ") + e.what());
      }
    }();
    *out = new fls_set{std::move(s), std::move(j)};
  });
}

fls_status fls_set_from_file(const char* path, fls_set** out) {
  FLS_REQUIRE(path);
  FLS_REQUIRE(out);
  *out = nullptr;
  std::string text;
  const fls_status st = guarded([&] { text = fls::read_text_file(path); });
  if (st != FLS_OK) return st;
  return fls_set_from_json(text.c_str(), out);
}

void fls_set_free(fls_set* set) { delete set; }

fls_status fls_set_describe(const fls_set* set, int j, char** out_json) {
  FLS_REQUIRE(set);
  FLS_REQUIRE(out_json);
  *out_json = nullptr;
  return guarded([&] {
    const fls::Interval span = set->set.span();
    const double delta = std::ldexp(1.0, -j);
    if (j < 0 || j > 30) fls::fail(fls::ErrorCode::invalid_resolution, "describe needs 0 <= j <= 30");
    fls::json d = {{"name", fls::set_label(set->source)},
                   {"kind", set->set.kind()},
                   {"set", fls::set_to_json(set->set)},
                   {"span", {span.lo, span.hi}},
                   {"j", j},
                   {"covering_number", fls::covering_number(set->set, {1.0, 2.0}, delta)},
                   {"discretization_size", fls::discretize(set->set, j).points.size()}};
    if (auto s = fls::analytic_spectrum(set->set)) {
      d["analytic_dim_M"] = s->value(0);
      d["analytic_dim_qA"] = s->value(s->size() - 1);
    } else {
      d["analytic_dim_M"] = nullptr;
      d["analytic_dim_qA"] = nullptr;
    }
    *out_json = dup_string(d.dump(2) + "\n");
  });
}

fls_status fls_covering_number(const fls_set* set, double lo, double hi, double delta, uint64_t* out) {
  FLS_REQUIRE(set);
  FLS_REQUIRE(out);
  return guarded([&] { *out = fls::covering_number(set->set, {lo, hi}, delta); });
}

fls_status fls_discretize(const fls_set* set, int j, double* points, size_t capacity, size_t* count) {
  FLS_REQUIRE(set);
  FLS_REQUIRE(count);
  fls::Discretization d;
  const fls_status st = guarded([&] {
    if (j < 0 || j > 40) fls::fail(fls::ErrorCode::invalid_resolution, "discretize needs 0 <= j <= 40");
    d = fls::discretize(set->set, j);
  });
  if (st != FLS_OK) return st;
  *count = d.points.size();
  if (!points) return FLS_OK;
  if (capacity < d.points.size()) {
    g_last_error = "point buffer too small";
    return FLS_ERR_BUFFER_TOO_SMALL;
  }
  std::memcpy(points, d.points.data(), d.points.size() * sizeof(double));
  return FLS_OK;
}

fls_status fls_phi_at_scale(const fls_set* set, double alpha, int j, double* out) {
  FLS_REQUIRE(set);
  FLS_REQUIRE(out);
  return guarded([&] { *out = fls::phi_at_scale(set->set, alpha, j); });
}

fls_status fls_assouad_spectrum(const fls_set* set, double theta, int j, double* out) {
  FLS_REQUIRE(set);
  FLS_REQUIRE(out);
  return guarded([&] { *out = fls::assouad_spectrum_empirical(set->set, theta, j); });
}

fls_status fls_dims(const fls_set* set, int j, double* dim_m, double* dim_qa) {
  FLS_REQUIRE(set);
  FLS_REQUIRE(dim_m);
  FLS_REQUIRE(dim_qa);
  return guarded([&] {
    const fls::DimensionEstimate e = fls::dims(set->set, j);
    *dim_m = e.minkowski;
    *dim_qa = e.quasi_assouad;
  });
}

// ---- functions --------------------------------------------------------------

fls_status fls_function_create(double lo, double hi, size_t n, const double* values, fls_function** out) {
  FLS_REQUIRE(values);
  FLS_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = wrap(fls::SampledFunction({lo, hi, n}, std::vector<double>(values, values + n)));
  });
}

void fls_function_free(fls_function* f) { delete f; }

fls_status fls_function_grid(const fls_function* f, double* lo, double* hi, size_t* n) {
  FLS_REQUIRE(f);
  if (lo) *lo = f->f.lo();
  if (hi) *hi = f->f.hi();
  if (n) *n = f->f.size();
  return FLS_OK;
}

fls_status fls_function_values(const fls_function* f, double* out, size_t capacity) {
  FLS_REQUIRE(f);
  FLS_REQUIRE(out);
  if (capacity < f->f.size()) {
    g_last_error = "value buffer too small";
    return FLS_ERR_BUFFER_TOO_SMALL;
  }
  std::memcpy(out, f->f.values().data(), f->f.size() * sizeof(double));
  return FLS_OK;
}

fls_status fls_function_eval(const fls_function* f, double x, double* out) {
  FLS_REQUIRE(f);
  FLS_REQUIRE(out);
  return guarded([&] { *out = f->f(x); });
}

fls_status fls_analytic_spectrum(const fls_set* set, fls_function** out) {
  FLS_REQUIRE(set);
  FLS_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto s = fls::analytic_spectrum(set->set);
    if (!s) fls::fail(fls::ErrorCode::unsupported_set, "set has no analytic spectrum");
    *out = wrap(std::move(*s));
  });
}

fls_status fls_legendre_transform(const fls_function* f, double alpha_lo, double alpha_hi, size_t alpha_n,
                                  fls_function** out) {
  FLS_REQUIRE(f);
  FLS_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    if (alpha_n < 2 || !(alpha_hi > alpha_lo))
      fls::fail(fls::ErrorCode::invalid_argument, "alpha grid needs >= 2 nodes and lo < hi");
    *out = wrap(fls::legendre_transform(f->f, {alpha_lo, alpha_hi, alpha_n}));
  });
}

fls_status fls_convex_hull(const fls_function* f, fls_function** out) {
  FLS_REQUIRE(f);
  FLS_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = wrap(fls::convex_hull(f->f)); });
}

fls_status fls_certify_convex(const fls_function* f, int* is_convex, double* max_violation, size_t* witness) {
  FLS_REQUIRE(f);
  const fls::ConvexityCertificate c = fls::certify_convex(f->f);
  if (is_convex) *is_convex = c.is_convex ? 1 : 0;
  if (max_violation) *max_violation = c.max_violation;
  if (witness) *witness = c.witness;
  return FLS_OK;
}

fls_status fls_nu_from_spectrum(const fls_function* spectrum, fls_function** out) {
  FLS_REQUIRE(spectrum);
  FLS_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = wrap(fls::nu_from_spectrum(spectrum->f)); });
}

fls_status fls_nu_sharp_analytic(const fls_function* spectrum, fls_function** out) {
  FLS_REQUIRE(spectrum);
  FLS_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = wrap(fls::nu_sharp_analytic(spectrum->f)); });
}

fls_status fls_tau_admissible(const fls_function* tau, int* passed, char** details_json) {
  FLS_REQUIRE(tau);
  FLS_REQUIRE(passed);
  return guarded([&] {
    const fls::AdmissibilityReport a = fls::tau_admissible(tau->f);
    *passed = a.passed() ? 1 : 0;
    if (details_json) {
      const fls::json d = {{"domain", a.domain_ok},
                           {"nonnegative", a.nonnegative},
                           {"increasing", a.increasing},
                           {"increasing_witness", a.increasing_witness},
                           {"convex", a.convexity.is_convex},
                           {"convex_max_violation", a.convexity.max_violation},
                           {"convex_witness", a.convexity.witness},
                           {"identity_beyond_one", a.identity_beyond_one},
                           {"identity_witness", a.identity_witness},
                           {"dominates_identity", a.dominates_identity},
                           {"dominates_witness", a.dominates_witness},
                           {"passed", a.passed()}};
      *details_json = dup_string(d.dump());
    }
  });
}

fls_status fls_spectrum_from_tau(const fls_function* tau, fls_function** spectrum, double* round_trip_error) {
  FLS_REQUIRE(tau);
  FLS_REQUIRE(spectrum);
  *spectrum = nullptr;
  return guarded([&] {
    fls::SpectrumFromTau s = fls::spectrum_from_tau(tau->f);
    if (round_trip_error) *round_trip_error = s.round_trip_error;
    *spectrum = wrap(std::move(s.spectrum));
  });
}

fls_status fls_union_nu_sharp(const fls_function* const* parts, size_t n, fls_function** out) {
  FLS_REQUIRE(parts);
  FLS_REQUIRE(out);
  *out = nullptr;
  for (size_t i = 0; i < n; ++i)
    if (!parts[i]) return null_arg("parts[i]");
  return guarded([&] {
    std::vector<fls::SampledFunction> v;
    for (size_t i = 0; i < n; ++i) v.push_back(parts[i]->f);
    *out = wrap(fls::union_nu_sharp(v));
  });
}

// ---- exponents --------------------------------------------------------------

fls_status fls_s_p(int d, double p, double* out) {
  FLS_REQUIRE(out);
  return guarded([&] { *out = fls::s_p(d, p); });
}

fls_status fls_sigma_p(int d, double p, double* out) {
  FLS_REQUIRE(out);
  return guarded([&] { *out = fls::sigma_p(d, p); });
}

fls_status fls_ls_exponent(int d, double p, const fls_function* nu_sharp, double* out) {
  FLS_REQUIRE(nu_sharp);
  FLS_REQUIRE(out);
  return guarded([&] { *out = fls::ls_exponent(d, p, curve(nu_sharp)); });
}

fls_status fls_p_gamma(int d, double gamma, double* out) {
  FLS_REQUIRE(out);
  return guarded([&] { *out = fls::p_gamma(d, gamma); });
}

fls_status fls_s_E_q(int d, double q, const fls_function* nu_sharp, double* out) {
  FLS_REQUIRE(nu_sharp);
  FLS_REQUIRE(out);
  return guarded([&] { *out = fls::s_E_q(d, q, curve(nu_sharp)); });
}

fls_status fls_s_E_pq(int d, double p, double q, const fls_function* nu_sharp, double* out) {
  FLS_REQUIRE(nu_sharp);
  FLS_REQUIRE(out);
  return guarded([&] { *out = fls::s_E_pq(d, p, q, curve(nu_sharp)); });
}

fls_status fls_q_gamma(int d, double gamma, double* out) {
  FLS_REQUIRE(out);
  return guarded([&] { *out = fls::q_gamma(d, gamma); });
}

fls_status fls_q_circ(int d, double gamma_circ, double* out) {
  FLS_REQUIRE(out);
  return guarded([&] { *out = fls::q_circ(d, gamma_circ); });
}

fls_status fls_lower_bound_rhs(int d, double p, double q, int j, double window_length, double count,
                               double* out) {
  FLS_REQUIRE(out);
  return guarded([&] { *out = fls::lower_bound_rhs(d, p, q, j, window_length, count); });
}

// ---- Bessel and waves -------------------------------------------------------

fls_status fls_bessel_j(double order, double u, double* out) {
  FLS_REQUIRE(out);
  return guarded([&] { *out = fls::bessel_j(order, u); });
}

fls_status fls_bessel_remainder(double order, double u, double* out) {
  FLS_REQUIRE(out);
  return guarded([&] { *out = fls::bessel_remainder(order, u); });
}

fls_status fls_propagate(int d, int j, double t_I, double t, const double* r, size_t n, double* re, double* im) {
  FLS_REQUIRE(r);
  FLS_REQUIRE(re);
  FLS_REQUIRE(im);
  return guarded([&] {
    fls::WaveParams wp;
    wp.d = d;
    wp.j = j;
    wp.t_I = t_I;
    const fls::WaveRow row = fls::propagate(wp, t, std::vector<double>(r, r + n));
    for (size_t k = 0; k < n; ++k) {
      re[k] = row.u[k].real();
      im[k] = row.u[k].imag();
    }
  });
}

fls_status fls_g_norm(int d, int j, double t_I, double p, double* out) {
  FLS_REQUIRE(out);
  return guarded([&] {
    fls::WaveParams wp;
    wp.d = d;
    wp.j = j;
    wp.t_I = t_I;
    *out = fls::g_I_norm(wp, p).value;
  });
}

// ---- experiments ------------------------------------------------------------

fls_status fls_run(const char* config_json, fls_report** out) { return run_kind(config_json, nullptr, out); }
fls_status fls_run_duality(const char* c, fls_report** out) { return run_kind(c, "duality", out); }
fls_status fls_run_sharpness(const char* c, fls_report** out) { return run_kind(c, "sharpness-slope", out); }
fls_status fls_run_exponent_table(const char* c, fls_report** out) { return run_kind(c, "exponent-table", out); }
fls_status fls_run_bookkeeping(const char* c, fls_report** out) { return run_kind(c, "bookkeeping", out); }
fls_status fls_run_spectrum(const char* c, fls_report** out) { return run_kind(c, "spectrum", out); }
fls_status fls_run_nu_sharp(const char* c, fls_report** out) { return run_kind(c, "nu-sharp", out); }
fls_status fls_run_legendre(const char* c, fls_report** out) { return run_kind(c, "legendre", out); }
fls_status fls_run_wave_sim(const char* c, fls_report** out) { return run_kind(c, "wave-sim", out); }

const char* fls_report_csv(const fls_report* r) { return r ? r->csv.c_str() : ""; }
const char* fls_report_json(const fls_report* r) { return r ? r->json.c_str() : ""; }
int fls_report_passed(const fls_report* r) { return r ? r->passed : 0; }
void fls_report_free(fls_report* r) { delete r; }

}  // extern "C"
