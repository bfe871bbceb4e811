/* C interface to the fractal local smoothing library.
 *
 * Objects are opaque handles released with their *_free function. Every
 * call returns an fls_status; on failure fls_last_error() holds a message
 * for the calling thread. Strings returned through char** are released
 * with fls_string_free; strings returned as const char* belong to the
 * handle they came from.
 */
#ifndef FLS_FLS_H
#define FLS_FLS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FLS_BUILDING_LIBRARY)
#    define FLS_API __declspec(dllexport)
#  else
#    define FLS_API __declspec(dllimport)
#  endif
#else
#  define FLS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fls_status {
  FLS_OK = 0,
  FLS_ERR_INVALID_ARGUMENT = 1,
  FLS_ERR_INVALID_SET = 2,
  FLS_ERR_INVALID_RESOLUTION = 3,
  FLS_ERR_INVALID_THETA = 4,
  FLS_ERR_INVALID_SPECTRUM = 5,
  FLS_ERR_OUT_OF_RANGE = 6,
  FLS_ERR_UNSUPPORTED_ORDER = 7,
  FLS_ERR_REFINE_FAILURE = 8,
  FLS_ERR_ADMISSIBILITY_FAILURE = 9,
  FLS_ERR_UNSUPPORTED_SET = 10,
  FLS_ERR_DEGENERATE_WINDOW = 11,
  FLS_ERR_PARSE = 12,
  FLS_ERR_IO = 13,
  FLS_ERR_NULL_POINTER = 14,
  FLS_ERR_BUFFER_TOO_SMALL = 15,
  FLS_ERR_INTERNAL = 99
} fls_status;

typedef struct fls_set fls_set;
typedef struct fls_function fls_function;
typedef struct fls_report fls_report;

FLS_API const char* fls_version(void);
FLS_API const char* fls_status_string(fls_status status);
FLS_API const char* fls_last_error(void);
FLS_API void fls_string_free(char* s);

/* ---- sets ---------------------------------------------------------------- */

FLS_API fls_status fls_set_from_json(const char* json_text, fls_set** out);
FLS_API fls_status fls_set_from_file(const char* path, fls_set** out);
FLS_API void fls_set_free(fls_set* set);
/* JSON object with the canonical set form, kind, span and a few counts. */
FLS_API fls_status fls_set_describe(const fls_set* set, int j, char** out_json);

FLS_API fls_status fls_covering_number(const fls_set* set, double lo, double hi, double delta,
                                       uint64_t* out);
/* Pass points = NULL to query the size. */
FLS_API fls_status fls_discretize(const fls_set* set, int j, double* points, size_t capacity,
                                  size_t* count);
FLS_API fls_status fls_phi_at_scale(const fls_set* set, double alpha, int j, double* out);
FLS_API fls_status fls_assouad_spectrum(const fls_set* set, double theta, int j, double* out);
FLS_API fls_status fls_dims(const fls_set* set, int j, double* dim_m, double* dim_qa);

/* ---- sampled functions --------------------------------------------------- */

FLS_API fls_status fls_function_create(double lo, double hi, size_t n, const double* values,
                                       fls_function** out);
FLS_API void fls_function_free(fls_function* f);
FLS_API fls_status fls_function_grid(const fls_function* f, double* lo, double* hi, size_t* n);
FLS_API fls_status fls_function_values(const fls_function* f, double* out, size_t capacity);
FLS_API fls_status fls_function_eval(const fls_function* f, double x, double* out);

FLS_API fls_status fls_analytic_spectrum(const fls_set* set, fls_function** out);
FLS_API fls_status fls_legendre_transform(const fls_function* f, double alpha_lo, double alpha_hi,
                                          size_t alpha_n, fls_function** out);
FLS_API fls_status fls_convex_hull(const fls_function* f, fls_function** out);
FLS_API fls_status fls_certify_convex(const fls_function* f, int* is_convex, double* max_violation,
                                      size_t* witness);
FLS_API fls_status fls_nu_from_spectrum(const fls_function* spectrum, fls_function** out);
/* Transform onto alpha in [0,4], step 1/64. */
FLS_API fls_status fls_nu_sharp_analytic(const fls_function* spectrum, fls_function** out);
FLS_API fls_status fls_tau_admissible(const fls_function* tau, int* passed, char** details_json);
FLS_API fls_status fls_spectrum_from_tau(const fls_function* tau, fls_function** spectrum,
                                         double* round_trip_error);
FLS_API fls_status fls_union_nu_sharp(const fls_function* const* parts, size_t n, fls_function** out);

/* ---- exponents ----------------------------------------------------------- */
/* nu_sharp arguments are sampled curves continued as alpha past their domain. */

FLS_API fls_status fls_s_p(int d, double p, double* out);
FLS_API fls_status fls_sigma_p(int d, double p, double* out);
FLS_API fls_status fls_ls_exponent(int d, double p, const fls_function* nu_sharp, double* out);
FLS_API fls_status fls_p_gamma(int d, double gamma, double* out);
FLS_API fls_status fls_s_E_q(int d, double q, const fls_function* nu_sharp, double* out);
FLS_API fls_status fls_s_E_pq(int d, double p, double q, const fls_function* nu_sharp, double* out);
FLS_API fls_status fls_q_gamma(int d, double gamma, double* out);
FLS_API fls_status fls_q_circ(int d, double gamma_circ, double* out);
FLS_API fls_status fls_lower_bound_rhs(int d, double p, double q, int j, double window_length,
                                       double count, double* out);

/* ---- Bessel and waves ---------------------------------------------------- */

FLS_API fls_status fls_bessel_j(double order, double u, double* out);
FLS_API fls_status fls_bessel_remainder(double order, double u, double* out);
/* u(r_k, t) for the default bump; re/im receive n values each. */
FLS_API fls_status fls_propagate(int d, int j, double t_I, double t, const double* r, size_t n,
                                 double* re, double* im);
FLS_API fls_status fls_g_norm(int d, int j, double t_I, double p, double* out);

/* ---- experiments --------------------------------------------------------- */
/* config_json is an experiment config; the named runners set its "kind". */

FLS_API fls_status fls_run(const char* config_json, fls_report** out);
FLS_API fls_status fls_run_duality(const char* config_json, fls_report** out);
FLS_API fls_status fls_run_sharpness(const char* config_json, fls_report** out);
FLS_API fls_status fls_run_exponent_table(const char* config_json, fls_report** out);
FLS_API fls_status fls_run_bookkeeping(const char* config_json, fls_report** out);
FLS_API fls_status fls_run_spectrum(const char* config_json, fls_report** out);
FLS_API fls_status fls_run_nu_sharp(const char* config_json, fls_report** out);
FLS_API fls_status fls_run_legendre(const char* config_json, fls_report** out);
FLS_API fls_status fls_run_wave_sim(const char* config_json, fls_report** out);

FLS_API const char* fls_report_csv(const fls_report* r);
FLS_API const char* fls_report_json(const fls_report* r);
FLS_API int fls_report_passed(const fls_report* r);
FLS_API void fls_report_free(fls_report* r);

#ifdef __cplusplus
}
#endif

#endif /* FLS_FLS_H */
