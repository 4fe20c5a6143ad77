/* yehfeynman: analytic Yeh-Feynman integrals, generalized Fourier-Yeh-Feynman
 * transforms and convolution products on two-parameter Wiener space.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function (NULL is accepted). Functions returning yf_status
 * leave a message for the calling thread in yf_last_error() on failure and
 * write their outputs only on success. Handles are immutable after creation
 * except yf_functional, which yf_functional_add_atom extends; immutable
 * handles may be shared between threads. */
#ifndef YEHFEYNMAN_H
#define YEHFEYNMAN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(YF_BUILDING_LIBRARY)
#    define YF_API __declspec(dllexport)
#  else
#    define YF_API __declspec(dllimport)
#  endif
#else
#  define YF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum yf_status {
  YF_OK = 0,
  YF_ERR_INVALID_ARGUMENT = 1,
  YF_ERR_SHAPE = 2,
  YF_ERR_INVALID_FUNCTION = 3,
  YF_ERR_DEGENERATE_PARAMETER = 4,
  YF_ERR_HYPOTHESIS_VIOLATED = 5,
  YF_ERR_PARSE = 6,
  YF_ERR_IO = 7,
  YF_ERR_NULL_POINTER = 8,
  YF_ERR_INTERNAL = 9
} yf_status;

typedef struct yf_grid yf_grid;
typedef struct yf_function yf_function;
typedef struct yf_functional yf_functional;
typedef struct yf_path yf_path;
typedef struct yf_run_result yf_run_result;

typedef struct yf_estimate {
  double mean_re;
  double mean_im;
  double se_re; /* sample stdev / sqrt(n), real part */
  double se_im;
  uint64_t n;
  uint64_t seed;
  uint64_t stream;
} yf_estimate;

YF_API const char* yf_version(void);
YF_API const char* yf_status_string(yf_status status);
/* Message of the last failure on this thread; "" if none. */
YF_API const char* yf_last_error(void);
/* Releases strings returned through char** outputs. */
YF_API void yf_string_free(char* s);

/* Grid on [0,S] x [0,T] with ns x nt cells; cell (i,j) has flat index j*ns+i. */
YF_API yf_status yf_grid_create(double S, double T, int ns, int nt, yf_grid** out);
YF_API void yf_grid_free(yf_grid* grid);
YF_API size_t yf_grid_cells(const yf_grid* grid);
YF_API double yf_grid_cell_area(const yf_grid* grid);

/* Real functions sampled at cell midpoints. */
YF_API yf_status yf_function_from_expression(const yf_grid* grid, const char* expr,
                                             yf_function** out);
YF_API yf_status yf_function_from_values(const yf_grid* grid, const double* values, size_t count,
                                         yf_function** out);
YF_API yf_status yf_preset_size(const char* name, size_t* count);
YF_API yf_status yf_preset_kernel(const yf_grid* grid, const char* name, size_t index,
                                  yf_function** out);
/* s(H): cellwise nonnegative root of the sum of squares. */
YF_API yf_status yf_function_combine(const yf_function* const* kernels, size_t count,
                                     yf_function** out);
YF_API yf_status yf_function_values(const yf_function* f, double* out, size_t count);
YF_API yf_status yf_l2_inner(const yf_function* u, const yf_function* v, double* out);
YF_API void yf_function_free(yf_function* f);

/* F(x) = sum_j c_j exp{i <u_j, x>}. A new functional is the zero measure. */
YF_API yf_status yf_functional_create(const yf_grid* grid, yf_functional** out);
YF_API yf_status yf_functional_add_atom(yf_functional* F, double weight_re, double weight_im,
                                        const yf_function* atom);
YF_API yf_status yf_functional_from_json(const yf_grid* grid, const char* json,
                                         yf_functional** out);
YF_API yf_status yf_functional_to_json(const yf_functional* F, char** out);
YF_API size_t yf_functional_size(const yf_functional* F);
YF_API yf_status yf_functional_weight(const yf_functional* F, size_t index, double* re,
                                      double* im);
YF_API void yf_functional_free(yf_functional* F);

/* T_{q,h} F: weights times exp{-(i/2q) ||u_j h||^2}. */
YF_API yf_status yf_gfyft(const yf_functional* F, const yf_function* h, double q,
                          yf_functional** out);
/* (F*G)_q^{(k1,k2)}: atoms (u+v)/sqrt2, weights c d exp{-(i/4q) ||u k1 - v k2||^2}. */
YF_API yf_status yf_gcp(const yf_functional* F, const yf_functional* G, const yf_function* k1,
                        const yf_function* k2, double q, yf_functional** out);
/* y -> F(y/sqrt2) G(y/sqrt2). */
YF_API yf_status yf_scaled_product(const yf_functional* F, const yf_functional* G,
                                   yf_functional** out);

/* Sheet `index` of the stream (seed, stream); index < 2^32. */
YF_API yf_status yf_sheet_sample(const yf_grid* grid, uint64_t seed, uint64_t stream,
                                 uint64_t index, yf_path** out);
/* Y_h(x; ., .): increments h * dx. */
YF_API yf_status yf_gaussian_path(const yf_function* h, const yf_path* x, yf_path** out);
YF_API yf_status yf_path_value_at(const yf_path* x, double s, double t, double* out);
YF_API yf_status yf_path_write_csv(const yf_path* x, const char* file);
YF_API yf_status yf_pwz_integral(const yf_function* v, const yf_path* x, double* out);
YF_API void yf_path_free(yf_path* x);

YF_API yf_status yf_evaluate(const yf_functional* F, const yf_path* y, double* re, double* im);
YF_API yf_status yf_feynman_closed_form(const yf_functional* F, const yf_function* h, double q,
                                        double* re, double* im);
YF_API yf_status yf_closed_form_real_lambda(const yf_functional* F, const yf_function* h,
                                            double lambda, double* re, double* im);
YF_API yf_status yf_alpha_n(const double* qs, size_t count, double* out);

/* Sample mean of F(lambda^{-1/2} Y_h(x)) over sheets 0..n-1 of (seed, stream).
 * The result does not depend on `workers`. */
YF_API yf_status yf_yeh_wiener_mc(const yf_functional* F, const yf_function* h, double lambda,
                                  uint64_t n, uint64_t seed, uint64_t stream, int workers,
                                  yf_estimate* out);
/* Running estimates at n = 2, 4, 8, ... and the final n, written as CSV
 * (n,mean_re,mean_im,se_re,se_im). The last row equals yf_yeh_wiener_mc. */
YF_API yf_status yf_convergence_csv(const yf_functional* F, const yf_function* h, double lambda,
                                    uint64_t n, uint64_t seed, uint64_t stream, int workers,
                                    const char* file);

/* Runs a CLI command (simulate, integrate, fubini, transform, convolution,
 * suite). config_path and overrides_json may be NULL. Returns YF_OK whenever a
 * result was produced; the command outcome is yf_run_exit_code (0 pass,
 * 1 check failure, 2 usage error, 3 runtime or hypothesis error). */
YF_API yf_status yf_run(const char* command, const char* config_path, const char* overrides_json,
                        yf_run_result** out);
YF_API int yf_run_exit_code(const yf_run_result* r);
YF_API const char* yf_run_report(const yf_run_result* r);
YF_API const char* yf_run_summary(const yf_run_result* r);
YF_API const char* yf_run_error(const yf_run_result* r);
YF_API void yf_run_result_free(yf_run_result* r);

/* Built-in configuration defaults as JSON. */
YF_API yf_status yf_default_config(char** out);

#ifdef __cplusplus
}
#endif

#endif /* YEHFEYNMAN_H */
