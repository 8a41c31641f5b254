#ifndef DYADIC_DYADIC_H
#define DYADIC_DYADIC_H

/* C interface to the dyadic analysis library. Objects are opaque
 * handles created and destroyed through these functions; every fallible
 * call returns a status code and leaves a thread-local message
 * retrievable with dyadic_last_error(). */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dyadic_status {
    DYADIC_OK = 0,
    DYADIC_ERR_INVALID_ARGUMENT = 1,
    DYADIC_ERR_UNSUPPORTED_ORDER = 2,
    DYADIC_ERR_CONSTRUCTION = 3,
    DYADIC_ERR_RESOLUTION = 4,
    DYADIC_ERR_ALIGNMENT = 5,
    DYADIC_ERR_RANGE = 6,
    DYADIC_ERR_INDEX = 7,
    DYADIC_ERR_INSUFFICIENT_DATA = 8,
    DYADIC_ERR_CONFIG = 9,
    DYADIC_ERR_IO = 10,
    DYADIC_ERR_INTERNAL = 11
} dyadic_status;

typedef struct dyadic_wavelet dyadic_wavelet;
typedef struct dyadic_grid_function dyadic_grid_function;
typedef struct dyadic_coefficients dyadic_coefficients;
typedef struct dyadic_config dyadic_config;

/* Message for the most recent failing call on this thread; empty string
 * after a success. The pointer stays valid until the next call. */
const char* dyadic_last_error(void);

/* Frees strings returned through char** output parameters. */
void dyadic_string_destroy(char* s);

/* ---- wavelet systems ---- */

/* Compactly supported orthonormal wavelet of the given order (1..10),
 * sampled on the lattice of spacing 2^-depth. */
dyadic_status dyadic_wavelet_create(int order, int depth,
                                    dyadic_wavelet** out);
void dyadic_wavelet_destroy(dyadic_wavelet* w);
dyadic_status dyadic_wavelet_order(const dyadic_wavelet* w, int* out);
dyadic_status dyadic_wavelet_depth(const dyadic_wavelet* w, int* out);
/* Holder smoothness exponent of the scaling function. */
dyadic_status dyadic_wavelet_smoothness(const dyadic_wavelet* w, double* out);
/* Filter identity residuals: normalization, shift orthogonality,
 * quadrature mirror relation, discrete vanishing moments. pass is 1 when
 * all residuals sit below the library tolerances. */
dyadic_status dyadic_wavelet_verify(const dyadic_wavelet* w,
                                    double* sum_residual,
                                    double* orth_residual,
                                    double* qmf_residual,
                                    double* moment_residual, int* pass);

/* ---- piecewise constant grid functions ---- */

/* Zero function on [x0, x1) with cells of width 2^-j. Endpoints must be
 * 2^-j lattice points. */
dyadic_status dyadic_grid_function_create(int j, double x0, double x1,
                                          dyadic_grid_function** out);
void dyadic_grid_function_destroy(dyadic_grid_function* f);
dyadic_status dyadic_grid_function_cells(const dyadic_grid_function* f,
                                         int64_t* out);
dyadic_status dyadic_grid_function_set_values(dyadic_grid_function* f,
                                              const double* values,
                                              int64_t count);
dyadic_status dyadic_grid_function_get_values(const dyadic_grid_function* f,
                                              double* values, int64_t count);

/* Mean over each lattice interval of length 2^-n. */
dyadic_status dyadic_average(const dyadic_grid_function* f, int n,
                             dyadic_grid_function** out);
/* Difference between averages at scales 2^-(n+1) and 2^-n. */
dyadic_status dyadic_difference(const dyadic_grid_function* f, int n,
                                dyadic_grid_function** out);
/* Haar function on [mu 2^-n, (mu+1) 2^-n), +1 left half, -1 right. */
dyadic_status dyadic_haar(int j, double x0, double x1, int n, int64_t mu,
                          dyadic_grid_function** out);
/* Scales the scale-2^-n Haar component over interval mu by
 * weights[mu - offset]. The weights must cover every interval of the
 * domain at that scale. */
dyadic_status dyadic_haar_multiply(const dyadic_grid_function* f, int n,
                                   int64_t offset, const double* weights,
                                   int64_t count, dyadic_grid_function** out);
/* Sum of weights[k] times the scale-k+n0 martingale difference of f. */
dyadic_status dyadic_levelwise_multiply(const dyadic_grid_function* f,
                                        const double* weights, int count,
                                        int n0, dyadic_grid_function** out);
/* Normalized L^p norm; p may be HUGE_VAL for the sup. */
dyadic_status dyadic_lp_norm(const dyadic_grid_function* f, double p,
                             double* out);

/* ---- coefficient fields ---- */

dyadic_status dyadic_coefficients_create(int j_max,
                                         dyadic_coefficients** out);
void dyadic_coefficients_destroy(dyadic_coefficients* c);
dyadic_status dyadic_coefficients_set(dyadic_coefficients* c, int level,
                                      int64_t nu, double value);
dyadic_status dyadic_coefficients_get(const dyadic_coefficients* c, int level,
                                      int64_t nu, double* out);
dyadic_status dyadic_coefficients_count(const dyadic_coefficients* c,
                                        int64_t* out);
/* Copy with every level above n_max cleared. */
dyadic_status dyadic_coefficients_truncate(const dyadic_coefficients* c,
                                           int n_max,
                                           dyadic_coefficients** out);

/* Wavelet coefficients 2^j <f, psi_{j,nu}> for levels 0..j_max. The
 * sampling depth must exceed the analysis scale by min_gap levels. */
dyadic_status dyadic_analyze(const dyadic_grid_function* f,
                             const dyadic_wavelet* w, int j_max, int min_gap,
                             dyadic_coefficients** out);
/* Expansion of a coefficient field on a fresh grid over [x0, x1). */
dyadic_status dyadic_synthesize(const dyadic_coefficients* c,
                                const dyadic_wavelet* w, int j, double x0,
                                double x1, dyadic_grid_function** out);

/* ---- quasi-norms and parameter regions ---- */

/* Level-major form: l^q over levels of the weighted l^p level masses. */
dyadic_status dyadic_besov_norm(const dyadic_coefficients* c, double p,
                                double q, double s, double* out);
/* Space-major form: L^p integral of the pointwise l^q aggregate. */
dyadic_status dyadic_tl_norm(const dyadic_coefficients* c, double p, double q,
                             double s, double* out);
dyadic_status dyadic_in_theorem_region(double p, double q, double s,
                                       int* out);
dyadic_status dyadic_in_unconditional_region(double p, double q, double s,
                                             int* out);
dyadic_status dyadic_boundary_distance(double p, double q, double s,
                                       double* out);
dyadic_status dyadic_wavelet_admissible(const dyadic_wavelet* w, double p,
                                        double q, double s, int* out);

/* ---- experiment configuration ---- */

dyadic_status dyadic_config_default(dyadic_config** out);
/* Built-in profiles: "default", "matched" (multilevel instances pinned
 * to the first six indices), "reduced" (smaller grid and corpus). */
dyadic_status dyadic_config_profile(const char* name, dyadic_config** out);
dyadic_status dyadic_config_load(const char* path, dyadic_config** out);
dyadic_status dyadic_config_save(const dyadic_config* cfg, const char* path);
void dyadic_config_destroy(dyadic_config* cfg);
dyadic_status dyadic_config_set_seed(dyadic_config* cfg, uint64_t seed);
dyadic_status dyadic_config_get_seed(const dyadic_config* cfg, uint64_t* out);
/* Pretty-printed JSON of the configuration. */
dyadic_status dyadic_config_dump(const dyadic_config* cfg, char** out);

/* ---- experiment harness ---- */

/* Writes every corpus function (values plus coefficients plus manifest)
 * into dir and reports how many entries were written. */
dyadic_status dyadic_corpus_write(const dyadic_config* cfg, const char* dir,
                                  int* count);
/* Runs one ratio experiment (kind: en, pn, enpn, tn, mult) and writes
 * <kind>.csv and <kind>_summary.json into dir. structural_pass reports
 * the sweep's internal consistency checks. */
dyadic_status dyadic_run_sweep(const dyadic_config* cfg, const char* kind,
                               int jobs, const char* dir,
                               int* structural_pass);
/* Per-group growth table for one ratio CSV. */
dyadic_status dyadic_fit_csv(const char* csv_path, char** text);
/* Aggregates the ratio files in dir. Writes the JSON document to
 * json_path when non-null, returns the text summary when text is
 * non-null, and sets pass to the overall verdict. */
dyadic_status dyadic_report(const char* dir, const char* json_path,
                            char** text, int* pass);

#ifdef __cplusplus
}
#endif

#endif
