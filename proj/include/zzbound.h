/* zzbound — C API for the quantum Ziv-Zakai phase-estimation bound library.
 *
 * Conventions:
 *   - Every function returns a zzb_status (ZZB_OK == 0 on success, a
 *     negative code otherwise) and writes results through out-pointers.
 *   - On failure, zzb_last_error() returns a thread-local description of
 *     the most recent error in the calling thread.
 *   - Objects are opaque handles created by zzb_*_create functions and
 *     released exactly once with the matching zzb_*_destroy. Handles are
 *     immutable after creation (except zzb_rng, which advances as it is
 *     consumed) and safe to share across threads for read-only use.
 */
#ifndef ZZBOUND_H
#define ZZBOUND_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zzb_status {
  ZZB_OK = 0,
  ZZB_ERR_INVALID_ARGUMENT = -1,
  ZZB_ERR_DOMAIN = -2,
  ZZB_ERR_UNSUPPORTED = -3,
  ZZB_ERR_NUMERICAL = -4,
  ZZB_ERR_IO = -5,
  ZZB_ERR_INTERNAL = -6
} zzb_status;

/* Thread-local message for the most recent failure in this thread. */
const char* zzb_last_error(void);

/* Caps the worker count used by scans and Monte-Carlo sampling. The
 * ZZBOUND_THREADS environment variable imposes the same cap; the smaller
 * of the two wins. Pass 0 to remove the programmatic cap. */
void zzb_set_thread_limit(int n);

/* ------------------------------------------------------------------ */
/* Quadrature configuration (plain struct, no handle)                  */
/* ------------------------------------------------------------------ */

typedef struct zzb_quad_config {
  double abs_tol;                 /* default 1e-10 */
  double rel_tol;                 /* default 1e-8  */
  int max_subdivisions;           /* default 2000  */
  double improper_cutoff_sigmas;  /* default 12    */
} zzb_quad_config;

zzb_quad_config zzb_quad_config_default(void);

/* ------------------------------------------------------------------ */
/* Priors                                                              */
/* ------------------------------------------------------------------ */

typedef struct zzb_prior zzb_prior;

typedef enum zzb_prior_family {
  ZZB_PRIOR_UNIFORM = 0,
  ZZB_PRIOR_GAUSSIAN = 1,
  ZZB_PRIOR_BIMODAL_TWO_BLOCK = 2,
  ZZB_PRIOR_TRIANGULAR = 3,
  ZZB_PRIOR_TABULATED = 4
} zzb_prior_family;

zzb_status zzb_prior_create_uniform(double center, double width,
                                    zzb_prior** out);
zzb_status zzb_prior_create_gaussian(double mu, double sigma,
                                     zzb_prior** out);
zzb_status zzb_prior_create_bimodal(double width, zzb_prior** out);
zzb_status zzb_prior_create_triangular(double a, double b, double mode,
                                       zzb_prior** out);
zzb_status zzb_prior_create_tabulated(const double* x, const double* density,
                                      size_t n, zzb_prior** out);
/* Two-column CSV (x, density); header optional; strictly increasing x. */
zzb_status zzb_prior_create_from_csv(const char* path, zzb_prior** out);
void zzb_prior_destroy(zzb_prior* prior);

zzb_status zzb_prior_pdf_cdf(const zzb_prior* prior, double x, double* pdf,
                             double* cdf);
zzb_status zzb_prior_moments(const zzb_prior* prior, double* mean,
                             double* variance, double* stddev);
zzb_status zzb_prior_width(const zzb_prior* prior, double* width);
zzb_status zzb_prior_single_mode(const zzb_prior* prior, int* flag);
/* E(z) = \int min[p(x), p(x+z)] dx. */
zzb_status zzb_prior_overlap(const zzb_prior* prior, double z,
                             const zzb_quad_config* cfg, double* out);
/* Single-mode route 1 - [cdf(y0 + z) - cdf(y0)]. */
zzb_status zzb_prior_overlap_single_mode(const zzb_prior* prior, double z,
                                         double* out);
/* Unique y0 with p(y0) = p(y0 + z); single-mode, non-plateaued priors. */
zzb_status zzb_prior_crossing_point(const zzb_prior* prior, double z,
                                    double* out);

/* ------------------------------------------------------------------ */
/* Random streams and sampling                                         */
/* ------------------------------------------------------------------ */

typedef struct zzb_rng zzb_rng;

zzb_status zzb_rng_create(uint64_t seed, zzb_rng** out);
void zzb_rng_destroy(zzb_rng* rng);
zzb_status zzb_prior_sample(const zzb_prior* prior, zzb_rng* rng,
                            double* out);

/* ------------------------------------------------------------------ */
/* Speed limit and fidelity models                                     */
/* ------------------------------------------------------------------ */

/* alpha^-1(t) = cos^2(pi sqrt(t)/2); t must lie in [0, 1]. */
zzb_status zzb_alpha_inverse(double t, double* out);

typedef struct zzb_fidelity zzb_fidelity;

typedef enum zzb_fidelity_kind {
  ZZB_FIDELITY_QSL = 0,       /* scale = mean generator H above ground */
  ZZB_FIDELITY_BHATTA = 1,    /* scale = generator standard deviation  */
  ZZB_FIDELITY_COHERENT = 2,  /* scale = mean photon number N          */
  ZZB_FIDELITY_CONSTANT = 3   /* scale = the constant value F          */
} zzb_fidelity_kind;

zzb_status zzb_fidelity_create(zzb_fidelity_kind kind, double scale,
                               zzb_fidelity** out);
/* Piecewise-linear (z, F) table, strictly increasing z, clamped to [0,1];
 * an anchor point (0, 1) is prepended when the first z is positive. */
zzb_status zzb_fidelity_create_tabulated(const double* z, const double* f,
                                         size_t n, zzb_fidelity** out);
zzb_status zzb_fidelity_create_from_csv(const char* path,
                                        zzb_fidelity** out);
void zzb_fidelity_destroy(zzb_fidelity* fidelity);
zzb_status zzb_fidelity_eval(const zzb_fidelity* fidelity, double z,
                             double* out);

/* ------------------------------------------------------------------ */
/* Bounds                                                              */
/* ------------------------------------------------------------------ */

typedef enum zzb_bound_kind {
  ZZB_BOUND_DIRECT = 0,
  ZZB_BOUND_MAIN = 1,
  ZZB_BOUND_APPENDIX = 2,
  ZZB_BOUND_VARIANCE = 3,
  ZZB_BOUND_CLOSED_FORM = 4,
  ZZB_BOUND_LPI_BENCHMARK = 5,
  ZZB_BOUND_HPI_LIMIT = 6
} zzb_bound_kind;

typedef struct zzb_bound_result {
  double value;          /* lower bound on the weighted RMS error */
  double err_estimate;   /* propagated quadrature error           */
  double t0;             /* W/x0 (or W/delta0); NaN if n/a        */
  double x0_or_delta0;   /* length scale used; NaN if n/a         */
  int kind;              /* zzb_bound_kind                        */
} zzb_bound_result;

zzb_status zzb_bound_direct(const zzb_prior* prior,
                            const zzb_fidelity* fidelity,
                            const zzb_quad_config* cfg,
                            zzb_bound_result* out);
zzb_status zzb_bound_main(const zzb_prior* prior, double h_mean,
                          const zzb_quad_config* cfg, zzb_bound_result* out);
zzb_status zzb_bound_appendix(const zzb_prior* prior, double h_mean,
                              const zzb_quad_config* cfg,
                              zzb_bound_result* out);
zzb_status zzb_bound_variance(const zzb_prior* prior, double h_std,
                              const zzb_quad_config* cfg,
                              zzb_bound_result* out);
zzb_status zzb_bound_uniform_closed_form(double t0, double h_mean,
                                         const zzb_quad_config* cfg,
                                         zzb_bound_result* out);
zzb_status zzb_lpi_benchmark(double h_mean, const zzb_quad_config* cfg,
                             zzb_bound_result* out);
zzb_status zzb_hpi_limit_single_mode(const zzb_prior* prior,
                                     const zzb_quad_config* cfg,
                                     double* out);

/* Constants: A (computed with the implemented speed-limit form) and
 * A' = 1/2 - 4/pi^2 (analytic, plus its quadrature cross-check). */
zzb_status zzb_constant_A(const zzb_quad_config* cfg, double* out);
zzb_status zzb_constant_A_prime(double* out);
zzb_status zzb_constant_A_prime_quadrature(const zzb_quad_config* cfg,
                                           double* out);

/* ------------------------------------------------------------------ */
/* Analysis: scans, gain search, RMSE baselines, figure data           */
/* ------------------------------------------------------------------ */

typedef struct zzb_scan zzb_scan;

typedef enum zzb_fix_mode {
  ZZB_FIX_X0 = 0, /* fix the length scale, W = t0 * x0   */
  ZZB_FIX_W = 1   /* fix the width, x0 = W / t0          */
} zzb_fix_mode;

zzb_status zzb_scan_t0(zzb_prior_family family, zzb_bound_kind kind,
                       const double* t0_grid, size_t n, zzb_fix_mode fix,
                       double fixed_value, const zzb_quad_config* cfg,
                       zzb_scan** out);
void zzb_scan_destroy(zzb_scan* scan);
zzb_status zzb_scan_row_count(const zzb_scan* scan, size_t* out);
zzb_status zzb_scan_row(const zzb_scan* scan, size_t index, double* t0,
                        double* value, double* err, double* dx, double* gain);
/* Asymptote coefficients: bound -> lpi_coeff * x0 (t0 -> inf) and
 * bound -> hpi_coeff * x0 * t0 (t0 -> 0). */
zzb_status zzb_scan_asymptotes(const zzb_scan* scan, double* lpi_coeff,
                               double* hpi_coeff);
zzb_status zzb_scan_write_csv(const zzb_scan* scan, const char* path);
zzb_status zzb_scan_write_json(const zzb_scan* scan, const char* path);

/* Maximum certifiable gain min(DX, LPI)/bound over [lo, hi] within (0, 10].
 * flat_flag is set when the objective is numerically flat (t0_star is then
 * the interval midpoint). */
zzb_status zzb_max_gain(zzb_prior_family family, zzb_bound_kind kind,
                        double lo, double hi, const zzb_quad_config* cfg,
                        double* gain_max, double* t0_star, int* flat_flag);

typedef enum zzb_estimator_kind {
  ZZB_ESTIMATOR_CONSTANT_MEAN = 0,
  ZZB_ESTIMATOR_RANDOM_GUESS = 1
} zzb_estimator_kind;

/* Monte-Carlo weighted RMSE; deterministic given the seed; the result is
 * independent of the worker count. */
zzb_status zzb_weighted_rmse(const zzb_prior* prior,
                             zzb_estimator_kind estimator,
                             uint64_t n_samples, uint64_t seed, double* rmse,
                             double* standard_error);
zzb_status zzb_weighted_rmse_custom(const zzb_prior* prior,
                                    double (*estimator)(double x, void* ctx),
                                    void* ctx, uint64_t n_samples,
                                    uint64_t seed, double* rmse,
                                    double* standard_error);

typedef enum zzb_figure_id {
  ZZB_FIG1 = 0,
  ZZB_FIG2A = 1,
  ZZB_FIG2B = 2
} zzb_figure_id;

/* Writes the figure-reproduction CSV (x0 = 1, 200-point log grid over
 * [1e-2, 1e2]); output is bit-identical across reruns for a fixed config. */
zzb_status zzb_figure_write_csv(zzb_figure_id figure,
                                const zzb_quad_config* cfg, const char* path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ZZBOUND_H */
