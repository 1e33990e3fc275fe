/*
 * maxtail C API.
 *
 * Opaque handles own C++ objects; every *_create / *_from_* has a matching
 * *_destroy. Functions return an mxt_status; on failure the thread-local
 * message from mxt_last_error() describes what went wrong. Strings returned
 * through char** out-parameters are heap allocated and must be released with
 * mxt_string_free().
 */
#ifndef MAXTAIL_MAXTAIL_H
#define MAXTAIL_MAXTAIL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MAXTAIL_BUILDING)
#    define MXT_API __declspec(dllexport)
#  else
#    define MXT_API __declspec(dllimport)
#  endif
#else
#  define MXT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mxt_status {
  MXT_OK = 0,
  MXT_ERR_CONFIG = 1,
  MXT_ERR_PARAMETER = 2,
  MXT_ERR_NUMERIC = 3,
  MXT_ERR_UNSUPPORTED = 4,
  MXT_ERR_NO_ADMISSIBLE_PATH = 5,
  MXT_ERR_INVALID_ARGUMENT = 6,
  MXT_ERR_INSUFFICIENT_TAIL = 7,
  MXT_ERR_NON_STRICT_GENERATOR = 8,
  MXT_ERR_INTERNAL = 99
} mxt_status;

MXT_API const char* mxt_version(void);
MXT_API const char* mxt_last_error(void);
MXT_API const char* mxt_status_name(mxt_status status);
MXT_API void mxt_string_free(char* s);

/* ---- configuration ----------------------------------------------------- */

typedef struct mxt_config mxt_config;

MXT_API mxt_status mxt_config_create(mxt_config** out);
MXT_API mxt_status mxt_config_parse(const char* text, mxt_config** out);
MXT_API mxt_status mxt_config_parse_inline(const char* text, mxt_config** out);
MXT_API void mxt_config_destroy(mxt_config* cfg);
MXT_API mxt_status mxt_config_set(mxt_config* cfg, const char* key,
                                  const char* value);
/* NULL when the key is absent. The pointer lives until the key is set again
 * or the config is destroyed. */
MXT_API const char* mxt_config_get(const mxt_config* cfg, const char* key);
MXT_API mxt_status mxt_config_get_double(const mxt_config* cfg, const char* key,
                                         double fallback, double* out);
MXT_API mxt_status mxt_config_get_int(const mxt_config* cfg, const char* key,
                                      int64_t fallback, int64_t* out);

/* ---- copulas ------------------------------------------------------------ */

typedef struct mxt_copula mxt_copula;

MXT_API mxt_status mxt_copula_from_config(const mxt_config* cfg,
                                          mxt_copula** out);
MXT_API mxt_status mxt_copula_survival(const mxt_copula* c, mxt_copula** out);
MXT_API void mxt_copula_destroy(mxt_copula* c);
/* Human-readable description, owned by the handle. */
MXT_API const char* mxt_copula_describe(const mxt_copula* c);

MXT_API mxt_status mxt_eval_cdf(const mxt_copula* c, double u, double v,
                                double* out);

typedef struct mxt_axiom_report {
  size_t grid_n;
  int grounded_ok;
  double max_grounded_deviation;
  int marginals_ok;
  double max_marginal_deviation;
  int two_increasing_ok;
  double min_rectangle_mass;
  double worst_rectangle[4]; /* u1, v1, u2, v2 */
} mxt_axiom_report;

MXT_API mxt_status mxt_check_axioms(const mxt_copula* c, size_t grid_n,
                                    double tol, mxt_axiom_report* out);
MXT_API mxt_status mxt_axiom_report_to_json(const mxt_axiom_report* rep,
                                            char** out);

typedef enum mxt_tau_method {
  MXT_TAU_CLOSED_FORM = 0,
  MXT_TAU_MONTE_CARLO = 1
} mxt_tau_method;

MXT_API mxt_status mxt_kendall_tau(const mxt_copula* c, mxt_tau_method method,
                                   size_t n, uint64_t seed, double* out);

/* ---- paths of maximal dependence --------------------------------------- */

typedef struct mxt_solver_opts {
  size_t scan_n;
  double xtol;
  double tie_tol;
  unsigned threads;
} mxt_solver_opts;

MXT_API mxt_solver_opts mxt_solver_opts_default(void);

/* u = 10^e, e from max_exp down to min_exp in 1/per_decade steps. Writes at
 * most `capacity` levels; *count receives the full grid length. */
MXT_API mxt_status mxt_u_grid(double max_exp, double min_exp,
                              unsigned per_decade, double* out,
                              size_t capacity, size_t* count);

MXT_API mxt_status mxt_pi_phi(const mxt_copula* c, double u, double x,
                              double* out);

typedef struct mxt_path mxt_path;

MXT_API mxt_status mxt_solve_path(const mxt_copula* c, const double* u_grid,
                                  size_t n, const mxt_solver_opts* opts,
                                  mxt_path** out);
MXT_API void mxt_path_destroy(mxt_path* p);
MXT_API size_t mxt_path_size(const mxt_path* p);
MXT_API mxt_status mxt_path_point(const mxt_path* p, size_t i, double* u,
                                  double* pi_star, size_t* n_maximizers,
                                  int* boundary_attained,
                                  int* all_paths_maximal);
MXT_API mxt_status mxt_path_maximizer(const mxt_path* p, size_t i, size_t k,
                                      double* x);
MXT_API mxt_status mxt_path_to_csv(const mxt_path* p, char** out);
MXT_API mxt_status mxt_path_to_json(const mxt_path* p, char** out);

/* *count = 0 when no closed form exists. */
MXT_API mxt_status mxt_closed_form_path(const mxt_copula* c, double u,
                                        double* out, size_t capacity,
                                        size_t* count);

MXT_API mxt_status mxt_zeta(double gamma0, double gamma1, double u, double x,
                            double* out);
MXT_API mxt_status mxt_zeta_root(double gamma0, double gamma1, double u,
                                 double xtol, double* out);

/* The copula must be archimedean. */
MXT_API mxt_status mxt_archimedean_diagonal_check(const mxt_copula* c,
                                                  double u, size_t grid_n,
                                                  int* increasing,
                                                  int* diagonal_is_maximal);

/* ---- indices ------------------------------------------------------------ */

typedef struct mxt_index_report mxt_index_report;

typedef enum mxt_path_kind {
  MXT_PATH_DIAGONAL = 0,
  MXT_PATH_MAXIMAL = 1
} mxt_path_kind;

typedef struct mxt_index_summary {
  mxt_path_kind path_kind;
  double kappa;
  double lambda;
  double lambda_raw;
  int lambda_degenerate;
  double chi;
  double residual;
  size_t n_slopes;
} mxt_index_summary;

MXT_API mxt_status mxt_classical_indices(const mxt_copula* c,
                                         const double* u_grid, size_t n,
                                         mxt_index_report** out);
MXT_API mxt_status mxt_star_indices(const mxt_path* p, mxt_index_report** out);
MXT_API void mxt_index_report_destroy(mxt_index_report* r);
MXT_API mxt_status mxt_index_report_summary(const mxt_index_report* r,
                                            mxt_index_summary* out);
MXT_API mxt_status mxt_index_report_slopes(const mxt_index_report* r,
                                           double* out, size_t capacity,
                                           size_t* count);
MXT_API mxt_status mxt_index_report_to_json(const mxt_index_report* r,
                                            char** out);
MXT_API mxt_status mxt_index_report_to_csv(const mxt_index_report* r,
                                           char** out);

/* *available = 0 when no closed form is known. */
MXT_API mxt_status mxt_closed_form_kappa_star(const mxt_copula* c,
                                              int* available, double* out);

typedef enum mxt_verdict {
  MXT_MORE_LTMD = 0,
  MXT_LESS_LTMD = 1,
  MXT_EQUALLY_LTMD = 2,
  MXT_MORE_WLTMD = 3,
  MXT_LESS_WLTMD = 4,
  MXT_EQUALLY_WLTMD = 5,
  MXT_INDETERMINATE = 6
} mxt_verdict;

typedef struct mxt_comparison {
  int has_lambda_pair;
  double lambda_pair;
  int has_chi_pair;
  double chi_pair;
  mxt_verdict verdict;
  double kappa_1;
  double kappa_2;
  double tolerance;
} mxt_comparison;

MXT_API const char* mxt_verdict_name(mxt_verdict v);
MXT_API mxt_status mxt_compare(const mxt_copula* c1, const mxt_copula* c2,
                               const double* u_grid, size_t n,
                               const mxt_solver_opts* opts,
                               mxt_comparison* out);
MXT_API mxt_status mxt_comparison_to_json(const mxt_comparison* rep,
                                          char** out);

/* ---- risk measures ------------------------------------------------------ */

typedef struct mxt_pareto {
  double mu;
  double sigma;
  double alpha;
} mxt_pareto;

typedef enum mxt_coupling {
  MXT_COUPLING_SURVIVAL = 0,
  MXT_COUPLING_DISTRIBUTION = 1
} mxt_coupling;

typedef struct mxt_risk_report {
  double q;
  double var_q;
  double cte_q;
  double mtvar_q;
  double stderr_cte;
  uint64_t n;
  uint64_t exceedances;
  uint64_t seed;
} mxt_risk_report;

MXT_API mxt_status mxt_pareto_quantile(const mxt_pareto* m, double p,
                                       double* out);
/* Writes n pairs into u_out / v_out (caller allocated). */
MXT_API mxt_status mxt_sample_pairs(const mxt_copula* c, uint64_t seed,
                                    size_t n, unsigned threads, double* u_out,
                                    double* v_out);
MXT_API mxt_status mxt_risk_measures(const mxt_copula* c, const mxt_pareto* m,
                                     double q, uint64_t n, uint64_t seed,
                                     mxt_coupling coupling, unsigned threads,
                                     mxt_risk_report* out);
MXT_API mxt_status mxt_risk_report_to_json(const mxt_risk_report* rep,
                                           char** out);
MXT_API mxt_status mxt_risk_report_to_csv(const mxt_risk_report* rep,
                                          char** out);

typedef enum mxt_format { MXT_FORMAT_CSV = 0, MXT_FORMAT_JSON = 1 } mxt_format;

/* Six rows, q in {0.99, 0.995} x b in {0.75, 0.5, 0.3529}. */
MXT_API mxt_status mxt_table1(uint64_t seed, uint64_t n, unsigned threads,
                              mxt_format format, char** out);

/* ---- plotting support --------------------------------------------------- */

MXT_API mxt_status mxt_contour_grid_csv(const mxt_copula* c, size_t resolution,
                                        char** out);
MXT_API mxt_status mxt_contour_path_csv(const mxt_copula* c, size_t levels,
                                        const mxt_solver_opts* opts,
                                        char** out);

#ifdef __cplusplus
}
#endif

#endif
