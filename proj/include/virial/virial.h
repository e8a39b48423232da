#ifndef VIRIAL_VIRIAL_H
#define VIRIAL_VIRIAL_H

/*
 * C interface to the virial ansatz library.
 *
 * Every fallible call returns a virial_status; on failure the message is
 * available from virial_last_error() on the calling thread until the next
 * call. Objects returned through out-pointers are owned by the caller and
 * released with the matching *_free function. Strings returned as char* are
 * released with virial_string_free.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define VIRIAL_API __declspec(dllexport)
#else
#define VIRIAL_API __attribute__((visibility("default")))
#endif

typedef enum virial_status {
  VIRIAL_OK = 0,
  VIRIAL_INVALID_ARGUMENT,
  VIRIAL_NOT_SYMMETRIC,
  VIRIAL_NOT_CONVEX,
  VIRIAL_DEGENERATE_POTENTIAL,
  VIRIAL_ALREADY_SHIFTED,
  VIRIAL_NO_CONVERGENCE,
  VIRIAL_NON_FINITE_INTEGRAND,
  VIRIAL_DOMAIN_ERROR,
  VIRIAL_ILL_CONDITIONED,
  VIRIAL_ORDER_OUT_OF_RANGE,
  VIRIAL_DIVISION_BY_ZERO,
  VIRIAL_DOMAIN_TOO_SMALL,
  VIRIAL_EIGENSOLVE_FAILURE,
  VIRIAL_PARSE_ERROR,
  VIRIAL_IO_ERROR,
  VIRIAL_INTERNAL_ERROR
} virial_status;

typedef enum virial_format { VIRIAL_FORMAT_CSV = 0, VIRIAL_FORMAT_JSON = 1 } virial_format;

typedef enum virial_basis_method {
  VIRIAL_BASIS_THREE_TERM = 0,
  VIRIAL_BASIS_GRAM_SCHMIDT = 1
} virial_basis_method;

typedef enum virial_weight_mode {
  VIRIAL_WEIGHT_CLOSED_FORM_MONOMIAL = 0,
  VIRIAL_WEIGHT_CLOSED_FORM_QUARTIC_ANHARMONIC = 1,
  VIRIAL_WEIGHT_NUMERIC = 2
} virial_weight_mode;

typedef struct virial_potential virial_potential;
typedef struct virial_weight virial_weight;
typedef struct virial_basis virial_basis;
typedef struct virial_solution virial_solution;
typedef struct virial_audit virial_audit;
typedef struct virial_table virial_table;

/* Numerical settings shared by every driver. Zero box/step mean "automatic". */
typedef struct virial_options {
  double solver_tol;
  double box_half_width;
  double grid_step;
  int numerov;
  int max_refinements;
  int richardson_depth;
  double quad_rel_tol;
  double quad_abs_tol;
  int quad_max_subdivisions;
  int basis_method; /* virial_basis_method */
  int workers;
  /* scaling-audit thresholds: relative energy, relative coefficient,
     absolute amplitude, eps spread in percentage points */
  double audit_energy_tol;
  double audit_coefficient_tol;
  double audit_amplitude_tol;
  double audit_eps_spread_tol;
} virial_options;

VIRIAL_API void virial_options_init(virial_options* options);

VIRIAL_API const char* virial_status_string(virial_status status);
VIRIAL_API const char* virial_last_error(void);
VIRIAL_API void virial_string_free(char* s);

/* ---- potentials ---- */

VIRIAL_API virial_status virial_potential_monomial(int kappa, double lambda, virial_potential** out);
VIRIAL_API virial_status virial_potential_quartic_anharmonic(double omega, double lambda,
                                                             virial_potential** out);
/* coeffs = {c_2, c_4, ..., c_2K} */
VIRIAL_API virial_status virial_potential_even_polynomial(const double* coeffs, size_t count,
                                                          virial_potential** out);
/* coeffs = {c_1, c_2, ..., c_m}; odd terms must vanish */
VIRIAL_API virial_status virial_potential_polynomial(const double* coeffs, size_t count,
                                                     virial_potential** out);
/* key=value text with kind, kappa, lambda, omega, coeffs, xi */
VIRIAL_API virial_status virial_potential_parse(const char* text, virial_potential** out);
VIRIAL_API virial_status virial_potential_translate(const virial_potential* p, double xi,
                                                    virial_potential** out);
VIRIAL_API virial_status virial_potential_evaluate(const virial_potential* p, double x, double* u,
                                                   double* du, double* d2u);
VIRIAL_API double virial_potential_xi(const virial_potential* p);
VIRIAL_API virial_status virial_potential_describe(const virial_potential* p, char** out);
VIRIAL_API void virial_potential_free(virial_potential* p);

/* ---- virial weight chi_v^2 = N^2 exp(-2 g) ---- */

VIRIAL_API virial_status virial_weight_build(const virial_potential* p, const virial_options* options,
                                             virial_weight** out);
VIRIAL_API virial_status virial_weight_eval(const virial_weight* w, double x, double* g, double* dg,
                                            double* sigma);
VIRIAL_API double virial_weight_norm(const virial_weight* w);
VIRIAL_API virial_weight_mode virial_weight_get_mode(const virial_weight* w);
/* <(x - xi)^order> under the normalised weight */
VIRIAL_API virial_status virial_weight_moment(const virial_weight* w, int order, double* out);
VIRIAL_API void virial_weight_free(virial_weight* w);

/* ---- orthonormal basis and ansatz states ---- */

VIRIAL_API virial_status virial_basis_build(const virial_weight* w, int n_max,
                                            virial_basis_method method, virial_basis** out);
VIRIAL_API int virial_basis_n_max(const virial_basis* b);
VIRIAL_API virial_status virial_basis_eval(const virial_basis* b, int n, double x, double* phi,
                                           double* dphi);
/* coefficient of (x - xi)^j in phi_n */
VIRIAL_API virial_status virial_basis_coefficient(const virial_basis* b, int n, int j, double* out);
VIRIAL_API virial_status virial_basis_coefficients_csv(const virial_basis* b, char** out);
VIRIAL_API virial_status virial_ansatz_eval(const virial_basis* b, int n, double x, double* chi,
                                            double* dchi);
VIRIAL_API virial_status virial_energy_virial(const virial_basis* b, int n, double* out);
VIRIAL_API virial_status virial_energy_rayleigh(const virial_basis* b, int n, double* out);
VIRIAL_API void virial_basis_free(virial_basis* b);

VIRIAL_API virial_status virial_relative_error(double e_ans, double e_ref, double* out);
VIRIAL_API virial_status virial_gamma_factor(double eps_percent, double* out);
/* count values from lo to hi, log-spaced; out must hold count doubles */
VIRIAL_API virial_status virial_log_grid(double lo, double hi, int count, double* out);

/* ---- reference solver ---- */

VIRIAL_API virial_status virial_solve(const virial_potential* p, int n_levels,
                                      const virial_options* options, virial_solution** out);
VIRIAL_API int virial_solution_levels(const virial_solution* s);
VIRIAL_API virial_status virial_solution_eigenvalue(const virial_solution* s, int n, double* out);
VIRIAL_API virial_status virial_solution_virial_residual(const virial_solution* s, int n,
                                                         double* out);
VIRIAL_API virial_status virial_solution_observed_order(const virial_solution* s, int n,
                                                        double* out);
VIRIAL_API virial_status virial_solution_nodes(const virial_solution* s, int n, int* out);
VIRIAL_API virial_status virial_solution_eigenfunctions_csv(const virial_solution* s, char** out);
VIRIAL_API void virial_solution_free(virial_solution* s);

/* ---- drivers producing tables ---- */

VIRIAL_API virial_status virial_spectrum(const virial_potential* p, int n_max,
                                         const virial_options* options, virial_table** out);
VIRIAL_API virial_status virial_error_table(const int* kappas, size_t count, int n_max,
                                            const virial_options* options, virial_table** matrix,
                                            virial_table** series);
VIRIAL_API virial_status virial_anharmonic_sweep(double omega, const double* lambdas, size_t count,
                                                 int n_max, const virial_options* options,
                                                 virial_table** out);
VIRIAL_API virial_status virial_wavefunctions(const virial_potential* p, int n_max, int points,
                                              const virial_options* options, virial_table** out);

VIRIAL_API virial_status virial_scaling_audit(int kappa, const double* lambdas, size_t count,
                                              int n_max, const virial_options* options,
                                              virial_audit** out);
VIRIAL_API int virial_audit_passed(const virial_audit* a);
VIRIAL_API virial_status virial_audit_table(const virial_audit* a, virial_table** out);
VIRIAL_API void virial_audit_free(virial_audit* a);

/* ---- tables ---- */

VIRIAL_API virial_status virial_table_serialize(const virial_table* t, virial_format format,
                                                char** out);
VIRIAL_API virial_status virial_table_parse(const char* text, virial_format format,
                                            virial_table** out);
VIRIAL_API size_t virial_table_rows(const virial_table* t);
VIRIAL_API size_t virial_table_columns(const virial_table* t);
VIRIAL_API const char* virial_table_column_name(const virial_table* t, size_t column);
VIRIAL_API virial_status virial_table_value(const virial_table* t, size_t row, size_t column,
                                            double* out);
VIRIAL_API void virial_table_free(virial_table* t);

#ifdef __cplusplus
}
#endif

#endif
