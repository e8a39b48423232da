#include "virial/virial.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <span>
#include <string>
#include <vector>

#include "config.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "parallel.hpp"
#include "spectra.hpp"
#include "table.hpp"

struct virial_potential {
  virial::Potential value;
};
struct virial_weight {
  virial::VirialWeight value;
};
struct virial_basis {
  std::shared_ptr<const virial::OrthoBasis> value;
};
struct virial_solution {
  virial::RefineResult value;
};
struct virial_audit {
  virial::ScalingAuditReport value;
};
struct virial_table {
  virial::Table value;
};

namespace {

thread_local std::string last_error;

virial_status to_status(virial::ErrorCode code) {
  using virial::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return VIRIAL_INVALID_ARGUMENT;
    case ErrorCode::NotSymmetric: return VIRIAL_NOT_SYMMETRIC;
    case ErrorCode::NotConvex: return VIRIAL_NOT_CONVEX;
    case ErrorCode::DegeneratePotential: return VIRIAL_DEGENERATE_POTENTIAL;
    case ErrorCode::AlreadyShifted: return VIRIAL_ALREADY_SHIFTED;
    case ErrorCode::NoConvergence: return VIRIAL_NO_CONVERGENCE;
    case ErrorCode::NonFiniteIntegrand: return VIRIAL_NON_FINITE_INTEGRAND;
    case ErrorCode::DomainError: return VIRIAL_DOMAIN_ERROR;
    case ErrorCode::IllConditioned: return VIRIAL_ILL_CONDITIONED;
    case ErrorCode::OrderOutOfRange: return VIRIAL_ORDER_OUT_OF_RANGE;
    case ErrorCode::DivisionByZero: return VIRIAL_DIVISION_BY_ZERO;
    case ErrorCode::DomainTooSmall: return VIRIAL_DOMAIN_TOO_SMALL;
    case ErrorCode::EigensolveFailure: return VIRIAL_EIGENSOLVE_FAILURE;
    case ErrorCode::ParseError: return VIRIAL_PARSE_ERROR;
    case ErrorCode::IoError: return VIRIAL_IO_ERROR;
  }
  return VIRIAL_INTERNAL_ERROR;
}

virial_status fail(virial_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body() and turns any exception into a status plus thread-local message.
template <class F>
virial_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return VIRIAL_OK;
  } catch (const virial::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(VIRIAL_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(VIRIAL_INTERNAL_ERROR, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw virial::Error(virial::ErrorCode::InvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

virial_options defaults_or(const virial_options* options) {
  virial_options o;
  virial_options_init(&o);
  return options ? *options : o;
}

virial::SolverOptions solver_of(const virial_options& o) {
  virial::SolverOptions s;
  s.tol = o.solver_tol;
  s.half_width = o.box_half_width;
  s.step = o.grid_step;
  s.numerov = o.numerov != 0;
  s.max_refinements = o.max_refinements;
  s.richardson_depth = o.richardson_depth;
  return s;
}

virial::QuadratureSettings quadrature_of(const virial_options& o) {
  virial::QuadratureSettings q;
  q.rel_tol = o.quad_rel_tol;
  q.abs_tol = o.quad_abs_tol;
  q.max_subdivisions = o.quad_max_subdivisions;
  q.check();
  return q;
}

virial::ScalingThresholds thresholds_of(const virial_options& o) {
  virial::ScalingThresholds t;
  t.energy = o.audit_energy_tol;
  t.coefficient = o.audit_coefficient_tol;
  t.amplitude = o.audit_amplitude_tol;
  t.eps_spread = o.audit_eps_spread_tol;
  require(t.energy >= 0 && t.coefficient >= 0 && t.amplitude >= 0 && t.eps_spread >= 0,
          "audit thresholds must be >= 0");
  return t;
}

virial::BasisMethod method_of(int m) {
  require(m == VIRIAL_BASIS_THREE_TERM || m == VIRIAL_BASIS_GRAM_SCHMIDT, "unknown basis method");
  return m == VIRIAL_BASIS_GRAM_SCHMIDT ? virial::BasisMethod::GramSchmidt
                                        : virial::BasisMethod::ThreeTerm;
}

virial::TableFormat format_of(virial_format f) {
  require(f == VIRIAL_FORMAT_CSV || f == VIRIAL_FORMAT_JSON, "unknown table format");
  return f == VIRIAL_FORMAT_CSV ? virial::TableFormat::Csv : virial::TableFormat::Json;
}

virial_status make_potential(const virial::PotentialSpec& spec, virial_potential** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = new virial_potential{virial::validate(spec)};
  });
}

}  // namespace

extern "C" {

void virial_options_init(virial_options* options) {
  if (!options) return;
  const virial::SolverOptions s;
  const virial::QuadratureSettings q;
  options->solver_tol = s.tol;
  options->box_half_width = s.half_width;
  options->grid_step = s.step;
  options->numerov = s.numerov ? 1 : 0;
  options->max_refinements = s.max_refinements;
  options->richardson_depth = s.richardson_depth;
  options->quad_rel_tol = q.rel_tol;
  options->quad_abs_tol = q.abs_tol;
  options->quad_max_subdivisions = q.max_subdivisions;
  options->basis_method = VIRIAL_BASIS_THREE_TERM;
  options->workers = 1;
  const virial::ScalingThresholds th;
  options->audit_energy_tol = th.energy;
  options->audit_coefficient_tol = th.coefficient;
  options->audit_amplitude_tol = th.amplitude;
  options->audit_eps_spread_tol = th.eps_spread;
}

const char* virial_status_string(virial_status status) {
  switch (status) {
    case VIRIAL_OK: return "ok";
    case VIRIAL_INVALID_ARGUMENT: return "invalid argument";
    case VIRIAL_NOT_SYMMETRIC: return "potential not symmetric";
    case VIRIAL_NOT_CONVEX: return "potential not convex";
    case VIRIAL_DEGENERATE_POTENTIAL: return "degenerate potential";
    case VIRIAL_ALREADY_SHIFTED: return "potential already shifted";
    case VIRIAL_NO_CONVERGENCE: return "no convergence";
    case VIRIAL_NON_FINITE_INTEGRAND: return "non-finite integrand";
    case VIRIAL_DOMAIN_ERROR: return "domain error";
    case VIRIAL_ILL_CONDITIONED: return "ill-conditioned";
    case VIRIAL_ORDER_OUT_OF_RANGE: return "order out of range";
    case VIRIAL_DIVISION_BY_ZERO: return "division by zero";
    case VIRIAL_DOMAIN_TOO_SMALL: return "domain too small";
    case VIRIAL_EIGENSOLVE_FAILURE: return "eigensolve failure";
    case VIRIAL_PARSE_ERROR: return "parse error";
    case VIRIAL_IO_ERROR: return "i/o error";
    case VIRIAL_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

const char* virial_last_error(void) { return last_error.c_str(); }

void virial_string_free(char* s) { std::free(s); }

/* ---- potentials ---- */

virial_status virial_potential_monomial(int kappa, double lambda, virial_potential** out) {
  return make_potential(virial::PotentialSpec::monomial(kappa, lambda), out);
}

virial_status virial_potential_quartic_anharmonic(double omega, double lambda,
                                                  virial_potential** out) {
  return make_potential(virial::PotentialSpec::quartic_anharmonic(omega, lambda), out);
}

virial_status virial_potential_even_polynomial(const double* coeffs, size_t count,
                                               virial_potential** out) {
  if (count > 0 && !coeffs) return fail(VIRIAL_INVALID_ARGUMENT, "null coefficient array");
  return make_potential(
      virial::PotentialSpec::even_polynomial(std::vector<double>(coeffs, coeffs + count)), out);
}

virial_status virial_potential_polynomial(const double* coeffs, size_t count,
                                          virial_potential** out) {
  if (count > 0 && !coeffs) return fail(VIRIAL_INVALID_ARGUMENT, "null coefficient array");
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    const auto spec = virial::PotentialSpec::from_polynomial(std::span<const double>(coeffs, count));
    *out = new virial_potential{virial::validate(spec)};
  });
}

virial_status virial_potential_parse(const char* text, virial_potential** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new virial_potential{virial::potential_from_keys(virial::parse_key_values(text))};
  });
}

virial_status virial_potential_translate(const virial_potential* p, double xi,
                                         virial_potential** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    *out = new virial_potential{virial::translate(p->value, xi)};
  });
}

virial_status virial_potential_evaluate(const virial_potential* p, double x, double* u, double* du,
                                        double* d2u) {
  return guarded([&] {
    require(p != nullptr, "null potential");
    const auto d = p->value.evaluate(x);
    if (u) *u = d.u;
    if (du) *du = d.du;
    if (d2u) *d2u = d.d2u;
  });
}

double virial_potential_xi(const virial_potential* p) { return p ? p->value.xi() : 0.0; }

virial_status virial_potential_describe(const virial_potential* p, char** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    *out = dup_string(p->value.describe());
  });
}

void virial_potential_free(virial_potential* p) { delete p; }

/* ---- weight ---- */

virial_status virial_weight_build(const virial_potential* p, const virial_options* options,
                                  virial_weight** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    const auto o = defaults_or(options);
    *out = new virial_weight{virial::make_weight(p->value, quadrature_of(o))};
  });
}

virial_status virial_weight_eval(const virial_weight* w, double x, double* g, double* dg,
                                 double* sigma) {
  return guarded([&] {
    require(w != nullptr, "null weight");
    if (g) *g = w->value.g(x);
    if (dg) *dg = w->value.dg(x);
    if (sigma) *sigma = w->value.sigma(x);
  });
}

double virial_weight_norm(const virial_weight* w) { return w ? w->value.norm() : 0.0; }

virial_weight_mode virial_weight_get_mode(const virial_weight* w) {
  if (!w) return VIRIAL_WEIGHT_NUMERIC;
  switch (w->value.mode()) {
    case virial::WeightMode::ClosedFormMonomial: return VIRIAL_WEIGHT_CLOSED_FORM_MONOMIAL;
    case virial::WeightMode::ClosedFormQuarticAnharmonic:
      return VIRIAL_WEIGHT_CLOSED_FORM_QUARTIC_ANHARMONIC;
    case virial::WeightMode::NumericG: return VIRIAL_WEIGHT_NUMERIC;
  }
  return VIRIAL_WEIGHT_NUMERIC;
}

virial_status virial_weight_moment(const virial_weight* w, int order, double* out) {
  return guarded([&] {
    require(w != nullptr && out != nullptr, "null argument");
    *out = w->value.moment(order);
  });
}

void virial_weight_free(virial_weight* w) { delete w; }

/* ---- basis ---- */

virial_status virial_basis_build(const virial_weight* w, int n_max, virial_basis_method method,
                                 virial_basis** out) {
  return guarded([&] {
    require(w != nullptr && out != nullptr, "null argument");
    auto basis = virial::build_basis(w->value, n_max, method_of(method));
    *out = new virial_basis{std::make_shared<const virial::OrthoBasis>(std::move(basis))};
  });
}

int virial_basis_n_max(const virial_basis* b) { return b ? b->value->n_max() : -1; }

virial_status virial_basis_eval(const virial_basis* b, int n, double x, double* phi, double* dphi) {
  return guarded([&] {
    require(b != nullptr, "null basis");
    const auto v = b->value->eval(n, x);
    if (phi) *phi = v.value;
    if (dphi) *dphi = v.deriv;
  });
}

virial_status virial_basis_coefficient(const virial_basis* b, int n, int j, double* out) {
  return guarded([&] {
    require(b != nullptr && out != nullptr, "null argument");
    *out = b->value->coeff(n, j);
  });
}

virial_status virial_basis_coefficients_csv(const virial_basis* b, char** out) {
  return guarded([&] {
    require(b != nullptr && out != nullptr, "null argument");
    *out = dup_string(b->value->coefficients_csv());
  });
}

virial_status virial_ansatz_eval(const virial_basis* b, int n, double x, double* chi,
                                 double* dchi) {
  return guarded([&] {
    require(b != nullptr, "null basis");
    const virial::Ansatz state(b->value, n);
    if (chi) *chi = state.value(x);
    if (dchi) *dchi = state.deriv(x);
  });
}

virial_status virial_energy_virial(const virial_basis* b, int n, double* out) {
  return guarded([&] {
    require(b != nullptr && out != nullptr, "null argument");
    *out = virial::energy_virial(virial::Ansatz(b->value, n));
  });
}

virial_status virial_energy_rayleigh(const virial_basis* b, int n, double* out) {
  return guarded([&] {
    require(b != nullptr && out != nullptr, "null argument");
    *out = virial::energy_rayleigh(virial::Ansatz(b->value, n));
  });
}

void virial_basis_free(virial_basis* b) { delete b; }

virial_status virial_relative_error(double e_ans, double e_ref, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = virial::relative_error(e_ans, e_ref);
  });
}

virial_status virial_gamma_factor(double eps_percent, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = virial::gamma_factor(eps_percent);
  });
}

virial_status virial_log_grid(double lo, double hi, int count, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    const auto grid = virial::log_grid(lo, hi, count);
    std::copy(grid.begin(), grid.end(), out);
  });
}

/* ---- reference solver ---- */

virial_status virial_solve(const virial_potential* p, int n_levels, const virial_options* options,
                           virial_solution** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    const auto o = defaults_or(options);
    const auto s = solver_of(o);
    *out = new virial_solution{virial::refine(p->value, n_levels, s.tol, s)};
  });
}

int virial_solution_levels(const virial_solution* s) {
  return s ? static_cast<int>(s->value.eigenvalues.size()) : 0;
}

virial_status virial_solution_eigenvalue(const virial_solution* s, int n, double* out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    require(n >= 0 && n < virial_solution_levels(s), "level out of range");
    *out = s->value.eigenvalues[static_cast<std::size_t>(n)];
  });
}

virial_status virial_solution_virial_residual(const virial_solution* s, int n, double* out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    require(n >= 0 && n < virial_solution_levels(s), "level out of range");
    *out = s->value.virial_residual[static_cast<std::size_t>(n)];
  });
}

virial_status virial_solution_observed_order(const virial_solution* s, int n, double* out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    require(n >= 0 && n < virial_solution_levels(s), "level out of range");
    *out = s->value.observed_order[static_cast<std::size_t>(n)];
  });
}

virial_status virial_solution_nodes(const virial_solution* s, int n, int* out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    require(n >= 0 && n < virial_solution_levels(s), "level out of range");
    *out = s->value.finest.sign_changes(n);
  });
}

virial_status virial_solution_eigenfunctions_csv(const virial_solution* s, char** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = dup_string(s->value.finest.eigenfunctions_csv());
  });
}

void virial_solution_free(virial_solution* s) { delete s; }

/* ---- drivers ---- */

virial_status virial_spectrum(const virial_potential* p, int n_max, const virial_options* options,
                              virial_table** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    const auto o = defaults_or(options);
    const auto report = virial::spectrum_report(p->value, n_max, solver_of(o), quadrature_of(o),
                                                method_of(o.basis_method), o.workers);
    *out = new virial_table{virial::to_table(report)};
  });
}

virial_status virial_error_table(const int* kappas, size_t count, int n_max,
                                 const virial_options* options, virial_table** matrix,
                                 virial_table** series) {
  return guarded([&] {
    require(kappas != nullptr && matrix != nullptr, "null argument");
    const auto o = defaults_or(options);
    auto result = virial::error_table(std::span<const int>(kappas, count), n_max, solver_of(o),
                                      quadrature_of(o), o.workers);
    auto m = std::make_unique<virial_table>(virial_table{std::move(result.matrix)});
    if (series) *series = new virial_table{std::move(result.series)};
    *matrix = m.release();
  });
}

virial_status virial_anharmonic_sweep(double omega, const double* lambdas, size_t count, int n_max,
                                      const virial_options* options, virial_table** out) {
  return guarded([&] {
    require(lambdas != nullptr && out != nullptr, "null argument");
    const auto o = defaults_or(options);
    const auto sweep = virial::anharmonic_sweep(omega, std::span<const double>(lambdas, count),
                                                n_max, solver_of(o), quadrature_of(o), o.workers);
    *out = new virial_table{virial::to_table(sweep, omega)};
  });
}

virial_status virial_wavefunctions(const virial_potential* p, int n_max, int points,
                                   const virial_options* options, virial_table** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    const auto o = defaults_or(options);
    *out = new virial_table{
        virial::wavefunction_table(p->value, n_max, points, solver_of(o), quadrature_of(o))};
  });
}

virial_status virial_scaling_audit(int kappa, const double* lambdas, size_t count, int n_max,
                                   const virial_options* options, virial_audit** out) {
  return guarded([&] {
    require(lambdas != nullptr && out != nullptr, "null argument");
    const auto o = defaults_or(options);
    *out = new virial_audit{virial::scaling_audit(kappa, std::span<const double>(lambdas, count),
                                                  n_max, solver_of(o), quadrature_of(o),
                                                  thresholds_of(o), o.workers)};
  });
}

int virial_audit_passed(const virial_audit* a) { return a && a->value.passed() ? 1 : 0; }

virial_status virial_audit_table(const virial_audit* a, virial_table** out) {
  return guarded([&] {
    require(a != nullptr && out != nullptr, "null argument");
    *out = new virial_table{virial::to_table(a->value)};
  });
}

void virial_audit_free(virial_audit* a) { delete a; }

/* ---- tables ---- */

virial_status virial_table_serialize(const virial_table* t, virial_format format, char** out) {
  return guarded([&] {
    require(t != nullptr && out != nullptr, "null argument");
    *out = dup_string(virial::serialize(t->value, format_of(format)));
  });
}

virial_status virial_table_parse(const char* text, virial_format format, virial_table** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new virial_table{virial::parse_table(text, format_of(format))};
  });
}

size_t virial_table_rows(const virial_table* t) { return t ? t->value.rows.size() : 0; }

size_t virial_table_columns(const virial_table* t) { return t ? t->value.columns.size() : 0; }

const char* virial_table_column_name(const virial_table* t, size_t column) {
  if (!t || column >= t->value.columns.size()) return nullptr;
  return t->value.columns[column].c_str();
}

virial_status virial_table_value(const virial_table* t, size_t row, size_t column, double* out) {
  return guarded([&] {
    require(t != nullptr && out != nullptr, "null argument");
    require(row < t->value.rows.size() && column < t->value.columns.size(), "index out of range");
    *out = t->value.rows[row][column];
  });
}

void virial_table_free(virial_table* t) { delete t; }

}  // extern "C"
