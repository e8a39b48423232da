#pragma once

#include <span>
#include <vector>

#include "spectra.hpp"
#include "table.hpp"

namespace virial {

/// count points from lo to hi, evenly spaced in log10; endpoints exact.
std::vector<double> log_grid(double lo, double hi, int count);

struct ErrorTable {
  Table matrix;  // n, eps_<kappa>...
  Table series;  // long format: kappa, n, eps_percent
};

/// Percentage errors of lambda x^(2 kappa) for n = 0..n_max. The error does not
/// depend on lambda, so lambda = 1 throughout.
ErrorTable error_table(std::span<const int> kappas, int n_max, const SolverOptions& solver = {},
                       const QuadratureSettings& settings = {}, int workers = 1);

struct SweepPoint {
  double lambda = 0.0;
  int n = 0;
  double e_ref = 0.0;
  double e_ans = 0.0;
  double eps_percent = 0.0;
};

/// omega^2 x^2 / 2 + lambda x^4 over the lambda grid; lambda-major, then n.
std::vector<SweepPoint> anharmonic_sweep(double omega, std::span<const double> lambdas, int n_max,
                                         const SolverOptions& solver = {},
                                         const QuadratureSettings& settings = {}, int workers = 1);

Table to_table(std::span<const SweepPoint> sweep, double omega);

/// x, psi_0..psi_n, chi_0..chi_n on a uniform subset of the finest reference
/// grid, with at most `points` rows. Each psi_n is signed to overlap
/// positively with chi_n.
Table wavefunction_table(const Potential& potential, int n_max, int points,
                         const SolverOptions& solver = {}, const QuadratureSettings& settings = {});

}  // namespace virial
