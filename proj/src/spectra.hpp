#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "orthopoly.hpp"
#include "refsolver.hpp"

namespace virial {

// chi_n = phi_n chi_v for one level of a basis.
class Ansatz {
 public:
  Ansatz(std::shared_ptr<const OrthoBasis> basis, int n);

  int n() const noexcept { return n_; }
  const OrthoBasis& basis() const noexcept { return *basis_; }
  const VirialWeight& weight() const noexcept { return basis_->weight(); }

  double value(double x) const;
  double deriv(double x) const;
  // Same, in y = x - xi.
  double value_centered(double y) const;
  double deriv_centered(double y) const;

 private:
  std::shared_ptr<const OrthoBasis> basis_;
  int n_;
};

Ansatz ansatz(std::shared_ptr<const OrthoBasis> basis, int n);
Ansatz ansatz(const OrthoBasis& basis, int n);

/// Integral of chi_n^2.
double norm_squared(const Ansatz& state);

/// <U + (x - xi) U' / 2> under chi_n^2, by quadrature.
double energy_virial(const Ansatz& state);

/// Same estimator through the moment table,
///   (kappa + 1) lambda sum_ij alpha_ni alpha_nj <y^(i+j+2 kappa)>;
/// only defined for ClosedFormMonomial weights.
double energy_virial_from_moments(const Ansatz& state);

/// 1/2 integral chi_n'^2 + <U> under chi_n^2.
double energy_rayleigh(const Ansatz& state);

/// |integral chi_n'^2 - <(x - xi) U'>|; zero for n = 0 by construction.
double ansatz_virial_residual(const Ansatz& state);

/// 100 |E_ans - E_ref| / E_ref.
double relative_error(double e_ans, double e_ref);

/// (1 + eps / 100)^-1, so that E_ref = gamma E_ans.
double gamma_factor(double eps_percent);

// Factors of x -> v = lambda^(1/(2(kappa+1))) x for lambda x^(2 kappa).
struct ScalingFrame {
  int kappa = 1;
  double lambda = 1.0;
  double length = 1.0;     // s
  double amplitude = 1.0;  // sqrt(s)
  double energy = 1.0;     // s^2

  static ScalingFrame make(int kappa, double lambda);
};

struct SpectrumRow {
  int n = 0;
  double e_ref = 0.0;
  double e_virial = 0.0;
  double e_rayleigh = 0.0;
  double eps_percent = 0.0;
  double gamma = 1.0;
};

struct SpectrumReport {
  std::string potential;
  int n_max = 0;
  BasisMethod method = BasisMethod::ThreeTerm;
  std::string weight_mode;
  SolverOptions solver;
  double solver_tol = 0.0;
  std::vector<SpectrumRow> rows;
};

/// Rows n = 0..n_max against the given reference energies.
SpectrumReport spectrum_report(const Potential& potential, int n_max,
                               std::span<const double> reference,
                               const QuadratureSettings& settings = {},
                               BasisMethod method = BasisMethod::ThreeTerm, int workers = 1);

/// Same, solving the reference with refine() first.
SpectrumReport spectrum_report(const Potential& potential, int n_max,
                               const SolverOptions& solver = {},
                               const QuadratureSettings& settings = {},
                               BasisMethod method = BasisMethod::ThreeTerm, int workers = 1);

struct ScalingThresholds {
  double energy = 1e-9;       // relative
  double coefficient = 1e-8;  // relative, non-zero entries
  double amplitude = 1e-9;    // absolute, on the sample grid
  double eps_spread = 1e-6;   // percentage points
};

struct ScalingAuditRow {
  double lambda = 0.0;
  int n = 0;
  double e_ans = 0.0;
  double e_ans_scaled = 0.0;  // lambda^(1/(kappa+1)) E_ans(lambda = 1)
  double e_ref = 0.0;
  double eps_percent = 0.0;
  double energy_residual = 0.0;
  double coefficient_residual = 0.0;
  double amplitude_residual = 0.0;
};

struct ScalingAuditReport {
  int kappa = 1;
  int n_max = 0;
  std::vector<double> lambdas;
  std::vector<ScalingAuditRow> rows;  // lambda-major, then n
  std::vector<double> eps_spread;     // per n, max - min over lambdas
  ScalingThresholds thresholds;

  double max_energy_residual() const;
  double max_coefficient_residual() const;
  double max_amplitude_residual() const;
  double max_eps_spread() const;
  bool passed() const;
};

ScalingAuditReport scaling_audit(int kappa, std::span<const double> lambdas, int n_max,
                                 const SolverOptions& solver = {},
                                 const QuadratureSettings& settings = {},
                                 const ScalingThresholds& thresholds = {}, int workers = 1);

}  // namespace virial
