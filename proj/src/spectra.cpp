#include "spectra.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "error.hpp"
#include "parallel.hpp"

namespace virial {

Ansatz::Ansatz(std::shared_ptr<const OrthoBasis> basis, int n) : basis_(std::move(basis)), n_(n) {
  if (!basis_) throw Error(ErrorCode::InvalidArgument, "null basis");
  if (n < 0 || n > basis_->n_max())
    throw Error(ErrorCode::OrderOutOfRange,
                fmt::format("level {} outside [0, {}]", n, basis_->n_max()));
}

double Ansatz::value_centered(double y) const {
  const auto& w = weight();
  return basis_->eval_centered(n_, y).value * w.norm() * std::exp(-w.g_centered(y));
}

double Ansatz::deriv_centered(double y) const {
  const auto& w = weight();
  const auto p = basis_->eval_centered(n_, y);
  return (p.deriv - p.value * w.dg_centered(y)) * w.norm() * std::exp(-w.g_centered(y));
}

double Ansatz::value(double x) const { return value_centered(x - weight().potential().xi()); }
double Ansatz::deriv(double x) const { return deriv_centered(x - weight().potential().xi()); }

Ansatz ansatz(std::shared_ptr<const OrthoBasis> basis, int n) { return Ansatz(std::move(basis), n); }

Ansatz ansatz(const OrthoBasis& basis, int n) {
  return Ansatz(std::make_shared<const OrthoBasis>(basis), n);
}

double norm_squared(const Ansatz& state) {
  const auto& b = state.basis();
  const int n = state.n();
  return state.weight().expectation(
      [&](double y) {
        const double p = b.eval_centered(n, y).value;
        return p * p;
      },
      Parity::Even);
}

double energy_virial(const Ansatz& state) {
  const auto& b = state.basis();
  const auto& pot = state.weight().potential();
  const int n = state.n();
  return state.weight().expectation(
      [&](double y) {
        const double p = b.eval_centered(n, y).value;
        return (pot.evaluate_centered(y).u + 0.5 * pot.virial_term(y)) * p * p;
      },
      Parity::Even);
}

double energy_virial_from_moments(const Ansatz& state) {
  const auto& w = state.weight();
  if (w.mode() != WeightMode::ClosedFormMonomial)
    throw Error(ErrorCode::InvalidArgument, "moment route needs a ClosedFormMonomial weight");
  const int kappa = w.monomial_kappa();
  const auto& row = state.basis().row(state.n());
  long double acc = 0.0L;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] == 0.0) continue;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] == 0.0) continue;
      acc += static_cast<long double>(row[i]) * row[j] *
             w.moment(static_cast<int>(i + j) + 2 * kappa);
    }
  }
  return static_cast<double>((kappa + 1.0L) * w.monomial_lambda() * acc);
}

namespace {

double kinetic_twice(const Ansatz& state) {
  const auto& b = state.basis();
  const auto& w = state.weight();
  const int n = state.n();
  return w.expectation(
      [&](double y) {
        const auto p = b.eval_centered(n, y);
        const double d = p.deriv - p.value * w.dg_centered(y);
        return d * d;
      },
      Parity::Even);
}

}  // namespace

double energy_rayleigh(const Ansatz& state) {
  const auto& b = state.basis();
  const auto& pot = state.weight().potential();
  const int n = state.n();
  const double potential = state.weight().expectation(
      [&](double y) {
        const double p = b.eval_centered(n, y).value;
        return pot.evaluate_centered(y).u * p * p;
      },
      Parity::Even);
  return 0.5 * kinetic_twice(state) + potential;
}

double ansatz_virial_residual(const Ansatz& state) {
  const auto& b = state.basis();
  const auto& pot = state.weight().potential();
  const int n = state.n();
  const double virial = state.weight().expectation(
      [&](double y) {
        const double p = b.eval_centered(n, y).value;
        return pot.virial_term(y) * p * p;
      },
      Parity::Even);
  return std::abs(kinetic_twice(state) - virial);
}

double relative_error(double e_ans, double e_ref) {
  if (e_ref == 0.0) throw Error(ErrorCode::DivisionByZero, "reference energy is zero");
  if (e_ref < 0.0)
    throw Error(ErrorCode::InvalidArgument, fmt::format("reference energy {} < 0", e_ref));
  return 100.0 * std::abs(e_ans - e_ref) / e_ref;
}

double gamma_factor(double eps_percent) {
  if (!(eps_percent >= 0.0))
    throw Error(ErrorCode::InvalidArgument, fmt::format("eps = {} must be >= 0", eps_percent));
  return 1.0 / (1.0 + eps_percent / 100.0);
}

ScalingFrame ScalingFrame::make(int kappa, double lambda) {
  if (kappa < 1 || !(lambda > 0.0))
    throw Error(ErrorCode::InvalidArgument, "scaling frame needs kappa >= 1 and lambda > 0");
  ScalingFrame f;
  f.kappa = kappa;
  f.lambda = lambda;
  f.length = std::pow(lambda, 1.0 / (2.0 * (kappa + 1)));
  f.amplitude = std::pow(lambda, 1.0 / (4.0 * (kappa + 1)));
  f.energy = std::pow(lambda, 1.0 / (kappa + 1.0));
  return f;
}

SpectrumReport spectrum_report(const Potential& potential, int n_max,
                               std::span<const double> reference,
                               const QuadratureSettings& settings, BasisMethod method,
                               int workers) {
  if (reference.size() < static_cast<std::size_t>(n_max) + 1)
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{} reference levels for n_max = {}", reference.size(), n_max));
  const auto weight = make_weight(potential, settings);
  const auto basis = std::make_shared<const OrthoBasis>(build_basis(weight, n_max, method));

  SpectrumReport report;
  report.potential = potential.describe();
  report.n_max = n_max;
  report.method = method;
  report.weight_mode = to_string(weight.mode());
  report.rows.resize(static_cast<std::size_t>(n_max) + 1);
  parallel_for(report.rows.size(), workers, [&](std::size_t i) {
    const int n = static_cast<int>(i);
    const Ansatz state(basis, n);
    SpectrumRow row;
    row.n = n;
    row.e_ref = reference[i];
    row.e_virial = energy_virial(state);
    row.e_rayleigh = energy_rayleigh(state);
    row.eps_percent = relative_error(row.e_virial, row.e_ref);
    row.gamma = gamma_factor(row.eps_percent);
    report.rows[i] = row;
  });
  return report;
}

SpectrumReport spectrum_report(const Potential& potential, int n_max, const SolverOptions& solver,
                               const QuadratureSettings& settings, BasisMethod method,
                               int workers) {
  const auto ref = refine(potential, n_max + 1, solver.tol, solver);
  auto report = spectrum_report(potential, n_max, ref.eigenvalues, settings, method, workers);
  report.solver = solver;
  report.solver.half_width = ref.half_width;
  report.solver_tol = solver.tol;
  return report;
}

double ScalingAuditReport::max_energy_residual() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.energy_residual);
  return m;
}

double ScalingAuditReport::max_coefficient_residual() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.coefficient_residual);
  return m;
}

double ScalingAuditReport::max_amplitude_residual() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.amplitude_residual);
  return m;
}

double ScalingAuditReport::max_eps_spread() const {
  double m = 0.0;
  for (double s : eps_spread) m = std::max(m, s);
  return m;
}

bool ScalingAuditReport::passed() const {
  return max_energy_residual() <= thresholds.energy &&
         max_coefficient_residual() <= thresholds.coefficient &&
         max_amplitude_residual() <= thresholds.amplitude &&
         max_eps_spread() <= thresholds.eps_spread;
}

ScalingAuditReport scaling_audit(int kappa, std::span<const double> lambdas, int n_max,
                                 const SolverOptions& solver, const QuadratureSettings& settings,
                                 const ScalingThresholds& thresholds, int workers) {
  if (lambdas.empty()) throw Error(ErrorCode::InvalidArgument, "empty lambda list");
  for (double l : lambdas)
    if (!(l > 0.0) || !std::isfinite(l))
      throw Error(ErrorCode::InvalidArgument, fmt::format("lambda = {} must be > 0", l));

  const auto unit_pot = validate(PotentialSpec::monomial(kappa, 1.0));
  const auto unit_basis =
      std::make_shared<const OrthoBasis>(three_term(make_weight(unit_pot, settings), n_max));
  std::vector<double> unit_energy(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) unit_energy[n] = energy_virial(Ansatz(unit_basis, n));

  constexpr int kSamples = 241;
  constexpr double kSpan = 6.0;  // |v| <= 6 in the unit-coupling coordinate

  ScalingAuditReport report;
  report.kappa = kappa;
  report.n_max = n_max;
  report.lambdas.assign(lambdas.begin(), lambdas.end());
  report.thresholds = thresholds;
  const std::size_t levels = static_cast<std::size_t>(n_max) + 1;
  report.rows.resize(lambdas.size() * levels);

  parallel_for(lambdas.size(), workers, [&](std::size_t li) {
    const double lambda = lambdas[li];
    const auto frame = ScalingFrame::make(kappa, lambda);
    const auto pot = validate(PotentialSpec::monomial(kappa, lambda));
    const auto basis =
        std::make_shared<const OrthoBasis>(three_term(make_weight(pot, settings), n_max));
    const auto ref = refine(pot, n_max + 1, solver.tol, solver);
    for (int n = 0; n <= n_max; ++n) {
      const Ansatz state(basis, n);
      const Ansatz unit(unit_basis, n);
      ScalingAuditRow row;
      row.lambda = lambda;
      row.n = n;
      row.e_ans = energy_virial(state);
      row.e_ans_scaled = frame.energy * unit_energy[n];
      row.energy_residual = std::abs(row.e_ans - row.e_ans_scaled) / row.e_ans;
      row.e_ref = ref.eigenvalues[n];
      row.eps_percent = relative_error(row.e_ans, row.e_ref);
      for (int j = 0; j <= n; ++j) {
        const double alpha = basis->coeff(n, j);
        if (alpha == 0.0) continue;
        const double predicted = unit_basis->coeff(n, j) * std::pow(frame.length, j);
        row.coefficient_residual =
            std::max(row.coefficient_residual, std::abs(alpha - predicted) / std::abs(alpha));
      }
      for (int s = 0; s < kSamples; ++s) {
        const double v = -kSpan + 2.0 * kSpan * s / (kSamples - 1);
        const double diff =
            state.value_centered(v / frame.length) - frame.amplitude * unit.value_centered(v);
        row.amplitude_residual = std::max(row.amplitude_residual, std::abs(diff));
      }
      report.rows[li * levels + n] = row;
    }
  });

  report.eps_spread.assign(levels, 0.0);
  for (std::size_t n = 0; n < levels; ++n) {
    double lo = report.rows[n].eps_percent, hi = lo;
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
      lo = std::min(lo, report.rows[li * levels + n].eps_percent);
      hi = std::max(hi, report.rows[li * levels + n].eps_percent);
    }
    report.eps_spread[n] = hi - lo;
  }
  return report;
}

}  // namespace virial
