#include "experiments.hpp"

#include <cmath>
#include <fmt/format.h>
#include <memory>

#include "error.hpp"
#include "parallel.hpp"

namespace virial {

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1)
    throw Error(ErrorCode::InvalidArgument, "log grid needs 0 < lo <= hi and count >= 1");
  if (count == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(count));
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = std::pow(10.0, a + (b - a) * i / (count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

ErrorTable error_table(std::span<const int> kappas, int n_max, const SolverOptions& solver,
                       const QuadratureSettings& settings, int workers) {
  if (kappas.empty()) throw Error(ErrorCode::InvalidArgument, "empty kappa list");
  if (n_max < 0 || n_max > OrthoBasis::kMaxOrder)
    throw Error(ErrorCode::OrderOutOfRange, fmt::format("n_max = {}", n_max));

  std::vector<SpectrumReport> reports(kappas.size());
  parallel_for(kappas.size(), workers, [&](std::size_t i) {
    const auto pot = validate(PotentialSpec::monomial(kappas[i], 1.0));
    reports[i] = spectrum_report(pot, n_max, solver, settings);
  });

  ErrorTable out;
  out.matrix.add_column("n", ColumnFormat::integer());
  for (int k : kappas) out.matrix.add_column(fmt::format("eps_{}", k), ColumnFormat::fixed(4));
  for (int n = 0; n <= n_max; ++n) {
    std::vector<double> row{static_cast<double>(n)};
    for (const auto& r : reports) row.push_back(r.rows[static_cast<std::size_t>(n)].eps_percent);
    out.matrix.rows.push_back(std::move(row));
  }

  out.series.add_column("kappa", ColumnFormat::integer());
  out.series.add_column("n", ColumnFormat::integer());
  out.series.add_column("eps_percent", ColumnFormat::fixed(4));
  for (std::size_t i = 0; i < kappas.size(); ++i)
    for (const auto& r : reports[i].rows)
      out.series.rows.push_back({static_cast<double>(kappas[i]), static_cast<double>(r.n), r.eps_percent});

  const nlohmann::json meta = {{"kind", "error-table"},
                               {"kappas", std::vector<int>(kappas.begin(), kappas.end())},
                               {"n_max", n_max},
                               {"lambda", 1.0},
                               {"solver_tol", solver.tol},
                               {"numerov", solver.numerov}};
  out.matrix.metadata = meta;
  out.series.metadata = meta;
  out.series.metadata["kind"] = "error-series";
  return out;
}

std::vector<SweepPoint> anharmonic_sweep(double omega, std::span<const double> lambdas, int n_max,
                                         const SolverOptions& solver,
                                         const QuadratureSettings& settings, int workers) {
  if (lambdas.empty()) throw Error(ErrorCode::InvalidArgument, "empty lambda sweep");
  const std::size_t per = static_cast<std::size_t>(n_max) + 1;
  std::vector<SweepPoint> out(lambdas.size() * per);
  parallel_for(lambdas.size(), workers, [&](std::size_t i) {
    const auto pot = validate(PotentialSpec::quartic_anharmonic(omega, lambdas[i]));
    const auto report = spectrum_report(pot, n_max, solver, settings);
    for (std::size_t n = 0; n < per; ++n) {
      const auto& r = report.rows[n];
      out[i * per + n] = {lambdas[i], r.n, r.e_ref, r.e_virial, r.eps_percent};
    }
  });
  return out;
}

Table to_table(std::span<const SweepPoint> sweep, double omega) {
  Table t;
  t.add_column("lambda", ColumnFormat::exact());
  t.add_column("n", ColumnFormat::integer());
  t.add_column("E_ref", ColumnFormat::fixed(8));
  t.add_column("E_ans", ColumnFormat::fixed(8));
  t.add_column("eps_percent", ColumnFormat::significant(8));
  for (const auto& p : sweep)
    t.rows.push_back({p.lambda, static_cast<double>(p.n), p.e_ref, p.e_ans, p.eps_percent});
  t.metadata = {{"kind", "anharmonic-sweep"}, {"omega", omega}};
  return t;
}

Table wavefunction_table(const Potential& potential, int n_max, int points,
                         const SolverOptions& solver, const QuadratureSettings& settings) {
  if (points < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 output points");
  const auto ref = refine(potential, n_max + 1, solver.tol, solver);
  const auto& grid = ref.finest;
  const auto weight = make_weight(potential, settings);
  const auto basis = std::make_shared<const OrthoBasis>(three_term(weight, n_max));

  const std::size_t nodes = grid.x.size();
  const std::size_t stride = std::max<std::size_t>(1, (nodes + static_cast<std::size_t>(points) - 1) /
                                                          static_cast<std::size_t>(points));
  // Keep the grid symmetric about xi: start at the offset that centres it.
  const std::size_t count = (nodes - 1) / stride + 1;
  const std::size_t first = (nodes - 1 - (count - 1) * stride) / 2;

  Table t;
  t.add_column("x", ColumnFormat::fixed(8));
  for (int n = 0; n <= n_max; ++n) t.add_column(fmt::format("psi_{}", n), ColumnFormat::exact());
  for (int n = 0; n <= n_max; ++n) t.add_column(fmt::format("chi_{}", n), ColumnFormat::exact());

  std::vector<Ansatz> states;
  std::vector<double> sign;
  for (int n = 0; n <= n_max; ++n) {
    states.emplace_back(basis, n);
    const auto& psi = grid.eigenfunctions[static_cast<std::size_t>(n)];
    double overlap = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) overlap += psi[i] * states.back().value(grid.x[i]);
    sign.push_back(overlap < 0.0 ? -1.0 : 1.0);
  }
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = first + k * stride;
    std::vector<double> row{grid.x[i]};
    for (int n = 0; n <= n_max; ++n)
      row.push_back(sign[static_cast<std::size_t>(n)] * grid.eigenfunctions[static_cast<std::size_t>(n)][i]);
    for (const auto& s : states) row.push_back(s.value(grid.x[i]));
    t.rows.push_back(std::move(row));
  }
  t.metadata = {{"kind", "wavefunctions"},
                {"potential", potential.describe()},
                {"n_max", n_max},
                {"half_width", grid.half_width},
                {"step", grid.step * static_cast<double>(stride)},
                {"numerov", grid.numerov}};
  return t;
}

}  // namespace virial
