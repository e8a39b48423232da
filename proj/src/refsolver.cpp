#include "refsolver.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "error.hpp"

namespace virial {

namespace {

constexpr double kTinyPivot = 1e-300;

// U(t) >= level for t >= returned value (centered coordinate, t > 0).
double turning_point(const Potential& p, double level) {
  double lo = 0.0, hi = 1.0;
  while (p.evaluate_centered(hi).u < level) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e150) throw Error(ErrorCode::DomainError, "potential does not reach the level");
  }
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (p.evaluate_centered(mid).u < level ? lo : hi) = mid;
  }
  return hi;
}

double action(const Potential& p, double energy) {
  const double t = turning_point(p, energy);
  auto f = [&](double theta) {
    const double y = t * std::sin(theta);
    const double k = energy - p.evaluate_centered(y).u;
    return k > 0.0 ? std::sqrt(2.0 * k) * t * std::cos(theta) : 0.0;
  };
  return 2.0 * boost::math::quadrature::gauss<double, 30>::integrate(f, 0.0, std::numbers::pi / 2);
}

// LU with partial pivoting of a tridiagonal matrix followed by one solve; the
// layout follows LAPACK's gttrf/gtts2.
void tridiagonal_solve(std::vector<double> dl, std::vector<double> d, std::vector<double> du,
                       std::vector<double>& b) {
  const std::size_t n = d.size();
  std::vector<double> du2(n > 2 ? n - 2 : 0, 0.0);
  std::vector<unsigned char> swapped(n, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = kTinyPivot;
      const double fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = 1;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = kTinyPivot;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!swapped[i]) {
      b[i + 1] -= dl[i] * b[i];
    } else {
      const double temp = b[i] - dl[i] * b[i + 1];
      b[i] = b[i + 1];
      b[i + 1] = temp;
    }
  }
  b[n - 1] /= d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (std::size_t k = n - 2; k-- > 0;)
    b[k] = (b[k] - du[k] * b[k + 1] - du2[k] * b[k + 2]) / d[k];
}

struct Pencil {
  std::vector<double> u;
  double h = 0.0;
  bool numerov = false;

  double q(std::size_t i, double e) const { return 2.0 * h * h * (u[i] - e); }
  double diag(std::size_t i, double e) const {
    const double qi = q(i, e);
    return numerov ? -2.0 - qi / (1.0 - qi / 12.0) : -2.0 - qi;
  }
  // number of eigenvalues below e
  int count(double e) const {
    int c = 0;
    double p = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      p = diag(i, e) - (i > 0 ? 1.0 / p : 0.0);
      if (std::abs(p) < kTinyPivot) p = -kTinyPivot;
      if (p > 0.0) ++c;
    }
    return c;
  }
};

void fix_sign(std::vector<double>& psi) {
  double peak = 0.0;
  for (double v : psi) peak = std::max(peak, std::abs(v));
  for (double v : psi) {
    if (std::abs(v) > 1e-8 * peak) {
      if (v < 0.0)
        for (double& w : psi) w = -w;
      return;
    }
  }
}

}  // namespace

int GridSolution::sign_changes(int level) const {
  const auto& psi = eigenfunctions.at(static_cast<std::size_t>(level));
  double peak = 0.0;
  for (double v : psi) peak = std::max(peak, std::abs(v));
  int changes = 0;
  double last = 0.0;
  for (double v : psi) {
    if (std::abs(v) <= 1e-8 * peak) continue;
    if (last != 0.0 && (v > 0.0) != (last > 0.0)) ++changes;
    last = v;
  }
  return changes;
}

std::string GridSolution::eigenfunctions_csv() const {
  std::string out = "x";
  for (int n = 0; n < levels(); ++n) out += fmt::format(",psi_{}", n);
  out += '\n';
  for (std::size_t i = 0; i < x.size(); ++i) {
    out += fmt::format("{:.12g}", x[i]);
    for (const auto& psi : eigenfunctions) out += fmt::format(",{:.12g}", psi[i]);
    out += '\n';
  }
  return out;
}

double wkb_energy(const Potential& potential, int n) {
  const double target = (n + 0.5) * std::numbers::pi;
  double lo = 0.0, hi = 1.0;
  while (action(potential, hi) < target) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (action(potential, mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double auto_half_width(const Potential& potential, int n_levels) {
  const double top = 1.1 * wkb_energy(potential, std::max(n_levels - 1, 0));
  const double t = turning_point(potential, top);
  double width = 1.8 * t;
  width = std::max(width, turning_point(potential, 3.0 * top));
  // march out until the WKB tail exponent reaches 20 (psi^2 ~ 4e-18 at the wall)
  const double dy = t / 64.0;
  double y = t, tail = 0.0;
  auto kappa = [&](double s) {
    return std::sqrt(std::max(0.0, 2.0 * (potential.evaluate_centered(s).u - top)));
  };
  while (tail < 20.0) {
    tail += 0.5 * dy * (kappa(y) + kappa(y + dy));
    y += dy;
  }
  return std::max(width, y);
}

GridSolution solve_grid(const Potential& potential, int n_levels, double half_width, double step,
                        bool numerov) {
  if (n_levels < 1) throw Error(ErrorCode::InvalidArgument, "n_levels must be >= 1");
  if (!(half_width > 0.0) || !(step > 0.0))
    throw Error(ErrorCode::InvalidArgument, "box half-width and step must be > 0");
  if (step > half_width / 200.0 * (1.0 + 1e-9))
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("step {} exceeds L/200 = {}", step, half_width / 200.0));

  const long intervals = std::lround(2.0 * half_width / step);
  const std::size_t m = static_cast<std::size_t>(intervals - 1);
  Pencil pencil;
  pencil.h = 2.0 * half_width / static_cast<double>(intervals);
  pencil.numerov = numerov;
  pencil.u.resize(m);
  std::vector<double> y(m);
  double umin = std::numeric_limits<double>::infinity();
  double umax = -umin;
  for (std::size_t i = 0; i < m; ++i) {
    y[i] = -half_width + static_cast<double>(i + 1) * pencil.h;
    pencil.u[i] = potential.evaluate_centered(y[i]).u;
    umin = std::min(umin, pencil.u[i]);
    umax = std::max(umax, pencil.u[i]);
  }
  if (numerov && 2.0 * pencil.h * pencil.h * (umax - umin) >= 10.0)
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("step {} too coarse for Numerov on this box", pencil.h));

  GridSolution sol;
  sol.half_width = half_width;
  sol.step = pencil.h;
  sol.xi = potential.xi();
  sol.numerov = numerov;
  sol.x.resize(m);
  for (std::size_t i = 0; i < m; ++i) sol.x[i] = potential.xi() + y[i];

  const double eps = std::numeric_limits<double>::epsilon();
  for (int k = 0; k < n_levels; ++k) {
    double lo = umin;
    double hi = std::max(umin + 1.0, 2.0 * wkb_energy(potential, k) + 1.0);
    int guard = 0;
    while (pencil.count(hi) < k + 1) {
      hi = umin + 2.0 * (hi - umin);
      if (++guard > 200) throw Error(ErrorCode::EigensolveFailure, "cannot bracket eigenvalue");
    }
    for (int it = 0; it < 400 && hi - lo > 2.0 * eps * std::max(std::abs(lo), std::abs(hi));
         ++it) {
      const double mid = 0.5 * (lo + hi);
      (pencil.count(mid) <= k ? lo : hi) = mid;
    }
    const double energy = 0.5 * (lo + hi);

    std::vector<double> d(m), off(m - 1, 1.0);
    for (std::size_t i = 0; i < m; ++i) d[i] = pencil.diag(i, energy);
    std::vector<double> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = 1.0 + 0.5 * std::sin(0.37 * static_cast<double>(i) + 0.1);
    for (int it = 0; it < 3; ++it) {
      tridiagonal_solve(off, d, off, v);
      double norm = 0.0;
      for (double e : v) norm += e * e;
      norm = std::sqrt(norm);
      if (!std::isfinite(norm) || norm == 0.0)
        throw Error(ErrorCode::EigensolveFailure, "inverse iteration broke down");
      for (double& e : v) e /= norm;
    }
    double refined = energy;
    if (numerov) {
      for (std::size_t i = 0; i < m; ++i) v[i] /= 1.0 - pencil.q(i, energy) / 12.0;
    } else {
      double kinetic = 0.0, pot = 0.0, mass = 0.0, prev = 0.0;
      for (std::size_t i = 0; i <= m; ++i) {
        const double cur = i < m ? v[i] : 0.0;
        kinetic += (cur - prev) * (cur - prev);
        prev = cur;
        if (i < m) {
          pot += pencil.u[i] * cur * cur;
          mass += cur * cur;
        }
      }
      refined = (0.5 * kinetic / (pencil.h * pencil.h) + pot) / mass;
    }
    double mass = 0.0;
    for (double e : v) mass += e * e;
    const double scale = 1.0 / std::sqrt(mass * pencil.h);
    for (double& e : v) e *= scale;
    fix_sign(v);
    if (!std::isfinite(refined))
      throw Error(ErrorCode::EigensolveFailure, fmt::format("level {} not finite", k));
    sol.eigenvalues.push_back(refined);
    sol.eigenfunctions.push_back(std::move(v));
  }
  for (int k = 1; k < n_levels; ++k)
    if (!(sol.eigenvalues[k] > sol.eigenvalues[k - 1]))
      throw Error(ErrorCode::EigensolveFailure, "eigenvalues are not strictly increasing");

  const double top = sol.eigenvalues.back();
  if (potential.evaluate_centered(half_width).u < 3.0 * top)
    throw Error(ErrorCode::DomainTooSmall,
                fmt::format("U(xi +- {}) < 3 E_top = {}", half_width, 3.0 * top));
  double outer = 0.0;
  const auto& psi = sol.eigenfunctions.back();
  for (std::size_t i = 0; i < m; ++i)
    if (std::abs(y[i]) > 0.95 * half_width) outer += psi[i] * psi[i] * pencil.h;
  if (outer > 1e-8)
    throw Error(ErrorCode::DomainTooSmall,
                fmt::format("level {} keeps {:.3e} of its norm in the outer 5% of the box",
                            n_levels - 1, outer));
  sol.convergence_estimate.assign(n_levels, std::numeric_limits<double>::quiet_NaN());
  return sol;
}

RefineResult refine(const Potential& potential, int n_levels, double tol, SolverOptions options) {
  if (!(tol >= 1e-12))
    throw Error(ErrorCode::InvalidArgument, fmt::format("tol = {} below 1e-12", tol));
  double width = options.half_width > 0.0 ? options.half_width : auto_half_width(potential, n_levels);
  const double p0 = options.numerov ? 4.0 : 2.0;
  const int depth = std::max(options.richardson_depth, 0);

  for (int enlarge = 0; enlarge < 8; ++enlarge, width *= 1.25) {
    RefineResult res;
    res.half_width = width;
    res.nominal_order = p0;
    double h = options.step > 0.0 ? options.step : width / 200.0;
    if (options.numerov) {
      double umax = potential.evaluate_centered(width).u;
      while (2.0 * h * h * umax >= 10.0) h *= 0.5;
    }
    std::vector<std::vector<double>> table;  // table[j][n] for the current row
    bool too_small = false;
    for (int k = 0; k <= options.max_refinements; ++k, h *= 0.5) {
      GridSolution sol;
      try {
        sol = solve_grid(potential, n_levels, width, h, options.numerov);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DomainTooSmall || options.half_width > 0.0) throw;
        too_small = true;
        break;
      }
      RefineStep step;
      step.step = sol.step;
      step.raw = sol.eigenvalues;
      step.virial_signed = virial_residual_signed(sol, potential);
      std::vector<std::vector<double>> row{sol.eigenvalues};
      for (int j = 1; j <= std::min(k, depth); ++j) {
        const double factor = std::pow(2.0, p0 + 2.0 * (j - 1)) - 1.0;
        std::vector<double> next(n_levels);
        for (int n = 0; n < n_levels; ++n)
          next[n] = row[j - 1][n] + (row[j - 1][n] - table[j - 1][n]) / factor;
        row.push_back(std::move(next));
      }
      step.extrapolated = row.back();
      step.max_change = std::numeric_limits<double>::infinity();
      if (k > 0) {
        const auto& before = res.steps.back().extrapolated;
        step.max_change = 0.0;
        for (int n = 0; n < n_levels; ++n)
          step.max_change = std::max(step.max_change, std::abs(step.extrapolated[n] - before[n]) /
                                                          std::max(1.0, std::abs(before[n])));
      }
      table = std::move(row);
      res.steps.push_back(step);
      res.finest = std::move(sol);
      if (k >= 2 && step.max_change < tol) {
        res.converged = true;
        break;
      }
    }
    if (too_small) continue;
    if (!res.converged)
      throw Error(ErrorCode::NoConvergence,
                  fmt::format("eigenvalues still moving by {:.3e} after {} refinements",
                              res.steps.back().max_change, options.max_refinements));
    res.eigenvalues = res.steps.back().extrapolated;
    const auto s = res.steps.size();
    res.observed_order.assign(n_levels, std::numeric_limits<double>::quiet_NaN());
    for (int n = 0; n < n_levels; ++n) {
      const double d1 = res.steps[s - 3].raw[n] - res.steps[s - 2].raw[n];
      const double d2 = res.steps[s - 2].raw[n] - res.steps[s - 1].raw[n];
      if (d2 != 0.0) res.observed_order[n] = std::log2(std::abs(d1 / d2));
    }
    // residual ladder: the discrete virial defect is a smooth function of h^2
    std::vector<std::vector<double>> vt;
    for (std::size_t k = 0; k < s; ++k) {
      std::vector<std::vector<double>> row{res.steps[k].virial_signed};
      for (std::size_t j = 1; j <= std::min<std::size_t>(k, depth); ++j) {
        const double factor = std::pow(2.0, 2.0 * j) - 1.0;
        std::vector<double> next(n_levels);
        for (int n = 0; n < n_levels; ++n)
          next[n] = row[j - 1][n] + (row[j - 1][n] - vt[j - 1][n]) / factor;
        row.push_back(std::move(next));
      }
      vt = std::move(row);
    }
    res.virial_residual.clear();
    for (double v : vt.back()) res.virial_residual.push_back(std::abs(v));
    res.finest.convergence_estimate.clear();
    for (int n = 0; n < n_levels; ++n) {
      res.finest.convergence_estimate.push_back(
          std::abs(res.steps[s - 1].extrapolated[n] - res.steps[s - 2].extrapolated[n]));
    }
    return res;
  }
  throw Error(ErrorCode::DomainTooSmall, "box kept failing the domain test after enlargement");
}

std::vector<double> virial_residual(const GridSolution& solution, const Potential& potential) {
  auto out = virial_residual_signed(solution, potential);
  for (double& v : out) v = std::abs(v);
  return out;
}

std::vector<double> virial_residual_signed(const GridSolution& solution,
                                           const Potential& potential) {
  std::vector<double> out;
  const double h = solution.step;
  for (const auto& psi : solution.eigenfunctions) {
    double kinetic = 0.0, virial = 0.0, prev = 0.0;
    for (std::size_t i = 0; i <= psi.size(); ++i) {
      const double cur = i < psi.size() ? psi[i] : 0.0;
      kinetic += (cur - prev) * (cur - prev) / h;
      prev = cur;
      if (i < psi.size())
        virial += h * cur * cur * potential.virial_term(solution.x[i] - solution.xi);
    }
    out.push_back(kinetic - virial);
  }
  return out;
}

}  // namespace virial
