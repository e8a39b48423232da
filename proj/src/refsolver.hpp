#pragma once

#include <string>
#include <vector>

#include "potentials.hpp"

namespace virial {

struct SolverOptions {
  double half_width = 0.0;  // 0: pick from the turning point of the top level
  double step = 0.0;        // 0: half_width / 200
  double tol = 1e-10;       // absolute, on successive extrapolated eigenvalues
  bool numerov = false;
  int max_refinements = 10;
  int richardson_depth = 4;
};

// Eigenpairs of -1/2 d^2/dx^2 + U on [xi - L, xi + L] with Dirichlet walls.
struct GridSolution {
  double half_width = 0.0;
  double step = 0.0;
  double xi = 0.0;
  bool numerov = false;
  std::vector<double> x;  // interior nodes
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenfunctions;  // h * sum psi^2 = 1
  std::vector<double> convergence_estimate;         // NaN for a single grid

  int levels() const noexcept { return static_cast<int>(eigenvalues.size()); }
  int sign_changes(int level) const;
  /// CSV "x,psi_0,...,psi_{n-1}".
  std::string eigenfunctions_csv() const;
};

/// Three-point Laplacian by default; the Numerov variant is solved through the
/// equivalent symmetric tridiagonal pencil in w = (1 - h^2 f / 12) psi.
/// Eigenvalues are bracketed by Sturm-count bisection and eigenvectors come
/// from inverse iteration; for the three-point scheme the eigenvalue is then
/// polished with the Rayleigh quotient.
///
/// Throws DomainTooSmall if the top eigenfunction keeps more than 1e-8 of its
/// norm in the outer 5% of the box, or if U(xi +- L) < 3 E_top.
GridSolution solve_grid(const Potential& potential, int n_levels, double half_width, double step,
                        bool numerov = false);

struct RefineStep {
  double step = 0.0;
  std::vector<double> raw;
  std::vector<double> extrapolated;
  double max_change = 0.0;
  std::vector<double> virial_signed;  // <-d2> - <(x - xi) U'> on this grid
};

struct RefineResult {
  std::vector<double> eigenvalues;
  GridSolution finest;
  std::vector<RefineStep> steps;
  std::vector<double> observed_order;  // from the three finest raw grids
  std::vector<double> virial_residual;  // Richardson-extrapolated |<-d2> - <(x - xi) U'>|
  double nominal_order = 2.0;
  double half_width = 0.0;
  bool converged = false;
};

/// Halve h until successive Richardson-extrapolated eigenvalues change by less
/// than tol; the box grows by 25% whenever the domain test trips.
RefineResult refine(const Potential& potential, int n_levels, double tol,
                    SolverOptions options = {});

/// |<-d^2/dx^2>_n - <(x - xi) U'>_n| on the grid, per level. O(h^2); refine()
/// also reports the value extrapolated along its ladder.
std::vector<double> virial_residual(const GridSolution& solution, const Potential& potential);
std::vector<double> virial_residual_signed(const GridSolution& solution,
                                           const Potential& potential);

/// Semiclassical estimate of E_n from the quantization of the action.
double wkb_energy(const Potential& potential, int n);

/// Box half-width for the lowest n_levels states.
double auto_half_width(const Potential& potential, int n_levels);

}  // namespace virial
