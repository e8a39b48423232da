#pragma once

#include <functional>

namespace virial {

struct QuadratureSettings {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  // Highest power of x the integrands are expected to carry; it enters the
  // tail bound that fixes the truncation radius.
  int integrand_degree = 40;

  void check() const;
};

enum class Parity { None, Even, Odd };

struct QuadratureResult {
  double value = 0.0;
  double err_estimate = 0.0;
};

using RealFn = std::function<double(double)>;

/// Integral of f(x) exp(-2 g(x)) over the real line, for g even about
/// `center` and increasing away from it.
///
/// The line is truncated to [center - R, center + R] where R solves
///   2 g(R) = -ln(abs_tol) + (integrand_degree + 2) ln(max(R, 1)) + 20
/// and each half is integrated with adaptive Gauss-Kronrod; `center` is always
/// a breakpoint. Even integrands are integrated over one half and doubled; odd
/// integrands return exactly zero.
///
/// Throws NoConvergence if the subdivision budget is exhausted before the
/// error estimate drops below max(rel_tol * L1, abs_tol), and
/// NonFiniteIntegrand if f exp(-2g) is not finite at a node.
QuadratureResult integrate_weighted(const RealFn& f, const RealFn& decay,
                                    const QuadratureSettings& settings = {},
                                    Parity parity = Parity::None, double center = 0.0);

double truncation_radius(const RealFn& decay, const QuadratureSettings& settings);

/// Gamma function for z > 0; DomainError otherwise.
double gamma_fn(double z);

/// I_2i = integral of x^(2i) exp(-|x|^(kappa+1)) = 2/(kappa+1) Gamma((2i+1)/(kappa+1)).
double monomial_base_integral(int kappa, int i);

/// J_2i = I_2i / I_0.
double monomial_base_ratio(int kappa, int i);

}  // namespace virial
