#include "integrate.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <fmt/format.h>

#include "error.hpp"

namespace virial {

void QuadratureSettings::check() const {
  if (!(rel_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "rel_tol must be > 0");
  if (!(abs_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "abs_tol must be > 0");
  if (max_subdivisions < 16)
    throw Error(ErrorCode::InvalidArgument, "max_subdivisions must be >= 16");
  if (integrand_degree < 0)
    throw Error(ErrorCode::InvalidArgument, "integrand_degree must be >= 0");
}

double truncation_radius(const RealFn& decay, const QuadratureSettings& settings) {
  const double base = -std::log(settings.abs_tol) + 20.0;
  const double slope = settings.integrand_degree + 2.0;
  auto enough = [&](double r) {
    return 2.0 * decay(r) >= base + slope * std::log(std::max(r, 1.0));
  };
  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (!enough(hi)) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 200)
      throw Error(ErrorCode::NoConvergence, "decay function does not grow; cannot truncate");
  }
  for (int i = 0; i < 60 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (enough(mid) ? hi : lo) = mid;
  }
  return hi;
}

QuadratureResult integrate_weighted(const RealFn& f, const RealFn& decay,
                                    const QuadratureSettings& settings, Parity parity,
                                    double center) {
  settings.check();
  if (parity == Parity::Odd) return {0.0, 0.0};

  auto centered_decay = [&](double r) { return decay(center + r); };
  const double radius = truncation_radius(centered_decay, settings);
  const unsigned depth = static_cast<unsigned>(
      std::ceil(std::log2(static_cast<double>(settings.max_subdivisions))));

  auto integrand = [&](double x) {
    const double w = std::exp(-2.0 * decay(x));
    if (w == 0.0) return 0.0;
    const double v = f(x) * w;
    if (!std::isfinite(v))
      throw Error(ErrorCode::NonFiniteIntegrand, fmt::format("integrand is {} at x = {}", v, x));
    return v;
  };

  using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
  QuadratureResult out;
  double l1_total = 0.0;
  auto half = [&](double a, double b) {
    double err = 0.0;
    double l1 = 0.0;
    const double v = Rule::integrate(integrand, a, b, depth, settings.rel_tol, &err, &l1);
    out.value += v;
    out.err_estimate += err;
    l1_total += l1;
  };
  half(center, center + radius);
  if (parity == Parity::Even) {
    out.value *= 2.0;
    out.err_estimate *= 2.0;
    l1_total *= 2.0;
  } else {
    half(center - radius, center);
  }
  if (!std::isfinite(out.value))
    throw Error(ErrorCode::NonFiniteIntegrand, "integral is not finite");
  if (out.err_estimate > std::max(settings.rel_tol * l1_total, settings.abs_tol))
    throw Error(ErrorCode::NoConvergence,
                fmt::format("error estimate {:.3e} exceeds tolerance after {} subdivisions",
                            out.err_estimate, settings.max_subdivisions));
  return out;
}

double gamma_fn(double z) {
  if (!(z > 0.0) || !std::isfinite(z))
    throw Error(ErrorCode::DomainError, fmt::format("gamma_fn requires z > 0, got {}", z));
  return std::tgamma(z);
}

double monomial_base_integral(int kappa, int i) {
  if (kappa < 1 || i < 0)
    throw Error(ErrorCode::InvalidArgument, "monomial_base_integral needs kappa >= 1, i >= 0");
  const double p = kappa + 1.0;
  return 2.0 / p * gamma_fn((2.0 * i + 1.0) / p);
}

double monomial_base_ratio(int kappa, int i) {
  if (kappa < 1 || i < 0)
    throw Error(ErrorCode::InvalidArgument, "monomial_base_ratio needs kappa >= 1, i >= 0");
  const double p = kappa + 1.0;
  const double num = (2.0 * i + 1.0) / p;
  const double den = 1.0 / p;
  const double ratio = gamma_fn(num) / gamma_fn(den);
  if (std::isfinite(ratio)) return ratio;
  return std::exp(std::lgamma(num) - std::lgamma(den));
}

}  // namespace virial
