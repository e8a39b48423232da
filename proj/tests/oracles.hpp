#pragma once

// Reference values computed without touching the library: Stirling series
// for Gamma, Hermite recurrences, closed-form Gaussian moments and a plain
// composite Simpson rule.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

// Recurrence up to z >= 25, then the Stirling series to z^-9.
inline double gamma(double z) {
  long double x = z, shift = 1.0L;
  while (x < 25.0L) {
    shift *= x;
    x += 1.0L;
  }
  const long double inv = 1.0L / x, inv2 = inv * inv;
  const long double series =
      inv * (1.0L / 12 - inv2 * (1.0L / 360 - inv2 * (1.0L / 1260 - inv2 * (1.0L / 1680 - inv2 / 1188))));
  const long double log_gamma = (x - 0.5L) * std::log(x) - x +
                                0.5L * std::log(2.0L * std::numbers::pi_v<long double>) + series;
  return static_cast<double>(std::exp(log_gamma) / shift);
}

// Physicists' Hermite H_n(t).
inline double hermite(int n, double t) {
  double h0 = 1.0, h1 = 2.0 * t;
  if (n == 0) return h0;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * t * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

// Orthonormal polynomials for the normalised weight proportional to exp(-omega x^2).
inline double hermite_orthonormal(int n, double omega, double x) {
  double norm = 1.0;
  for (int k = 1; k <= n; ++k) norm *= 2.0 * k;
  return hermite(n, std::sqrt(omega) * x) / std::sqrt(norm);
}

// <x^order> for the normalised weight proportional to exp(-omega x^2).
inline double gaussian_moment(int order, double omega) {
  if (order % 2) return 0.0;
  double m = 1.0;
  for (int k = 1; k < order; k += 2) m *= k / (2.0 * omega);
  return m;
}

inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace oracle
