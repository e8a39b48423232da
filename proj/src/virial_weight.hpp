#pragma once

#include <memory>
#include <vector>

#include "integrate.hpp"
#include "potentials.hpp"

namespace virial {

enum class WeightMode { ClosedFormMonomial, ClosedFormQuarticAnharmonic, NumericG };

const char* to_string(WeightMode mode) noexcept;

// chi_v = N exp(-g) and sigma = chi_v^2 for a validated potential, with
//   g(x) = sign(x - xi) * integral_xi^x sqrt((t - xi) U'(t)) dt,   g(xi) = 0.
// Closed forms are used for monomials and the quartic anharmonic oscillator;
// everything else integrates g' on a cached knot table.
class VirialWeight {
 public:
  double g(double x) const { return g_centered(x - potential_.xi()); }
  double dg(double x) const { return dg_centered(x - potential_.xi()); }
  double g_centered(double y) const;
  double dg_centered(double y) const;

  // Only meaningful after normalize().
  double norm() const noexcept { return norm_; }
  bool normalized() const noexcept { return normalized_; }
  double chi(double x) const;
  double sigma(double x) const;

  WeightMode mode() const noexcept { return mode_; }
  bool harmonic_limit() const noexcept { return harmonic_; }
  const Potential& potential() const noexcept { return potential_; }
  const QuadratureSettings& settings() const noexcept { return settings_; }

  /// <(x - xi)^order>_sigma. Odd orders are exactly zero.
  double moment(int order) const;

  /// Integral of f(y) sigma(xi + y) dy in the working coordinate.
  double expectation(const RealFn& f, Parity parity = Parity::None,
                     int degree_hint = -1) const;

  // Monomial parameters behind the closed form (kappa, lambda); kappa == 0
  // outside ClosedFormMonomial mode.
  int monomial_kappa() const noexcept { return mono_kappa_; }
  double monomial_lambda() const noexcept { return mono_lambda_; }

  static constexpr int kMomentTableOrder = 40;

 private:
  friend VirialWeight build_g(const Potential&, const QuadratureSettings&);
  friend VirialWeight normalize(const VirialWeight&);

  struct KnotTable {
    double step = 0.0;
    std::vector<double> values;  // g at k * step
  };

  explicit VirialWeight(Potential p, QuadratureSettings s)
      : potential_(std::move(p)), settings_(s) {}

  double numeric_g(double y) const;
  double closed_moment(int order) const;
  double quadrature_moment(int order) const;

  Potential potential_;
  QuadratureSettings settings_;
  WeightMode mode_ = WeightMode::NumericG;
  bool harmonic_ = false;

  int mono_kappa_ = 0;
  double mono_lambda_ = 0.0;
  double mono_coef_ = 0.0;  // g = coef |y|^(kappa+1)

  double omega_ = 0.0;
  double lambda_ = 0.0;

  std::shared_ptr<const KnotTable> knots_;

  double norm_ = 0.0;
  bool normalized_ = false;
  std::vector<double> even_moments_;  // index i holds <y^(2i)>
};

VirialWeight build_g(const Potential& potential, const QuadratureSettings& settings = {});
VirialWeight normalize(const VirialWeight& weight);

inline VirialWeight make_weight(const Potential& potential,
                                const QuadratureSettings& settings = {}) {
  return normalize(build_g(potential, settings));
}

}  // namespace virial
