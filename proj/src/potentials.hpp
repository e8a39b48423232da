#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace virial {

/// lambda * x^(2 kappa)
struct Monomial {
  int kappa = 1;
  double lambda = 0.5;
};

/// omega^2 x^2 / 2 + lambda x^4
struct QuarticAnharmonic {
  double omega = 1.0;
  double lambda = 0.0;
};

/// sum_j c_{2j} x^(2j), coeffs = {c_2, c_4, ..., c_2K}
struct EvenPolynomial {
  std::vector<double> coeffs;
};

using PotentialKind = std::variant<Monomial, QuarticAnharmonic, EvenPolynomial>;

// Raw, unvalidated description of a potential. A shifted spec evaluates the
// inner potential at x - xi.
struct PotentialSpec {
  PotentialKind kind;
  double xi = 0.0;
  bool shifted = false;

  static PotentialSpec monomial(int kappa, double lambda);
  static PotentialSpec quartic_anharmonic(double omega, double lambda);
  static PotentialSpec even_polynomial(std::vector<double> coeffs);
  // Full coefficient list {c_1, c_2, ..., c_m}; any non-zero odd-power
  // coefficient makes the potential asymmetric and raises NotSymmetric.
  static PotentialSpec from_polynomial(std::span<const double> coeffs);
};

struct PotentialDerivs {
  double u = 0.0;
  double du = 0.0;
  double d2u = 0.0;
};

// A potential that passed validation: symmetric about xi, convex, with a
// unique minimum at xi. Only obtainable through validate().
class Potential {
 public:
  PotentialDerivs evaluate(double x) const { return evaluate_centered(x - spec_.xi); }
  // Same, in the working coordinate y = x - xi.
  PotentialDerivs evaluate_centered(double y) const;
  // y U'(y) >= 0, summed term by term so that no cancellation occurs.
  double virial_term(double y) const;

  double xi() const noexcept { return spec_.xi; }
  bool shifted() const noexcept { return spec_.shifted; }
  const PotentialSpec& spec() const noexcept { return spec_; }
  const PotentialKind& kind() const noexcept { return spec_.kind; }

  std::string describe() const;

 private:
  friend Potential validate(const PotentialSpec& spec);
  explicit Potential(PotentialSpec spec) : spec_(std::move(spec)) {}
  PotentialSpec spec_;
};

Potential validate(const PotentialSpec& spec);

/// Shift an even potential so that its minimum sits at xi. A zero shift
/// returns the potential unchanged.
Potential translate(const Potential& potential, double xi);

// Half-width R of the convexity scan: U(xi +- R) >= 1e6 U(xi) + 1.
double convexity_scan_radius(const Potential& potential);

}  // namespace virial
