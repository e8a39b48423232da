#include "potentials.hpp"

#include <cmath>
#include <fmt/format.h>

#include "error.hpp"

namespace virial {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool finite(double v) { return std::isfinite(v); }

std::vector<double> trimmed(std::vector<double> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  return coeffs;
}

PotentialDerivs eval_polynomial(const std::vector<double>& c, double y) {
  // U = sum c_j y^(2j+2); walk powers upward, it's short
  PotentialDerivs d;
  const double y2 = y * y;
  double p = 1.0;  // y^(2j)
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double m = 2.0 * static_cast<double>(j + 1);
    d.u += c[j] * p * y2;
    d.du += m * c[j] * p * y;
    d.d2u += m * (m - 1.0) * c[j] * p;
    p *= y2;
  }
  return d;
}

// Magnitude scale of U'' used to decide whether a negative sample is real or
// rounding noise.
double curvature_scale(const PotentialKind& kind, double y) {
  if (const auto* poly = std::get_if<EvenPolynomial>(&kind)) {
    double s = 0.0;
    double p = 1.0;
    for (std::size_t j = 0; j < poly->coeffs.size(); ++j) {
      const double m = 2.0 * static_cast<double>(j + 1);
      s += std::abs(m * (m - 1.0) * poly->coeffs[j] * p);
      p *= y * y;
    }
    return s;
  }
  return 0.0;
}

}  // namespace

PotentialSpec PotentialSpec::monomial(int kappa, double lambda) {
  return PotentialSpec{Monomial{kappa, lambda}};
}

PotentialSpec PotentialSpec::quartic_anharmonic(double omega, double lambda) {
  return PotentialSpec{QuarticAnharmonic{omega, lambda}};
}

PotentialSpec PotentialSpec::even_polynomial(std::vector<double> coeffs) {
  return PotentialSpec{EvenPolynomial{std::move(coeffs)}};
}

PotentialSpec PotentialSpec::from_polynomial(std::span<const double> coeffs) {
  std::vector<double> even;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::size_t power = i + 1;
    if (power % 2 == 1) {
      if (coeffs[i] != 0.0)
        throw Error(ErrorCode::NotSymmetric,
                    fmt::format("odd-power coefficient c_{} = {} breaks x -> -x symmetry", power,
                                coeffs[i]));
    } else {
      even.push_back(coeffs[i]);
    }
  }
  return even_polynomial(std::move(even));
}

PotentialDerivs Potential::evaluate_centered(double y) const {
  return std::visit(
      Overloaded{
          [y](const Monomial& m) {
            const double k = m.kappa;
            const double p = m.kappa >= 1 ? std::pow(y, 2 * m.kappa - 2) : 0.0;
            return PotentialDerivs{m.lambda * p * y * y, 2.0 * k * m.lambda * p * y,
                                   2.0 * k * (2.0 * k - 1.0) * m.lambda * p};
          },
          [y](const QuarticAnharmonic& q) {
            const double w2 = q.omega * q.omega;
            return PotentialDerivs{0.5 * w2 * y * y + q.lambda * y * y * y * y,
                                   w2 * y + 4.0 * q.lambda * y * y * y,
                                   w2 + 12.0 * q.lambda * y * y};
          },
          [y](const EvenPolynomial& p) { return eval_polynomial(p.coeffs, y); },
      },
      spec_.kind);
}

double Potential::virial_term(double y) const {
  return std::visit(
      Overloaded{
          [y](const Monomial& m) { return 2.0 * m.kappa * m.lambda * std::pow(y, 2 * m.kappa); },
          [y](const QuarticAnharmonic& q) {
            const double y2 = y * y;
            return q.omega * q.omega * y2 + 4.0 * q.lambda * y2 * y2;
          },
          [y](const EvenPolynomial& p) {
            double s = 0.0;
            const double y2 = y * y;
            double pw = y2;
            for (std::size_t j = 0; j < p.coeffs.size(); ++j) {
              s += 2.0 * static_cast<double>(j + 1) * p.coeffs[j] * pw;
              pw *= y2;
            }
            return s;
          },
      },
      spec_.kind);
}

std::string Potential::describe() const {
  std::string base = std::visit(
      Overloaded{
          [](const Monomial& m) {
            return fmt::format("monomial(kappa={}, lambda={})", m.kappa, m.lambda);
          },
          [](const QuarticAnharmonic& q) {
            return fmt::format("quartic-anharmonic(omega={}, lambda={})", q.omega, q.lambda);
          },
          [](const EvenPolynomial& p) {
            return fmt::format("even-polynomial(coeffs={})", fmt::join(p.coeffs, ","));
          },
      },
      spec_.kind);
  if (spec_.shifted) base += fmt::format(" shifted to xi={}", spec_.xi);
  return base;
}

double convexity_scan_radius(const Potential& potential) {
  const double target = 1e6 * potential.evaluate_centered(0.0).u + 1.0;
  double r = 1.0;
  for (int i = 0; i < 200 && potential.evaluate_centered(r).u < target; ++i) r *= 2.0;
  return r;
}

Potential validate(const PotentialSpec& spec) {
  if (!finite(spec.xi)) throw Error(ErrorCode::InvalidArgument, "xi must be finite");
  PotentialSpec checked = spec;
  if (!checked.shifted && checked.xi != 0.0) checked.shifted = true;

  std::visit(Overloaded{
                 [](const Monomial& m) {
                   if (m.kappa < 1)
                     throw Error(ErrorCode::InvalidArgument,
                                 fmt::format("kappa must be >= 1, got {}", m.kappa));
                   if (!finite(m.lambda))
                     throw Error(ErrorCode::InvalidArgument, "lambda must be finite");
                   if (m.lambda == 0.0)
                     throw Error(ErrorCode::DegeneratePotential, "lambda = 0 gives U = 0");
                   if (m.lambda < 0.0)
                     throw Error(ErrorCode::NotConvex,
                                 fmt::format("lambda = {} < 0: potential is concave and unbounded "
                                             "below",
                                             m.lambda));
                 },
                 [](const QuarticAnharmonic& q) {
                   if (!finite(q.omega) || !finite(q.lambda))
                     throw Error(ErrorCode::InvalidArgument, "omega and lambda must be finite");
                   if (q.omega < 0.0)
                     throw Error(ErrorCode::InvalidArgument, "omega must be >= 0");
                   if (q.lambda < 0.0)
                     throw Error(ErrorCode::NotConvex,
                                 fmt::format("lambda = {} < 0: quartic term is concave", q.lambda));
                   if (q.omega == 0.0 && q.lambda == 0.0)
                     throw Error(ErrorCode::DegeneratePotential, "omega = lambda = 0 gives U = 0");
                 },
                 [](const EvenPolynomial&) {},
             },
             checked.kind);

  if (auto* poly = std::get_if<EvenPolynomial>(&checked.kind)) {
    for (double c : poly->coeffs)
      if (!finite(c)) throw Error(ErrorCode::InvalidArgument, "coefficients must be finite");
    poly->coeffs = trimmed(std::move(poly->coeffs));
    if (poly->coeffs.empty())
      throw Error(ErrorCode::DegeneratePotential, "all polynomial coefficients are zero");
    if (poly->coeffs.back() < 0.0)
      throw Error(ErrorCode::NotConvex, "leading coefficient is negative");
  }

  Potential candidate(checked);

  const double radius = convexity_scan_radius(candidate);
  constexpr int kHalf = 500;
  auto check_at = [&](double y) {
    const auto plus = candidate.evaluate_centered(y);
    const auto minus = candidate.evaluate_centered(-y);
    if (std::abs(plus.u - minus.u) > 1e-12 * std::max(1.0, std::abs(plus.u)))
      throw Error(ErrorCode::NotSymmetric, fmt::format("U(xi+{0}) != U(xi-{0})", y));
    const double scale = curvature_scale(checked.kind, y);
    if (plus.d2u < -1e-12 * scale || (scale == 0.0 && plus.d2u < 0.0))
      throw Error(ErrorCode::NotConvex,
                  fmt::format("U''(xi+{}) = {} < 0", y, plus.d2u));
  };
  check_at(0.0);
  for (int k = 0; k < kHalf; ++k)
    check_at(radius * std::pow(10.0, -6.0 * k / (kHalf - 1)));

  if (candidate.evaluate_centered(0.0).du != 0.0)
    throw Error(ErrorCode::NotConvex, "U'(xi) != 0");
  return candidate;
}

Potential translate(const Potential& potential, double xi) {
  if (potential.shifted())
    throw Error(ErrorCode::AlreadyShifted, "potential is already shifted; translate the inner spec");
  if (!finite(xi)) throw Error(ErrorCode::InvalidArgument, "xi must be finite");
  if (xi == 0.0) return potential;
  PotentialSpec spec = potential.spec();
  spec.xi = xi;
  spec.shifted = true;
  return validate(spec);
}

}  // namespace virial
