#include "virial_weight.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <fmt/format.h>

#include "error.hpp"

namespace virial {

namespace {

using Panel = boost::math::quadrature::gauss<double, 20>;

constexpr double kHarmonicSwitch = 1e-12;  // lambda < 1e-12 omega^2 -> exact g = omega y^2 / 2
constexpr double kKnotCeiling = 1000.0;     // exp(-2g) underflows long before this

}  // namespace

const char* to_string(WeightMode mode) noexcept {
  switch (mode) {
    case WeightMode::ClosedFormMonomial: return "ClosedFormMonomial";
    case WeightMode::ClosedFormQuarticAnharmonic: return "ClosedFormQuarticAnharmonic";
    case WeightMode::NumericG: return "NumericG";
  }
  return "Unknown";
}

double VirialWeight::dg_centered(double y) const {
  switch (mode_) {
    case WeightMode::ClosedFormMonomial: {
      const double s = std::sqrt(2.0 * mono_kappa_ * mono_lambda_);
      return std::copysign(s * std::pow(std::abs(y), mono_kappa_), y);
    }
    case WeightMode::ClosedFormQuarticAnharmonic:
      if (harmonic_) return omega_ * y;
      return y * std::sqrt(omega_ * omega_ + 4.0 * lambda_ * y * y);
    case WeightMode::NumericG:
      return std::copysign(std::sqrt(potential_.virial_term(y)), y);
  }
  return 0.0;
}

double VirialWeight::g_centered(double y) const {
  const double a = std::abs(y);
  switch (mode_) {
    case WeightMode::ClosedFormMonomial:
      return mono_coef_ * std::pow(a, mono_kappa_ + 1);
    case WeightMode::ClosedFormQuarticAnharmonic: {
      if (harmonic_) return 0.5 * omega_ * y * y;
      const double w2 = omega_ * omega_;
      const double u = 4.0 * lambda_ * y * y / w2;
      // (1+u)^(3/2) - 1 without cancellation near y = 0
      return w2 * omega_ / (12.0 * lambda_) * std::expm1(1.5 * std::log1p(u));
    }
    case WeightMode::NumericG:
      return numeric_g(a);
  }
  return 0.0;
}

double VirialWeight::numeric_g(double y) const {
  const auto& table = *knots_;
  auto slope = [this](double t) { return std::sqrt(potential_.virial_term(t)); };
  const std::size_t last = table.values.size() - 1;
  std::size_t k = static_cast<std::size_t>(y / table.step);
  if (k > last) k = last;
  double start = k * table.step;
  double acc = table.values[k];
  // beyond the table: march in knot-sized panels
  while (y - start > table.step) {
    acc += Panel::integrate(slope, start, start + table.step);
    start += table.step;
  }
  if (y > start) acc += Panel::integrate(slope, start, y);
  return acc;
}

double VirialWeight::chi(double x) const { return norm_ * std::exp(-g(x)); }

double VirialWeight::sigma(double x) const { return norm_ * norm_ * std::exp(-2.0 * g(x)); }

double VirialWeight::expectation(const RealFn& f, Parity parity, int degree_hint) const {
  QuadratureSettings s = settings_;
  if (degree_hint > s.integrand_degree) s.integrand_degree = degree_hint;
  auto decay = [this](double y) { return g_centered(y); };
  const double n2 = normalized_ ? norm_ * norm_ : 1.0;
  return n2 * integrate_weighted(f, decay, s, parity).value;
}

double VirialWeight::closed_moment(int order) const {
  const double p = mono_kappa_ + 1.0;
  const double two_a = 2.0 * mono_coef_;
  return std::pow(two_a, -order / p) * monomial_base_ratio(mono_kappa_, order / 2);
}

double VirialWeight::quadrature_moment(int order) const {
  return expectation([order](double y) { return std::pow(y, order); }, Parity::Even, order);
}

double VirialWeight::moment(int order) const {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "moment order must be >= 0");
  if (!normalized_) throw Error(ErrorCode::InvalidArgument, "moment() needs a normalized weight");
  if (order % 2 == 1) return 0.0;
  if (mode_ == WeightMode::ClosedFormMonomial) return closed_moment(order);
  const auto i = static_cast<std::size_t>(order / 2);
  if (i < even_moments_.size()) return even_moments_[i];
  return quadrature_moment(order);
}

VirialWeight build_g(const Potential& potential, const QuadratureSettings& settings) {
  settings.check();
  VirialWeight w(potential, settings);
  if (const auto* m = std::get_if<Monomial>(&potential.kind())) {
    w.mode_ = WeightMode::ClosedFormMonomial;
    w.mono_kappa_ = m->kappa;
    w.mono_lambda_ = m->lambda;
  } else if (const auto* q = std::get_if<QuarticAnharmonic>(&potential.kind())) {
    if (q->omega == 0.0) {
      // pure quartic: the closed form degenerates to the kappa = 2 monomial
      w.mode_ = WeightMode::ClosedFormMonomial;
      w.mono_kappa_ = 2;
      w.mono_lambda_ = q->lambda;
    } else {
      w.mode_ = WeightMode::ClosedFormQuarticAnharmonic;
      w.omega_ = q->omega;
      w.lambda_ = q->lambda;
      w.harmonic_ = q->lambda < kHarmonicSwitch * q->omega * q->omega;
    }
  } else {
    w.mode_ = WeightMode::NumericG;
  }

  if (w.mode_ == WeightMode::ClosedFormMonomial) {
    w.mono_coef_ = std::sqrt(2.0 * w.mono_kappa_ * w.mono_lambda_) / (w.mono_kappa_ + 1.0);
    return w;
  }
  if (w.mode_ != WeightMode::NumericG) return w;

  // Length scale l where l * g'(l) = 1, then knots every l / 8.
  auto slope = [&potential](double t) { return std::sqrt(potential.virial_term(t)); };
  auto reach = [&slope](double t) { return t * slope(t); };
  double lo = 1.0;
  double hi = 1.0;
  if (reach(1.0) < 1.0) {
    while (reach(hi) < 1.0) hi *= 2.0;
    lo = hi / 2.0;
  } else {
    while (reach(lo) >= 1.0) lo /= 2.0;
    hi = lo * 2.0;
  }
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (reach(mid) < 1.0 ? lo : hi) = mid;
  }
  auto table = std::make_shared<VirialWeight::KnotTable>();
  table->step = hi / 8.0;
  table->values.push_back(0.0);
  while (table->values.back() < kKnotCeiling) {
    if (table->values.size() > 200000)
      throw Error(ErrorCode::NoConvergence, "virial function grows too slowly to tabulate");
    const double a = (table->values.size() - 1) * table->step;
    table->values.push_back(table->values.back() + Panel::integrate(slope, a, a + table->step));
  }
  w.knots_ = std::move(table);
  return w;
}

VirialWeight normalize(const VirialWeight& weight) {
  VirialWeight w = weight;
  if (w.mode_ == WeightMode::ClosedFormMonomial) {
    const double p = w.mono_kappa_ + 1.0;
    w.norm_ = std::pow(2.0 * w.mono_coef_, 1.0 / (2.0 * p)) /
              std::sqrt(monomial_base_integral(w.mono_kappa_, 0));
    w.normalized_ = true;
    return w;
  }
  w.normalized_ = false;
  const double mass = w.expectation([](double) { return 1.0; }, Parity::Even);
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw Error(ErrorCode::NoConvergence, fmt::format("normalization integral is {}", mass));
  w.norm_ = 1.0 / std::sqrt(mass);
  w.normalized_ = true;
  w.even_moments_.clear();
  w.even_moments_.push_back(1.0);
  for (int order = 2; order <= VirialWeight::kMomentTableOrder; order += 2)
    w.even_moments_.push_back(w.quadrature_moment(order));
  return w;
}

}  // namespace virial
