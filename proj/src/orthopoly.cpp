#include "orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "error.hpp"

namespace virial {

namespace {

constexpr double kMinNorm = 1e-20;

void check_inputs(const VirialWeight& weight, int n_max) {
  if (!weight.normalized())
    throw Error(ErrorCode::InvalidArgument, "basis construction needs a normalized weight");
  if (n_max < 0 || n_max > OrthoBasis::kMaxOrder)
    throw Error(ErrorCode::OrderOutOfRange,
                fmt::format("n_max = {} outside [0, {}]", n_max, OrthoBasis::kMaxOrder));
}

// phi_0..phi_m at y from recurrence arrays that are filled up to m.
void recurrence_values(const std::vector<double>& b, const std::vector<double>& c, int m,
                       double y, std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(m) + 1);
  out[0] = 1.0;
  if (m >= 1) out[1] = b[1] * y;
  for (int n = 2; n <= m; ++n) out[n] = b[n] * (y * out[n - 1] - c[n] * out[n - 2]);
}

double horner(const std::vector<double>& row, double y) {
  double acc = 0.0;
  for (auto it = row.rbegin(); it != row.rend(); ++it) acc = acc * y + *it;
  return acc;
}

Parity parity_of(int degree) { return degree % 2 == 0 ? Parity::Even : Parity::Odd; }

}  // namespace

const std::vector<double>& OrthoBasis::row(int n) const {
  if (n < 0 || n > n_max_)
    throw Error(ErrorCode::OrderOutOfRange, fmt::format("order {} outside [0, {}]", n, n_max_));
  return coeffs_[n];
}

double OrthoBasis::coeff(int n, int j) const {
  const auto& r = row(n);
  if (j < 0 || j > n) return 0.0;
  return r[j];
}

PolyValue OrthoBasis::eval_centered(int n, double y) const {
  if (n < 0 || n > n_max_)
    throw Error(ErrorCode::OrderOutOfRange, fmt::format("order {} outside [0, {}]", n, n_max_));
  double p_prev = 0.0, d_prev = 0.0;  // phi_{k-2}
  double p = 1.0, d = 0.0;            // phi_{k-1}
  for (int k = 1; k <= n; ++k) {
    const double ck = k >= 2 ? c_[k] : 0.0;
    const double p_next = b_[k] * (y * p - ck * p_prev);
    const double d_next = b_[k] * (p + y * d - ck * d_prev);
    p_prev = p;
    d_prev = d;
    p = p_next;
    d = d_next;
  }
  return {p, d};
}

double OrthoBasis::eval_expanded(int n, double x) const {
  return horner(row(n), x - weight_->potential().xi());
}

std::string OrthoBasis::coefficients_csv() const {
  std::string out = "n";
  for (int j = 0; j <= n_max_; ++j) out += fmt::format(",a_{}", j);
  out += '\n';
  for (int n = 0; n <= n_max_; ++n) {
    out += fmt::format("{}", n);
    for (int j = 0; j <= n_max_; ++j) out += fmt::format(",{:.17g}", j <= n ? coeffs_[n][j] : 0.0);
    out += '\n';
  }
  return out;
}

OrthoBasis three_term(const VirialWeight& weight, int n_max) {
  check_inputs(weight, n_max);
  OrthoBasis basis;
  basis.method_ = BasisMethod::ThreeTerm;
  basis.n_max_ = n_max;
  basis.weight_ = std::make_shared<const VirialWeight>(weight);
  basis.b_.assign(n_max + 1, 0.0);
  basis.c_.assign(n_max + 1, 0.0);
  basis.b_[0] = 1.0;
  basis.coeffs_.push_back({1.0});

  const auto& w = *basis.weight_;
  double smallest = 1.0, largest = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    const auto& b = basis.b_;
    const auto& c = basis.c_;
    const int m = n - 1;
    double coupling = 0.0;
    if (n >= 2) {
      coupling = w.expectation(
          [&, m](double y) {
            thread_local std::vector<double> v;
            recurrence_values(b, c, m, y, v);
            return y * v[m] * v[m - 1];
          },
          Parity::Even, 2 * n);
    }
    const double spread = w.expectation(
        [&, m](double y) {
          thread_local std::vector<double> v;
          recurrence_values(b, c, m, y, v);
          return y * y * v[m] * v[m];
        },
        Parity::Even, 2 * n);
    const double den = spread - coupling * coupling;
    if (!(den > kMinNorm))
      throw Error(ErrorCode::IllConditioned,
                  fmt::format("recurrence normalization {} at order {}", den, n));
    smallest = std::min(smallest, den);
    largest = std::max(largest, den);
    basis.c_[n] = coupling;
    basis.b_[n] = 1.0 / std::sqrt(den);

    std::vector<double> next(static_cast<std::size_t>(n) + 1, 0.0);
    const auto& prev = basis.coeffs_[n - 1];
    for (int j = 0; j < n; ++j) next[j + 1] = prev[j];
    if (n >= 2) {
      const auto& prev2 = basis.coeffs_[n - 2];
      for (int j = 0; j <= n - 2; ++j) next[j] -= coupling * prev2[j];
    }
    for (double& v : next) v *= basis.b_[n];
    basis.coeffs_.push_back(std::move(next));
  }
  basis.conditioning_ = smallest / largest;
  return basis;
}

OrthoBasis gram_schmidt(const VirialWeight& weight, int n_max) {
  check_inputs(weight, n_max);
  OrthoBasis basis;
  basis.method_ = BasisMethod::GramSchmidt;
  basis.n_max_ = n_max;
  basis.weight_ = std::make_shared<const VirialWeight>(weight);
  basis.coeffs_.push_back({1.0});
  const auto& w = *basis.weight_;
  auto& rows = basis.coeffs_;

  double smallest = 1.0, largest = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    // residual r = y^n - sum_k <r phi_k> phi_k over same-parity k, two sweeps
    std::vector<double> r(static_cast<std::size_t>(n) + 1, 0.0);
    r[n] = 1.0;
    for (int sweep = 0; sweep < 2; ++sweep) {
      std::vector<double> proj(static_cast<std::size_t>(n), 0.0);
      for (int k = n % 2; k < n; k += 2) {
        proj[k] = w.expectation(
            [&](double y) { return horner(r, y) * horner(rows[k], y); },
            parity_of(n + k), 2 * n);
      }
      for (int k = n % 2; k < n; k += 2)
        for (int j = 0; j <= k; ++j) r[j] -= proj[k] * rows[k][j];
    }
    for (int j = (n + 1) % 2; j <= n; j += 2) r[j] = 0.0;  // opposite parity is exactly zero

    const double norm2 = w.expectation(
        [&](double y) {
          const double v = horner(r, y);
          return v * v;
        },
        Parity::Even, 2 * n);
    if (!(norm2 > kMinNorm))
      throw Error(ErrorCode::IllConditioned,
                  fmt::format("Gram-Schmidt residual norm {} at order {}", norm2, n));
    smallest = std::min(smallest, norm2);
    largest = std::max(largest, norm2);
    const double a = 1.0 / std::sqrt(norm2);
    for (double& v : r) v *= a;
    rows.push_back(std::move(r));
  }

  basis.b_.assign(n_max + 1, 0.0);
  basis.c_.assign(n_max + 1, 0.0);
  basis.b_[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    basis.b_[n] = rows[n][n] / rows[n - 1][n - 1];
    if (n >= 2) basis.c_[n] = rows[n - 2][n - 2] / rows[n - 1][n - 1];
  }
  basis.conditioning_ = smallest / largest;
  return basis;
}

}  // namespace virial
