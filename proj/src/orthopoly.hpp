#pragma once

#include <memory>
#include <string>
#include <vector>

#include "virial_weight.hpp"

namespace virial {

enum class BasisMethod { GramSchmidt, ThreeTerm };

struct PolyValue {
  double value = 0.0;
  double deriv = 0.0;
};

// Orthonormal polynomials phi_0..phi_nmax in y = x - xi under sigma.
// Stored twice: as the symmetric three-term recurrence
//   phi_n = b_n (y phi_{n-1} - c_n phi_{n-2})
// and as the expanded coefficient table alpha_nj (phi_n = sum_j alpha_nj y^j).
class OrthoBasis {
 public:
  static constexpr int kMaxOrder = 12;

  int n_max() const noexcept { return n_max_; }
  BasisMethod method() const noexcept { return method_; }
  const VirialWeight& weight() const noexcept { return *weight_; }
  std::shared_ptr<const VirialWeight> weight_ptr() const noexcept { return weight_; }

  const std::vector<double>& recur_b() const noexcept { return b_; }
  const std::vector<double>& recur_c() const noexcept { return c_; }
  const std::vector<double>& row(int n) const;
  double coeff(int n, int j) const;

  /// Smallest over largest normalization encountered while building.
  double conditioning() const noexcept { return conditioning_; }

  // phi_n and phi_n' at absolute x, by the recurrence.
  PolyValue eval(int n, double x) const { return eval_centered(n, x - weight_->potential().xi()); }
  PolyValue eval_centered(int n, double y) const;
  // Horner on the coefficient table (cross-check path).
  double eval_expanded(int n, double x) const;

  /// CSV with header "n,a_0,...,a_nmax".
  std::string coefficients_csv() const;

 private:
  friend OrthoBasis gram_schmidt(const VirialWeight&, int);
  friend OrthoBasis three_term(const VirialWeight&, int);
  OrthoBasis() = default;

  int n_max_ = 0;
  BasisMethod method_ = BasisMethod::ThreeTerm;
  std::shared_ptr<const VirialWeight> weight_;
  std::vector<double> b_;
  std::vector<double> c_;
  std::vector<std::vector<double>> coeffs_;
  double conditioning_ = 1.0;
};

OrthoBasis gram_schmidt(const VirialWeight& weight, int n_max);
OrthoBasis three_term(const VirialWeight& weight, int n_max);

inline OrthoBasis build_basis(const VirialWeight& weight, int n_max, BasisMethod method) {
  return method == BasisMethod::GramSchmidt ? gram_schmidt(weight, n_max)
                                            : three_term(weight, n_max);
}

}  // namespace virial
