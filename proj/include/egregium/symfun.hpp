#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace egregium {

/// sigma_0..sigma_n of a curvature vector; sigma_0 = 1.
class SigmaVector {
 public:
  /// Throws Error{Domain} unless values[0] == 1.
  explicit SigmaVector(std::vector<double> values);
  static SigmaVector from_kappa(std::span<const double> kappa);

  int dimension() const noexcept { return static_cast<int>(values_.size()) - 1; }
  double operator[](int m) const { return values_.at(m); }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/// All sigma_m(kappa) as the coefficients of prod_i (1 + kappa_i t).
std::vector<double> elementary_symmetric_all(std::span<const double> kappa);

/// sigma_m(kappa); Error{Index} unless 0 <= m <= n.
double elementary_symmetric(std::span<const double> kappa, int m);

/// sigma_m of kappa with entry i removed; Error{Index} unless
/// 0 <= m <= n - 1 and i is a valid index.
double elementary_symmetric_excluding(std::span<const double> kappa, int m, int i);

/// Roots of prod (t - kappa_i) = sum_m (-1)^m sigma_m t^{n-m}, ascending.
///
/// Companion-matrix eigenvalues; eigenvalues that split off a multiple real
/// root are merged back by averaging their cluster. Error{NonRealRoots} if a
/// root (or a cluster mean) keeps an imaginary part above 1e-7 relative to
/// max(1, |root|).
std::vector<double> kappa_from_sigma(const SigmaVector& sigma);

inline std::span<const double> as_span(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace egregium
