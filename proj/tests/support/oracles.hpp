#pragma once

// Reference computations written independently of the library code paths.

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "egregium/curvature.hpp"

namespace oracle {

/// sigma_m by summing products over all m-subsets (bitmask enumeration).
inline double sigma(const std::vector<double>& kappa, int m) {
  const int n = static_cast<int>(kappa.size());
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != m) continue;
    double product = 1.0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) product *= kappa[i];
    total += product;
  }
  return total;
}

inline double sigma_excluding(std::vector<double> kappa, int m, int i) {
  kappa.erase(kappa.begin() + i);
  return sigma(kappa, m);
}

inline double norm_sq(const std::vector<double>& kappa) {
  double s = 0.0;
  for (double k : kappa) s += k * k;
  return s;
}

/// Q_ab = kappa_a kappa_b filled entry by entry.
inline egregium::PairProductMatrix products(const std::vector<double>& kappa) {
  const int n = static_cast<int>(kappa.size());
  egregium::PairProductMatrix Q(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) Q.set(a, b, kappa[a] * kappa[b]);
  return Q;
}

inline std::vector<double> to_std(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

inline std::vector<double> negated(std::vector<double> v) {
  for (double& x : v) x = -x;
  return v;
}

/// Largest difference of the sorted sequences.
inline double multiset_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return INFINITY;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double max_abs_difference(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline std::vector<double> uniform_vector(std::mt19937_64& gen, int n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(gen);
  return v;
}

/// Conformal factor of the standard ball / stereographic model.
inline double conformal_factor(int curvature, const Eigen::VectorXd& X) {
  return curvature == 0 ? 1.0 : 2.0 / (1.0 + curvature * X.squaredNorm());
}

/// Random orthogonal matrix from a QR factorisation.
inline Eigen::MatrixXd random_rotation(std::mt19937_64& gen, int n) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = normal(gen);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
}

/// Symmetric matrix with unit diagonal-free random entries; generic such Q
/// violates the rank-one product structure.
inline egregium::PairProductMatrix random_symmetric(std::mt19937_64& gen, int n, double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  egregium::PairProductMatrix Q(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) Q.set(a, b, dist(gen));
  return Q;
}

}  // namespace oracle
