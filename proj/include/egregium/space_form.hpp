#pragma once

#include <Eigen/Dense>

namespace egregium {

/// Constant-curvature ambient space realised in a single conformal chart.
///
/// The metric is lambda(X)^2 * delta with lambda = 2 / (1 + K|X|^2) for
/// K = +1 (stereographic sphere) and K = -1 (Poincare ball); the flat model
/// uses lambda = 1. Both curved models have sectional curvature exactly K.
class SpaceForm {
 public:
  /// Throws Error{Domain} unless curvature_sign is -1, 0 or +1 and
  /// ambient_dimension >= 4.
  SpaceForm(int curvature_sign, int ambient_dimension);

  int curvature() const noexcept { return curvature_; }
  int ambient_dimension() const noexcept { return dimension_; }
  int hypersurface_dimension() const noexcept { return dimension_ - 1; }

  bool contains(const Eigen::VectorXd& X) const;
  /// Throws Error{ModelDomain} when X is outside the chart.
  void require_contains(const Eigen::VectorXd& X) const;

  double conformal_factor(const Eigen::VectorXd& X) const;
  Eigen::MatrixXd metric(const Eigen::VectorXd& X) const;

  /// Gradient of log(lambda); the Christoffel symbols of a conformally flat
  /// metric are Gamma^K_IJ = delta_IK d_J + delta_JK d_I - delta_IJ d_K.
  Eigen::VectorXd log_factor_gradient(const Eigen::VectorXd& X) const;

  friend bool operator==(const SpaceForm&, const SpaceForm&) = default;

 private:
  int curvature_;
  int dimension_;
};

/// Value, gradient and Hessian of the scalar c = lambda^2 at one point; the
/// metric is c * delta so its derivatives are those of c times delta_IJ.
struct AmbientMetricJet {
  double scale = 1.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;

  Eigen::MatrixXd metric() const;
  /// d_K g_IJ
  double first_derivative(int I, int J, int K) const {
    return I == J ? gradient(K) : 0.0;
  }
  /// d_K d_L g_IJ
  double second_derivative(int I, int J, int K, int L) const {
    return I == J ? hessian(K, L) : 0.0;
  }
};

AmbientMetricJet ambient_metric_jet(const SpaceForm& form, const Eigen::VectorXd& X);

inline Eigen::MatrixXd ambient_metric(const SpaceForm& form, const Eigen::VectorXd& X) {
  return form.metric(X);
}

/// Euclidean radius, in model coordinates, of the geodesic sphere of the
/// given intrinsic radius centred at the chart origin.
double geodesic_sphere_model_radius(const SpaceForm& form, double radius);

/// Principal curvature of that sphere: 1/r, coth r or cot r.
double geodesic_sphere_curvature(const SpaceForm& form, double radius);

/// Throws Error{Domain} for radius <= 0, or radius >= pi/2 when K = +1.
void require_valid_geodesic_radius(const SpaceForm& form, double radius);

}  // namespace egregium
