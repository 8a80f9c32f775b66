#include "egregium/space_form.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "egregium/error.hpp"

namespace egregium {

SpaceForm::SpaceForm(int curvature_sign, int ambient_dimension)
    : curvature_(curvature_sign), dimension_(ambient_dimension) {
  if (curvature_sign < -1 || curvature_sign > 1) {
    throw Error(ErrorKind::Domain,
                "curvature sign must be -1, 0 or +1, got " + std::to_string(curvature_sign));
  }
  if (ambient_dimension < 4) {
    throw Error(ErrorKind::Domain,
                "ambient dimension must be at least 4, got " + std::to_string(ambient_dimension));
  }
}

bool SpaceForm::contains(const Eigen::VectorXd& X) const {
  if (X.size() != dimension_) return false;
  if (!X.allFinite()) return false;
  if (curvature_ == -1) return X.squaredNorm() < 1.0;
  return true;
}

void SpaceForm::require_contains(const Eigen::VectorXd& X) const {
  if (X.size() != dimension_) {
    throw Error(ErrorKind::DimensionMismatch,
                "point has " + std::to_string(X.size()) + " coordinates, model has " +
                    std::to_string(dimension_));
  }
  if (!contains(X)) {
    throw Error(ErrorKind::ModelDomain, "point lies outside the model chart (|X|^2 = " +
                                            std::to_string(X.squaredNorm()) + ")");
  }
}

double SpaceForm::conformal_factor(const Eigen::VectorXd& X) const {
  if (curvature_ == 0) return 1.0;
  return 2.0 / (1.0 + curvature_ * X.squaredNorm());
}

Eigen::MatrixXd SpaceForm::metric(const Eigen::VectorXd& X) const {
  require_contains(X);
  const double lambda = conformal_factor(X);
  return lambda * lambda * Eigen::MatrixXd::Identity(dimension_, dimension_);
}

Eigen::VectorXd SpaceForm::log_factor_gradient(const Eigen::VectorXd& X) const {
  if (curvature_ == 0) return Eigen::VectorXd::Zero(dimension_);
  const double s = 1.0 + curvature_ * X.squaredNorm();
  return (-2.0 * curvature_ / s) * X;
}

Eigen::MatrixXd AmbientMetricJet::metric() const {
  return scale * Eigen::MatrixXd::Identity(gradient.size(), gradient.size());
}

AmbientMetricJet ambient_metric_jet(const SpaceForm& form, const Eigen::VectorXd& X) {
  form.require_contains(X);
  const int N = form.ambient_dimension();
  AmbientMetricJet jet;
  if (form.curvature() == 0) {
    jet.scale = 1.0;
    jet.gradient = Eigen::VectorXd::Zero(N);
    jet.hessian = Eigen::MatrixXd::Zero(N, N);
    return jet;
  }
  // c = 4 s^-2 with s = 1 + K|X|^2
  const double K = form.curvature();
  const double s = 1.0 + K * X.squaredNorm();
  const double s2 = s * s;
  jet.scale = 4.0 / s2;
  jet.gradient = (-16.0 * K / (s2 * s)) * X;
  jet.hessian = (-16.0 * K / (s2 * s)) * Eigen::MatrixXd::Identity(N, N) +
                (96.0 * K * K / (s2 * s2)) * (X * X.transpose());
  return jet;
}

double geodesic_sphere_model_radius(const SpaceForm& form, double radius) {
  require_valid_geodesic_radius(form, radius);
  switch (form.curvature()) {
    case -1: return std::tanh(0.5 * radius);
    case 1: return std::tan(0.5 * radius);
    default: return radius;
  }
}

double geodesic_sphere_curvature(const SpaceForm& form, double radius) {
  require_valid_geodesic_radius(form, radius);
  switch (form.curvature()) {
    case -1: return 1.0 / std::tanh(radius);
    case 1: return 1.0 / std::tan(radius);
    default: return 1.0 / radius;
  }
}

void require_valid_geodesic_radius(const SpaceForm& form, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::Domain, "geodesic radius must be positive");
  }
  if (form.curvature() == 1 && radius >= 0.5 * std::numbers::pi) {
    throw Error(ErrorKind::Domain,
                "geodesic radius must stay below pi/2 in the open hemisphere");
  }
}

}  // namespace egregium
