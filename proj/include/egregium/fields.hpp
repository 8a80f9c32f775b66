#pragma once

#include <Eigen/Dense>
#include <functional>

#include "egregium/tensor.hpp"

namespace egregium {

/// Value and derivatives of a scalar function of several variables. The
/// third-derivative array is left empty unless order 3 was requested.
struct ScalarJet {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
  Array3 third;
};

/// Value and derivatives of a map R^arity -> R^outputs. second(a, i, j) is
/// d_i d_j of component a; third(a, i, j, k) likewise.
struct MapJet {
  Eigen::VectorXd value;
  Eigen::MatrixXd first;
  Array3 second;
  Array4 third;
};

/// Scalar field with caller-supplied derivatives up to `provided_order`.
/// Missing orders are filled by central differences of the highest supplied
/// order (step 1e-5 per level on unit-scaled inputs).
struct ScalarField {
  int arity = 0;
  int provided_order = 0;
  std::function<ScalarJet(const Eigen::VectorXd&, int order)> evaluate;

  ScalarJet jet(const Eigen::VectorXd& x, int order) const;
  double value(const Eigen::VectorXd& x) const { return jet(x, 0).value; }
};

/// Map with caller-supplied derivatives up to `provided_order`; same fallback
/// policy as ScalarField.
struct VectorMap {
  int arity = 0;
  int outputs = 0;
  int provided_order = 0;
  std::function<MapJet(const Eigen::VectorXd&, int order)> evaluate;

  MapJet jet(const Eigen::VectorXd& x, int order) const;
};

/// Finite-difference step for the given number of missing derivative levels.
double finite_difference_step(int levels);

/// Symmetrises the trailing three slots of a third-derivative array in place.
void symmetrize_third(Array4& third);

/// Jet of outer(inner(x)) to the requested order (at most 3).
MapJet compose(const MapJet& outer, const MapJet& inner, int order);

}  // namespace egregium
