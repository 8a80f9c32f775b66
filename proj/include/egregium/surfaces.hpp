#pragma once

#include <Eigen/Dense>

#include "egregium/fields.hpp"
#include "egregium/hypersurface.hpp"
#include "egregium/space_form.hpp"

namespace egregium {

/// Geodesic sphere of the given radius about the model origin, as a closed
/// atlas. Principal curvatures 1/r, coth r or cot r for K = 0, -1, +1.
/// Error{Domain} unless r > 0 (and r < pi/2 for K = +1).
SurfacePatch geodesic_sphere(const SpaceForm& form, double radius);

/// Euclidean round sphere in R^N about `center` (origin when empty).
SurfacePatch round_sphere(int ambient_dimension, double radius,
                          const Eigen::VectorXd& center = {});

/// Ellipsoid sum x_i^2 / a_i^2 = 1 in flat space, as a closed atlas.
SurfacePatch ellipsoid(const Eigen::VectorXd& semi_axes);

/// Unit sphere in flat R^N whose top is pressed into a flat disc: the last
/// coordinate s is replaced by phi(s), equal to s below `cap_start` and
/// constant above cap_start + width, blended with C^3 smoothness. The disc
/// is a region where all principal curvatures vanish.
SurfacePatch flattened_sphere(int ambient_dimension, double cap_start = 0.5,
                              double width = 0.3);

/// S^1(r) x R^{n-1} patch in flat R^{n+1}; curvatures (0, ..., 0, 1/r).
SurfacePatch cylinder(int ambient_dimension, double radius = 1.0, double half_length = 0.5);

/// Single hyperspherical-angle chart of the model sphere |X| = model_radius,
/// with angles in [margin, pi - margin] and the last one in [0, 2 pi].
/// Reference normal towards the origin.
SurfacePatch sphere_angle_chart(const SpaceForm& form, double model_radius,
                                double margin = 0.3);

/// Angle chart of the ellipsoid with the given semi-axes in flat space.
SurfacePatch ellipsoid_angle_chart(const Eigen::VectorXd& semi_axes, double margin = 0.3);

/// Exact cubic u(x) = value + gradient.x + x^T hessian x / 2 + third[x, x, x] / 6
/// with all derivatives up to order 3. `third` must be symmetric.
ScalarField polynomial_height(double value, const Eigen::VectorXd& gradient,
                              const Eigen::MatrixXd& hessian, const Array3& third = {});

/// Linear ambient map y -> center + diag(scale) y with exact jets.
VectorMap diagonal_linear_map(const Eigen::VectorXd& scale, const Eigen::VectorXd& center);

}  // namespace egregium
