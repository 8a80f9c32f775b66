#include "egregium/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "egregium/error.hpp"

namespace egregium {

VectorMap diagonal_linear_map(const Eigen::VectorXd& scale, const Eigen::VectorXd& center) {
  const int N = static_cast<int>(scale.size());
  VectorMap map;
  map.arity = N;
  map.outputs = N;
  map.provided_order = 3;
  map.evaluate = [scale, center, N](const Eigen::VectorXd& y, int order) {
    MapJet m;
    m.value = center + scale.cwiseProduct(y);
    if (order >= 1) m.first = scale.asDiagonal();
    const auto n = static_cast<std::size_t>(N);
    if (order >= 2) m.second = Array3({n, n, n});
    if (order >= 3) m.third = Array4({n, n, n, n});
    return m;
  };
  return map;
}

SurfacePatch geodesic_sphere(const SpaceForm& form, double radius) {
  require_valid_geodesic_radius(form, radius);
  const int N = form.ambient_dimension();
  const double rho = geodesic_sphere_model_radius(form, radius);
  return sphere_image_atlas(diagonal_linear_map(Eigen::VectorXd::Constant(N, rho),
                                                Eigen::VectorXd::Zero(N)),
                            form, Eigen::VectorXd::Zero(N));
}

SurfacePatch round_sphere(int ambient_dimension, double radius, const Eigen::VectorXd& center) {
  if (!(radius > 0.0)) throw Error(ErrorKind::Domain, "sphere radius must be positive");
  const SpaceForm form(0, ambient_dimension);
  const Eigen::VectorXd c =
      center.size() == 0 ? Eigen::VectorXd::Zero(ambient_dimension) : center;
  if (c.size() != ambient_dimension) {
    throw Error(ErrorKind::DimensionMismatch, "sphere centre has the wrong dimension");
  }
  return sphere_image_atlas(
      diagonal_linear_map(Eigen::VectorXd::Constant(ambient_dimension, radius), c), form, c);
}

SurfacePatch ellipsoid(const Eigen::VectorXd& semi_axes) {
  if ((semi_axes.array() <= 0.0).any()) {
    throw Error(ErrorKind::Domain, "ellipsoid semi-axes must be positive");
  }
  const int N = static_cast<int>(semi_axes.size());
  return sphere_image_atlas(diagonal_linear_map(semi_axes, Eigen::VectorXd::Zero(N)),
                            SpaceForm(0, N), Eigen::VectorXd::Zero(N));
}

SurfacePatch flattened_sphere(int ambient_dimension, double cap_start, double width) {
  if (!(cap_start > 0.0) || !(width > 0.0) || !(cap_start + width < 1.0)) {
    throw Error(ErrorKind::Domain, "cap must satisfy 0 < cap_start < cap_start + width < 1");
  }
  const int N = ambient_dimension;
  // phi' = 1 - S(t) with the septic smoothstep S(t) = 35t^4 - 84t^5 + 70t^6 - 20t^7.
  auto profile = [cap_start, width](double s, int d) {
    const double t = std::clamp((s - cap_start) / width, 0.0, 1.0);
    switch (d) {
      case 0:
        if (s <= cap_start) return s;
        return cap_start +
               width * (t - (7 * std::pow(t, 5) - 14 * std::pow(t, 6) + 10 * std::pow(t, 7) -
                             2.5 * std::pow(t, 8)));
      case 1:
        return 1.0 - (35 * std::pow(t, 4) - 84 * std::pow(t, 5) + 70 * std::pow(t, 6) -
                      20 * std::pow(t, 7));
      case 2:
        return -140 * std::pow(t, 3) * std::pow(1 - t, 3) / width;
      default:
        return -(420 * t * t - 1680 * std::pow(t, 3) + 2100 * std::pow(t, 4) -
                 840 * std::pow(t, 5)) /
               (width * width);
    }
  };
  VectorMap map;
  map.arity = N;
  map.outputs = N;
  map.provided_order = 3;
  map.evaluate = [profile, N](const Eigen::VectorXd& y, int order) {
    const auto n = static_cast<std::size_t>(N);
    const int last = N - 1;
    MapJet m;
    m.value = y;
    m.value(last) = profile(y(last), 0);
    if (order >= 1) {
      m.first = Eigen::MatrixXd::Identity(N, N);
      m.first(last, last) = profile(y(last), 1);
    }
    if (order >= 2) {
      m.second = Array3({n, n, n});
      m.second(last, last, last) = profile(y(last), 2);
    }
    if (order >= 3) {
      m.third = Array4({n, n, n, n});
      m.third(last, last, last, last) = profile(y(last), 3);
    }
    return m;
  };
  return sphere_image_atlas(std::move(map), SpaceForm(0, N), Eigen::VectorXd::Zero(N));
}

SurfacePatch cylinder(int ambient_dimension, double radius, double half_length) {
  if (!(radius > 0.0)) throw Error(ErrorKind::Domain, "cylinder radius must be positive");
  const int N = ambient_dimension;
  const int n = N - 1;
  VectorMap map;
  map.arity = n;
  map.outputs = N;
  map.provided_order = 3;
  map.evaluate = [radius, N, n](const Eigen::VectorXd& t, int order) {
    const auto Nz = static_cast<std::size_t>(N), nz = static_cast<std::size_t>(n);
    const double c = std::cos(t(0)), s = std::sin(t(0));
    MapJet m;
    m.value = Eigen::VectorXd::Zero(N);
    m.value(0) = radius * c;
    m.value(1) = radius * s;
    for (int i = 1; i < n; ++i) m.value(i + 1) = t(i);
    if (order >= 1) {
      m.first = Eigen::MatrixXd::Zero(N, n);
      m.first(0, 0) = -radius * s;
      m.first(1, 0) = radius * c;
      for (int i = 1; i < n; ++i) m.first(i + 1, i) = 1.0;
    }
    if (order >= 2) {
      m.second = Array3({Nz, nz, nz});
      m.second(0, 0, 0) = -radius * c;
      m.second(1, 0, 0) = -radius * s;
    }
    if (order >= 3) {
      m.third = Array4({Nz, nz, nz, nz});
      m.third(0, 0, 0, 0) = radius * s;
      m.third(1, 0, 0, 0) = -radius * c;
    }
    return m;
  };
  ParametricOptions options;
  options.interior_point = Eigen::VectorXd::Zero(N);
  return from_parametric(std::move(map), Box::cube(n, half_length), SpaceForm(0, N), options);
}

namespace {

SurfacePatch scaled_angle_chart(const SpaceForm& form, const Eigen::VectorXd& scale,
                                double margin) {
  const int N = form.ambient_dimension();
  const int n = N - 1;
  const VectorMap outer = diagonal_linear_map(scale, Eigen::VectorXd::Zero(N));
  VectorMap map;
  map.arity = n;
  map.outputs = N;
  map.provided_order = 3;
  map.evaluate = [outer](const Eigen::VectorXd& angles, int order) {
    const MapJet inner = hyperspherical_jet(angles, order);
    return compose(outer.jet(inner.value, order), inner, order);
  };
  Box domain{Eigen::VectorXd::Constant(n, margin),
             Eigen::VectorXd::Constant(n, std::numbers::pi - margin)};
  domain.lower(n - 1) = 0.0;
  domain.upper(n - 1) = 2.0 * std::numbers::pi;
  ParametricOptions options;
  options.interior_point = Eigen::VectorXd::Zero(N);
  return from_parametric(std::move(map), std::move(domain), form, options);
}

}  // namespace

SurfacePatch sphere_angle_chart(const SpaceForm& form, double model_radius, double margin) {
  if (!(model_radius > 0.0)) throw Error(ErrorKind::Domain, "sphere radius must be positive");
  return scaled_angle_chart(
      form, Eigen::VectorXd::Constant(form.ambient_dimension(), model_radius), margin);
}

SurfacePatch ellipsoid_angle_chart(const Eigen::VectorXd& semi_axes, double margin) {
  if ((semi_axes.array() <= 0.0).any()) {
    throw Error(ErrorKind::Domain, "ellipsoid semi-axes must be positive");
  }
  return scaled_angle_chart(SpaceForm(0, static_cast<int>(semi_axes.size())), semi_axes,
                            margin);
}

ScalarField polynomial_height(double value, const Eigen::VectorXd& gradient,
                              const Eigen::MatrixXd& hessian, const Array3& third) {
  const int n = static_cast<int>(gradient.size());
  if (hessian.rows() != n || hessian.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "hessian does not match the gradient");
  }
  const auto nz = static_cast<std::size_t>(n);
  Array3 T = third.empty() ? Array3({nz, nz, nz}) : third;
  if (T.extent(0) != nz || T.extent(1) != nz || T.extent(2) != nz) {
    throw Error(ErrorKind::DimensionMismatch, "third derivative does not match the gradient");
  }
  ScalarField u;
  u.arity = n;
  u.provided_order = 3;
  u.evaluate = [value, gradient, hessian, T, n](const Eigen::VectorXd& x, int order) {
    // T contracted once and twice with x.
    Eigen::MatrixXd Tx = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) Tx(i, j) += T(i, j, k) * x(k);
    const Eigen::VectorXd Txx = Tx * x;
    ScalarJet jet;
    jet.value = value + gradient.dot(x) + 0.5 * x.dot(hessian * x) + x.dot(Txx) / 6.0;
    if (order >= 1) jet.gradient = gradient + hessian * x + 0.5 * Txx;
    if (order >= 2) jet.hessian = hessian + Tx;
    if (order >= 3) jet.third = T;
    return jet;
  };
  return u;
}

}  // namespace egregium
