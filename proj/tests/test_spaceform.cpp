#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "egregium/curvature.hpp"
#include "egregium/space_form.hpp"
#include "egregium/surfaces.hpp"
#include "support/checks.hpp"
#include "support/oracles.hpp"

using namespace egregium;

TEST_SUITE("spaceform") {

TEST_CASE("space form rejects invalid curvature and dimension") {
  CHECK(checks::error_kind([] { SpaceForm(2, 4); }) == ErrorKind::Domain);
  CHECK(checks::error_kind([] { SpaceForm(0, 3); }) == ErrorKind::Domain);
  CHECK_NOTHROW(SpaceForm(-1, 4));
}

TEST_CASE("flat metric is the identity everywhere") {
  const SpaceForm flat(0, 4);
  Eigen::VectorXd X(4);
  X << 3.0, -7.0, 0.5, 100.0;
  CHECK((ambient_metric(flat, X) - Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("curved models have metric 4 I at the origin") {
  for (int K : {-1, 1}) {
    const SpaceForm form(K, 4);
    const Eigen::VectorXd origin = Eigen::VectorXd::Zero(4);
    CHECK((ambient_metric(form, origin) - 4.0 * Eigen::MatrixXd::Identity(4, 4)).norm() <
          1e-15);
  }
}

TEST_CASE("metric matches the conformal factor oracle and is positive definite") {
  std::mt19937_64 gen(11);
  for (int K : {-1, 0, 1}) {
    const SpaceForm form(K, 5);
    for (int trial = 0; trial < 50; ++trial) {
      const auto coords = oracle::uniform_vector(gen, 5, -0.4, 0.4);
      const Eigen::VectorXd X = Eigen::Map<const Eigen::VectorXd>(coords.data(), 5);
      const Eigen::MatrixXd g = ambient_metric(form, X);
      const double lambda = oracle::conformal_factor(K, X);
      CHECK((g - lambda * lambda * Eigen::MatrixXd::Identity(5, 5)).norm() < 1e-14);
      CHECK((g - g.transpose()).norm() == 0.0);
      CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g).eigenvalues().minCoeff() > 0.0);
    }
  }
}

TEST_CASE("hyperbolic ball rejects points on or outside the unit sphere") {
  const SpaceForm hyperbolic(-1, 4);
  Eigen::VectorXd X = Eigen::VectorXd::Zero(4);
  X(0) = 1.0;
  CHECK_FALSE(hyperbolic.contains(X));
  CHECK(checks::error_kind([&] { ambient_metric_jet(hyperbolic, X); }) ==
        ErrorKind::ModelDomain);
  X(0) = 0.999;
  CHECK(hyperbolic.contains(X));
}

TEST_CASE("flat metric jet has zero derivatives") {
  Eigen::VectorXd X(4);
  X << 0.3, -1.0, 2.0, 0.1;
  const auto jet = ambient_metric_jet(SpaceForm(0, 4), X);
  CHECK(jet.gradient.norm() == 0.0);
  CHECK(jet.hessian.norm() == 0.0);
}

TEST_CASE("hyperbolic metric jet at the origin has vanishing first derivatives") {
  const auto jet = ambient_metric_jet(SpaceForm(-1, 4), Eigen::VectorXd::Zero(4));
  CHECK(jet.gradient.norm() == 0.0);
}

TEST_CASE("metric jet matches central differences of the metric") {
  // Fourth-order central stencils keep the oracle's own error near 1e-12.
  const double h = 1e-3;
  const double weights[4] = {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12};
  const double offsets[4] = {-2, -1, 1, 2};
  std::mt19937_64 gen(5);
  for (int K : {-1, 1}) {
    const SpaceForm form(K, 4);
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd X(4);
      if (trial == 0) {
        X << 0.1, 0.0, 0.0, 0.0;
      } else {
        const auto c = oracle::uniform_vector(gen, 4, -0.5, 0.5);
        X = Eigen::Map<const Eigen::VectorXd>(c.data(), 4);
      }
      const auto jet = ambient_metric_jet(form, X);
      CHECK((jet.metric() - ambient_metric(form, X)).norm() < 1e-14);
      for (int k = 0; k < 4; ++k) {
        const Eigen::VectorXd e = h * Eigen::VectorXd::Unit(4, k);
        Eigen::MatrixXd d1 = Eigen::MatrixXd::Zero(4, 4);
        for (int s = 0; s < 4; ++s) d1 += weights[s] * ambient_metric(form, X + offsets[s] * e) / h;
        for (int I = 0; I < 4; ++I)
          for (int J = 0; J < 4; ++J)
            CHECK(std::abs(jet.first_derivative(I, J, k) - d1(I, J)) <
                  1e-8 * (1.0 + std::abs(d1(I, J))));
        for (int l = 0; l < 4; ++l) {
          const Eigen::VectorXd f = h * Eigen::VectorXd::Unit(4, l);
          double d2 = 0.0;
          for (int s = 0; s < 4; ++s)
            for (int t = 0; t < 4; ++t)
              d2 += weights[s] * weights[t] *
                    ambient_metric(form, X + offsets[s] * e + offsets[t] * f)(0, 0) / (h * h);
          CHECK(std::abs(jet.second_derivative(0, 0, k, l) - d2) < 1e-8 * (1.0 + std::abs(d2)));
        }
      }
    }
  }
}

TEST_CASE("geodesic sphere curvature closed forms") {
  CHECK(geodesic_sphere_curvature(SpaceForm(0, 4), 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(geodesic_sphere_curvature(SpaceForm(-1, 4), 1.0) ==
        doctest::Approx(std::cosh(1.0) / std::sinh(1.0)).epsilon(1e-14));
  CHECK(geodesic_sphere_curvature(SpaceForm(1, 4), std::numbers::pi / 4) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(checks::error_kind([] { require_valid_geodesic_radius(SpaceForm(1, 4), 1.6); }) ==
        ErrorKind::Domain);
  CHECK(checks::error_kind([] { require_valid_geodesic_radius(SpaceForm(-1, 4), -1.0); }) ==
        ErrorKind::Domain);
}

TEST_CASE("geodesic spheres are umbilic with the expected curvature") {
  struct Case {
    int K;
    double radius;
    double expected;
  };
  const Case cases[] = {{0, 1.0, 1.0},
                        {-1, 1.0, std::cosh(1.0) / std::sinh(1.0)},
                        {1, std::numbers::pi / 4, 1.0}};
  std::mt19937_64 gen(3);
  for (const auto& c : cases) {
    const SpaceForm form(c.K, 4);
    const auto sphere = geodesic_sphere(form, c.radius);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 12; ++trial) {
      const std::size_t chart = trial % sphere.chart_count();
      const auto& box = sphere.chart(chart).domain;
      Eigen::VectorXd x(3);
      for (int i = 0; i < 3; ++i) x(i) = box.lower(i) + unit(gen) * (box.upper(i) - box.lower(i));
      if (sphere.chart(chart).weight && sphere.chart(chart).weight(x) <= 0.0) continue;
      const auto shape = shape_operator(sphere, ParamPoint(chart, x));
      for (int i = 0; i < 3; ++i) CHECK(shape.kappa(i) == doctest::Approx(c.expected).epsilon(1e-9));
      CHECK(shape.kappa.maxCoeff() - shape.kappa.minCoeff() < 1e-8);
      ++checked;
    }
    CHECK(checked == 12);
  }
}

}
