#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "egregium/curvature.hpp"
#include "egregium/expression.hpp"
#include "egregium/surfaces.hpp"
#include "support/checks.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace egregium;

namespace {

SurfacePatch diagonal_graph(const std::vector<double>& lambda, int curvature = 0) {
  const int n = static_cast<int>(lambda.size());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) H(i, i) = lambda[i];
  return from_graph(polynomial_height(0.0, Eigen::VectorXd::Zero(n), H), Box::cube(n, 0.3),
                    SpaceForm(curvature, n + 1));
}

RiemannTensor principal_tensor(const SurfacePatch& patch, const ParamPoint& p,
                               const ShapeData& shape) {
  return orthonormalize(riemann_intrinsic(induced_metric_jet(patch, p)), shape.g,
                        shape.principal_frame);
}

double tensor_distance(const RiemannTensor& a, const RiemannTensor& b) {
  const int n = a.dimension();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) worst = std::max(worst, std::abs(a(i, j, k, l) - b(i, j, k, l)));
  return worst;
}

RiemannTensor random_algebraic_tensor(std::mt19937_64& gen, int n) {
  // Curvature tensor of a random symmetric second fundamental form plus a
  // random constant curvature term; satisfies every algebraic symmetry.
  const auto nz = static_cast<std::size_t>(n);
  const Eigen::MatrixXd h = corpus::random_symmetric_matrix(gen, n, 1.0);
  const double c = std::uniform_real_distribution<double>(-1, 1)(gen);
  RiemannTensor R{Array4({nz, nz, nz, nz}), FrameKind::Orthonormal};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          R.components(i, j, k, l) = h(i, k) * h(j, l) - h(i, l) * h(j, k) +
                                     c * ((i == k) * (j == l) - (i == l) * (j == k));
  return R;
}

}  // namespace

TEST_SUITE("curvature") {

TEST_CASE("flat graph metric jet") {
  const auto plane = diagonal_graph({0, 0, 0});
  const auto jet = induced_metric_jet(plane, ParamPoint(Eigen::VectorXd::Constant(3, 0.1)));
  CHECK((jet.g - Eigen::MatrixXd::Identity(3, 3)).norm() == 0.0);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        worst = std::max(worst, std::abs(jet.dg(i, j, k)));
        for (int l = 0; l < 3; ++l) worst = std::max(worst, std::abs(jet.ddg(i, j, k, l)));
      }
  CHECK(worst == 0.0);
}

TEST_CASE("quadratic graph metric jet follows the product rule") {
  const std::vector<double> lambda{1.0, -2.0, 0.5};
  const auto graph = diagonal_graph(lambda);
  const auto jet = induced_metric_jet(graph, ParamPoint(Eigen::VectorXd::Zero(3)));
  CHECK((jet.g - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-15);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        CHECK(jet.dg(i, j, k) == 0.0);
        for (int l = 0; l < 3; ++l) {
          const double expected = lambda[i] * lambda[j] * ((i == k) * (j == l) + (i == l) * (j == k));
          CHECK(std::abs(jet.ddg(i, j, k, l) - expected) < 1e-14);
        }
      }
}

TEST_CASE("metric jet matches central differences on the corpus") {
  std::mt19937_64 gen(31);
  const double h = 1e-4;
  for (auto kind : {corpus::Kind::Graph, corpus::Kind::LevelSet, corpus::Kind::Parametric})
    for (int K : {-1, 0, 1}) {
      const auto sample = corpus::make(gen, kind, 3, K, 2);
      for (const auto& p : sample.points) {
        const auto jet = induced_metric_jet(sample.patch, p);
        for (int k = 0; k < 3; ++k) {
          Eigen::VectorXd e = Eigen::VectorXd::Zero(3);
          e(k) = h;
          const auto up = induced_metric_jet(sample.patch, ParamPoint(p.x + e));
          const auto down = induced_metric_jet(sample.patch, ParamPoint(p.x - e));
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
              CHECK(std::abs(jet.dg(i, j, k) - (up.g(i, j) - down.g(i, j)) / (2 * h)) < 1e-6);
              for (int l = 0; l < 3; ++l)
                CHECK(std::abs(jet.ddg(i, j, k, l) - (up.dg(i, j, l) - down.dg(i, j, l)) / (2 * h)) <
                      1e-5);
            }
        }
      }
    }
}

TEST_CASE("shape operator examples") {
  const auto graph = diagonal_graph({1, 2, 3});
  const auto shape = shape_operator(graph, ParamPoint(Eigen::VectorXd::Zero(3)));
  CHECK(oracle::max_abs_difference(oracle::to_std(shape.kappa), {1, 2, 3}) < 1e-14);

  const auto sphere = round_sphere(4, 1.0);
  const auto& box = sphere.chart(0).domain;
  const auto s = shape_operator(sphere, ParamPoint(0, box.center()));
  CHECK(oracle::max_abs_difference(oracle::to_std(s.kappa), {1, 1, 1}) < 1e-12);

  const auto hyperbolic = geodesic_sphere(SpaceForm(-1, 4), 1.0);
  const auto t = shape_operator(hyperbolic, ParamPoint(0, hyperbolic.chart(0).domain.center()));
  const double coth = std::cosh(1.0) / std::sinh(1.0);
  CHECK(oracle::max_abs_difference(oracle::to_std(t.kappa), {coth, coth, coth}) < 1e-10);
}

TEST_CASE("shape data invariants and exact orientation flip") {
  std::mt19937_64 gen(41);
  for (auto kind : {corpus::Kind::Graph, corpus::Kind::LevelSet, corpus::Kind::Parametric})
    for (int K : {-1, 0, 1}) {
      const auto sample = corpus::make(gen, kind, 4, K, 3);
      for (const auto& p : sample.points) {
        const auto up = shape_operator(sample.patch, p, Orientation::Positive);
        const auto down = shape_operator(sample.patch, p, Orientation::Negative);
        const int n = up.dimension();
        CHECK(((up.g * up.A) - (up.g * up.A).transpose()).cwiseAbs().maxCoeff() < 1e-10);
        const Eigen::MatrixXd gram =
            up.principal_frame.transpose() * up.g * up.principal_frame;
        CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((up.A * up.principal_frame - up.principal_frame * up.kappa.asDiagonal())
                  .cwiseAbs()
                  .maxCoeff() < 1e-9 * (1 + up.kappa.cwiseAbs().maxCoeff()));
        for (int i = 0; i < n; ++i) CHECK(down.kappa(i) == -up.kappa(n - 1 - i));
        CHECK((down.h + up.h).norm() == 0.0);
        CHECK((down.A + up.A).norm() == 0.0);
        CHECK(std::is_sorted(up.kappa.data(), up.kappa.data() + n));

        const auto Rup = principal_tensor(sample.patch, p, up);
        const auto Rdown = principal_tensor(sample.patch, p, down);
        const auto Qup = pair_products(Rup, K);
        const auto Qdown = pair_products(Rdown, K);
        // The flipped frame is the reversed one, so Q is reversed too.
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b)
            CHECK(std::abs(Qup(a, b) - Qdown(n - 1 - a, n - 1 - b)) <
                  1e-12 * (1.0 + Qup.max_abs()));
      }
    }
}

TEST_CASE("riemann tensor examples") {
  const auto plane = diagonal_graph({0, 0, 0});
  const auto R0 = riemann_intrinsic(induced_metric_jet(plane, ParamPoint(Eigen::VectorXd::Zero(3))));
  CHECK(riemann_symmetry_defect(R0) == 0.0);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) worst = std::max(worst, std::abs(R0(i, j, k, l)));
  CHECK(worst == 0.0);

  const auto graph = diagonal_graph({1, 2, 3});
  const ParamPoint o(Eigen::VectorXd::Zero(3));
  const auto shape = shape_operator(graph, o);
  const auto R = principal_tensor(graph, o, shape);
  CHECK(R(0, 1, 0, 1) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(R(0, 2, 0, 2) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(R(1, 2, 1, 2) == doctest::Approx(6.0).epsilon(1e-13));

  const auto sphere = from_level_set(
      scalar_field_from_expression(
          Expression::parse("x1^2 + x2^2 + x3^2 + x4^2 - 1", indexed_names("x", 4)), 4),
      Eigen::VectorXd::Unit(4, 1), SpaceForm(0, 4));
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto xs = oracle::uniform_vector(gen, 3, -0.05, 0.05);
    const ParamPoint p(Eigen::Map<const Eigen::VectorXd>(xs.data(), 3));
    const auto tc = tangent_chart(sphere, p);
    const ParamPoint origin(Eigen::VectorXd::Zero(3));
    const auto s = shape_operator(tc, origin);
    const auto Rs = principal_tensor(tc, origin, s);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) CHECK(Rs(i, j, i, j) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("Christoffel path reduces to the second-derivative formula where dg = 0") {
  std::mt19937_64 gen(43);
  for (auto kind : {corpus::Kind::Graph, corpus::Kind::LevelSet, corpus::Kind::Parametric}) {
    const auto sample = corpus::make(gen, kind, 4, 0, 2);
    for (const auto& p : sample.points) {
      const auto tc = tangent_chart(sample.patch, p);
      const auto jet = induced_metric_jet(tc, ParamPoint(Eigen::VectorXd::Zero(4)));
      double dg = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          for (int k = 0; k < 4; ++k) dg = std::max(dg, std::abs(jet.dg(i, j, k)));
      CHECK(dg < 1e-10);
      CHECK(tensor_distance(riemann_intrinsic(jet), riemann_from_second_derivatives(jet)) < 1e-12);
    }
  }
}

TEST_CASE("frame changes") {
  std::mt19937_64 gen(47);
  const auto R = random_algebraic_tensor(gen, 4);
  CHECK(tensor_distance(orthonormalize(R, Eigen::MatrixXd::Identity(4, 4),
                                       Eigen::MatrixXd::Identity(4, 4)),
                        R) == 0.0);

  Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(4, 4);
  const int sigma[4] = {2, 0, 3, 1};
  for (int i = 0; i < 4; ++i) perm(sigma[i], i) = 1.0;
  const auto P = rotate_frame(R, perm);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          CHECK(P(i, j, k, l) == R(sigma[i], sigma[j], sigma[k], sigma[l]));

  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd rot = oracle::random_rotation(gen, 4);
    const auto back = rotate_frame(rotate_frame(R, rot), rot.transpose());
    CHECK(tensor_distance(back, R) < 1e-12);
  }

  Eigen::MatrixXd skew = Eigen::MatrixXd::Identity(4, 4);
  skew(0, 1) = 0.1;
  CHECK(checks::error_kind([&] { orthonormalize(R, Eigen::MatrixXd::Identity(4, 4), skew); }) ==
        ErrorKind::FrameNotOrthonormal);
}

TEST_CASE("pair products") {
  const auto sphere = round_sphere(4, 1.0);
  const ParamPoint p(0, sphere.chart(0).domain.center());
  const auto shape = shape_operator(sphere, p);
  const auto Q = pair_products(principal_tensor(sphere, p, shape), 0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a != b) CHECK(Q(a, b) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(Q(1, 1), std::logic_error);

  const auto graph = diagonal_graph({1, 2, 3});
  const ParamPoint o(Eigen::VectorXd::Zero(3));
  const auto gs = shape_operator(graph, o);
  const auto Qg = pair_products(principal_tensor(graph, o, gs), 0);
  CHECK(Qg(0, 1) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(Qg(0, 2) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(Qg(1, 2) == doctest::Approx(6.0).epsilon(1e-13));
  CHECK(gauss_residual(gs, Qg) < 1e-12);

  for (double r : {0.5, 1.0, 2.0}) {
    const auto hyp = geodesic_sphere(SpaceForm(-1, 4), r);
    const ParamPoint q(0, hyp.chart(0).domain.center());
    const auto hs = shape_operator(hyp, q);
    const auto Qh = pair_products(principal_tensor(hyp, q, hs), -1);
    const double coth = std::cosh(r) / std::sinh(r);
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        CHECK(Qh(a, b) == doctest::Approx(coth * coth).epsilon(1e-9));
  }
}

TEST_CASE("pair products do not depend on the frame inside an eigenvalue cluster") {
  std::mt19937_64 gen(53);
  const auto sphere = geodesic_sphere(SpaceForm(1, 5), 0.9);
  const ParamPoint p(1, sphere.chart(1).domain.center());
  const auto shape = shape_operator(sphere, p);
  const auto R = principal_tensor(sphere, p, shape);
  const auto Q = pair_products(R, 1);
  for (int trial = 0; trial < 5; ++trial) {
    const auto Qr = pair_products(rotate_frame(R, oracle::random_rotation(gen, 4)), 1);
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) CHECK(std::abs(Qr(a, b) - Q(a, b)) < 1e-10);
  }
}

TEST_CASE("gauss residual is zero on exact data") {
  ShapeData shape;
  shape.kappa = Eigen::Vector4d(-1.0, 0.5, 2.0, 3.0);
  const auto Q = oracle::products(oracle::to_std(shape.kappa));
  CHECK(gauss_residual(shape, Q) == 0.0);
}

TEST_CASE("gauss equation and tensor symmetries hold on the corpus") {
  const auto samples = corpus::full_corpus(61, 2);
  for (const auto& sample : samples) {
    CAPTURE(corpus::kind_name(sample.kind));
    CAPTURE(sample.n);
    CAPTURE(sample.curvature);
    for (const auto& p : sample.points) {
      const auto shape = shape_operator(sample.patch, p);
      const auto coordinate = riemann_intrinsic(induced_metric_jet(sample.patch, p));
      const auto R = orthonormalize(coordinate, shape.g, shape.principal_frame);
      CHECK(riemann_symmetry_defect(coordinate) < 1e-9);
      CHECK(riemann_symmetry_defect(R) < 1e-9);
      CHECK(gauss_residual(shape, pair_products(R, sample.curvature)) < 1e-6);
    }
  }
  for (int K : {-1, 0, 1}) {
    const auto sphere = geodesic_sphere(SpaceForm(K, 4), 0.8);
    for (std::size_t c = 0; c < sphere.chart_count(); ++c) {
      const ParamPoint p(c, sphere.chart(c).domain.center());
      const auto shape = shape_operator(sphere, p);
      CHECK(gauss_residual(shape, pair_products(principal_tensor(sphere, p, shape), K)) < 1e-6);
    }
  }
}

}
