#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "egregium/curvature.hpp"
#include "egregium/expression.hpp"
#include "egregium/hypersurface.hpp"
#include "egregium/surfaces.hpp"
#include "support/checks.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace egregium;

namespace {

ScalarField expression_field(const std::string& text, int arity) {
  return scalar_field_from_expression(Expression::parse(text, indexed_names("x", arity)), arity);
}

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

double du_at_origin(const SurfacePatch& graph) {
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(graph.dimension());
  const SurfaceJet j = graph.jet(origin, 1);
  const Eigen::VectorXd normal = graph.reference_normal(j, 0);
  return (j.first.transpose() * normal).norm();
}

}  // namespace

TEST_SUITE("hypersurface") {

TEST_CASE("flat graph has zero curvature and zero second derivatives") {
  const auto plane = from_graph(expression_field("0", 3), Box::cube(3, 1.0), SpaceForm(0, 4));
  const ParamPoint p(vec({0.3, -0.2, 0.5}));
  const SurfaceJet j = evaluate_jet(plane, p);
  for (int A = 0; A < 4; ++A)
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) CHECK(j.second(A, i, k) == 0.0);
  const auto shape = shape_operator(plane, p);
  CHECK(shape.kappa.norm() == 0.0);
}

TEST_CASE("quadratic graph at its critical point has the Hessian eigenvalues") {
  const auto graph = from_graph(expression_field("0.5*(x1^2 + 2*x2^2 + 3*x3^2)", 3),
                                Box::cube(3, 0.5), SpaceForm(0, 4));
  const auto shape = shape_operator(graph, ParamPoint(Eigen::VectorXd::Zero(3)));
  CHECK(shape.kappa(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(shape.kappa(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(shape.kappa(2) == doctest::Approx(3.0).epsilon(1e-14));

  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto lambda = oracle::uniform_vector(gen, 4, -3.0, 3.0);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(4, 4);
    for (int i = 0; i < 4; ++i) H(i, i) = lambda[i];
    const auto g = from_graph(polynomial_height(0.0, Eigen::VectorXd::Zero(4), H),
                              Box::cube(4, 0.5), SpaceForm(0, 5));
    const auto s = shape_operator(g, ParamPoint(Eigen::VectorXd::Zero(4)));
    CHECK(oracle::multiset_distance(oracle::to_std(s.kappa), lambda) < 1e-13);
  }
}

TEST_CASE("level set of the unit sphere is convex with the outward label") {
  const auto sphere = from_level_set(expression_field("x1^2 + x2^2 + x3^2 + x4^2 - 1", 4),
                                     vec({1, 0, 0, 0}), SpaceForm(0, 4));
  const auto shape = shape_operator(sphere, ParamPoint(vec({0.02, -0.03, 0.01})));
  for (int i = 0; i < 3; ++i) CHECK(shape.kappa(i) == doctest::Approx(1.0).epsilon(1e-10));
  const auto inward = shape_operator(sphere, ParamPoint(vec({0.02, -0.03, 0.01})),
                                     Orientation::Negative);
  for (int i = 0; i < 3; ++i) CHECK(inward.kappa(i) == -shape.kappa(2 - i));
}

TEST_CASE("level set of a hyperplane is flat") {
  const auto plane = from_level_set(expression_field("x4", 4), Eigen::VectorXd::Zero(4),
                                    SpaceForm(0, 4));
  const auto shape = shape_operator(plane, ParamPoint(vec({0.05, 0.01, -0.02})));
  CHECK(shape.kappa.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("level set rejects bad seeds") {
  CHECK(checks::error_kind([] {
          from_level_set(expression_field("x1^2 + x2^2 + x3^2 + x4^2", 4),
                         Eigen::VectorXd::Zero(4), SpaceForm(0, 4));
        }) == ErrorKind::DegenerateGradient);
  CHECK(checks::error_kind([] {
          from_level_set(expression_field("x4 - 1", 4), Eigen::VectorXd::Zero(4),
                         SpaceForm(0, 4));
        }) == ErrorKind::Domain);
}

TEST_CASE("level set and parametric graph of the same perturbed sphere agree") {
  // |X|^2/4 + 0.1 x1 x2 = 1 near the point with x4 > 0, against the graph
  // x4 = sqrt(4 - |x'|^2 - 0.4 x1 x2).
  const auto level = from_level_set(
      expression_field("(x1^2 + x2^2 + x3^2 + x4^2)/4 + 0.1*x1*x2 - 1", 4), vec({0, 0, 0, 2}),
      SpaceForm(0, 4));
  const auto names = indexed_names("x", 3);
  std::vector<Expression> map{Expression::parse("x1", names), Expression::parse("x2", names),
                              Expression::parse("x3", names),
                              Expression::parse("sqrt(4 - x1^2 - x2^2 - x3^2 - 0.4*x1*x2)", names)};
  const auto param = from_parametric(vector_map_from_expressions(map, 3), Box::cube(3, 0.3),
                                     SpaceForm(0, 4), {1, vec({0, 0, 0, 0})});
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto xs = oracle::uniform_vector(gen, 3, -0.2, 0.2);
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(xs.data(), 3);
    const auto a = shape_operator(param, ParamPoint(x));
    // Locate the same point on the level-set chart by projecting onto its tangent plane.
    const SurfaceJet base = level.jet(ParamPoint(Eigen::VectorXd::Zero(3)), 1);
    const Eigen::VectorXd target = param.jet(ParamPoint(x), 0).position;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(3);
    for (int it = 0; it < 30; ++it) {
      const SurfaceJet j = level.jet(ParamPoint(y), 1);
      y -= (base.first.transpose() * j.first).partialPivLu().solve(
          base.first.transpose() * (j.position - target));
    }
    CHECK((level.jet(ParamPoint(y), 0).position - target).norm() < 1e-10);
    const auto b = shape_operator(level, ParamPoint(y));
    CHECK((a.kappa - b.kappa).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("hyperspherical chart of S^3 is umbilic away from the poles") {
  const auto chart = sphere_angle_chart(SpaceForm(0, 4), 1.0);
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& box = chart.chart(0).domain;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x(3);
    for (int i = 0; i < 3; ++i) x(i) = box.lower(i) + unit(gen) * (box.upper(i) - box.lower(i));
    const SurfaceJet j = evaluate_jet(chart, ParamPoint(x));
    CHECK(std::abs(j.position.norm() - 1.0) < 1e-12);
    const auto shape = shape_operator(chart, ParamPoint(x));
    for (int i = 0; i < 3; ++i) CHECK(shape.kappa(i) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("ellipsoid angle chart matches the level-set ellipsoid") {
  const Eigen::VectorXd axes = vec({1.0, 1.3, 0.8, 1.6});
  const auto chart = ellipsoid_angle_chart(axes);
  const auto level = from_level_set(
      expression_field("x1^2 + x2^2/1.69 + x3^2/0.64 + x4^2/2.56 - 1", 4),
      vec({0, 0, 0.8 * std::numbers::sqrt2 / 2, 1.6 * std::numbers::sqrt2 / 2}),
      SpaceForm(0, 4), {1e-10, 1e-12, 50, 0.2});
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 8; ++trial) {
    const auto d = oracle::uniform_vector(gen, 3, -0.1, 0.1);
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(d.data(), 3);
    const SurfaceJet lj = level.jet(ParamPoint(y), 2);
    const Eigen::VectorXd X = lj.position;
    // Angles with X_A / a_A = hyperspherical point.
    Eigen::VectorXd s(4);
    for (int A = 0; A < 4; ++A) s(A) = X(A) / axes(A);
    Eigen::VectorXd angles(3);
    angles(0) = std::acos(s(0));
    angles(1) = std::acos(s(1) / std::sqrt(s(1) * s(1) + s(2) * s(2) + s(3) * s(3)));
    angles(2) = std::atan2(s(3), s(2));
    if (angles(2) < 0) angles(2) += 2 * std::numbers::pi;
    const SurfaceJet cj = chart.jet(ParamPoint(angles), 2);
    CHECK((cj.position - X).norm() < 1e-12);
    const auto a = shape_operator(chart, ParamPoint(angles));
    const auto b = shape_operator(level, ParamPoint(y));
    // The angle chart is oriented towards the origin, the level set into {F < 0}.
    CHECK((a.kappa - b.kappa).cwiseAbs().maxCoeff() < 1e-7);
    // Jets agree after chart alignment: the tangent spaces coincide.
    const Eigen::MatrixXd P = cj.first * (cj.first.transpose() * cj.first).inverse() *
                              cj.first.transpose();
    CHECK((P * lj.first - lj.first).norm() < 1e-7);
  }
}

TEST_CASE("cylinder has exactly one nonzero principal curvature") {
  const auto cyl = cylinder(4, 1.0, 0.5);
  std::mt19937_64 gen(8);
  for (const auto& p : corpus::interior_points(gen, cyl, 10)) {
    const auto shape = shape_operator(cyl, p);
    CHECK(std::abs(shape.kappa(0)) < 1e-13);
    CHECK(std::abs(shape.kappa(1)) < 1e-13);
    CHECK(shape.kappa(2) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("tangent chart at a graph critical point is the graph itself") {
  const auto graph = from_graph(expression_field("0.5*x1^2 + x2^2 - 0.7*x3^2 + 0.2*x1*x2*x3", 3),
                                Box::cube(3, 0.3), SpaceForm(0, 4));
  const auto tc = tangent_chart(graph, ParamPoint(Eigen::VectorXd::Zero(3)));
  CHECK(du_at_origin(tc) < 1e-12);
  const Eigen::VectorXd x = vec({0.01, -0.02, 0.015});
  const Eigen::VectorXd a = graph.jet(ParamPoint(x), 0).position;
  const Eigen::VectorXd b = tc.jet(ParamPoint(x), 0).position;
  // Coordinates can only be permuted or reflected by the frame.
  Eigen::VectorXd sa = a.head(3).cwiseAbs(), sb = b.head(3).cwiseAbs();
  std::sort(sa.data(), sa.data() + 3);
  std::sort(sb.data(), sb.data() + 3);
  CHECK((sa - sb).norm() < 1e-12);
  CHECK(std::abs(a(3) - b(3)) < 1e-12);
}

TEST_CASE("tangent chart of the unit sphere at a pole is a centred graph") {
  const auto sphere = from_level_set(expression_field("x1^2 + x2^2 + x3^2 + x4^2 - 1", 4),
                                     vec({1, 0, 0, 0}), SpaceForm(0, 4));
  const auto tc = tangent_chart(sphere, ParamPoint(Eigen::VectorXd::Zero(3)));
  CHECK(du_at_origin(tc) < 1e-12);
  const Eigen::VectorXd x = vec({0.03, 0.01, -0.02});
  const Eigen::VectorXd X = tc.jet(ParamPoint(x), 0).position;
  CHECK(std::abs(X.norm() - 1.0) < 1e-12);
  CHECK(X(0) == doctest::Approx(std::sqrt(1.0 - x.squaredNorm())).epsilon(1e-12));
}

TEST_CASE("tangent charts preserve curvature across the corpus") {
  std::mt19937_64 gen(21);
  for (auto kind : {corpus::Kind::Graph, corpus::Kind::LevelSet, corpus::Kind::Parametric})
    for (int K : {-1, 0, 1}) {
      auto sample = corpus::make(gen, kind, 3 + (K + 1) % 3, K, 3);
      for (const auto& p : sample.points) {
        const auto tc = tangent_chart(sample.patch, p);
        CHECK(du_at_origin(tc) < 1e-12);
        const auto before = shape_operator(sample.patch, p);
        const auto after = shape_operator(tc, ParamPoint(Eigen::VectorXd::Zero(sample.n)));
        CHECK(oracle::multiset_distance(oracle::to_std(before.kappa),
                                        oracle::to_std(after.kappa)) < 1e-8);
      }
    }
}

TEST_CASE("finite-difference fallback agrees with exact derivatives") {
  const auto exact = expression_field("sin(x1)*cosh(x2) + x3^3", 3);
  ScalarField partial;
  partial.arity = 3;
  partial.provided_order = 1;
  partial.evaluate = [exact](const Eigen::VectorXd& x, int order) {
    return exact.jet(x, std::min(order, 1));
  };
  const Eigen::VectorXd x = vec({0.3, -0.4, 0.2});
  const auto a = exact.jet(x, 3);
  const auto b = partial.jet(x, 3);
  CHECK((a.hessian - b.hessian).cwiseAbs().maxCoeff() < 1e-8);
  double third = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) third = std::max(third, std::abs(a.third(i, j, k) - b.third(i, j, k)));
  CHECK(third < 1e-4);
}

TEST_CASE("parametric patch rejects a rank-deficient Jacobian at query time") {
  const auto names = indexed_names("x", 3);
  std::vector<Expression> map{Expression::parse("x1", names), Expression::parse("x1", names),
                              Expression::parse("x3", names), Expression::parse("x2*0", names)};
  const auto patch = from_parametric(vector_map_from_expressions(map, 3), Box::cube(3, 1.0),
                                     SpaceForm(0, 4));
  CHECK(checks::error_kind([&] { patch.jet(ParamPoint(Eigen::VectorXd::Zero(3)), 2); }) ==
        ErrorKind::RankDeficientJacobian);
}

TEST_CASE("curved models reject patches leaving the chart") {
  const auto graph = from_graph(expression_field("x1 + 2", 3), Box::cube(3, 0.5),
                                SpaceForm(-1, 4));
  CHECK(checks::error_kind([&] { graph.jet(ParamPoint(Eigen::VectorXd::Zero(3)), 2); }) ==
        ErrorKind::ModelDomain);
}

}
