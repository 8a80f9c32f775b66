#include "egregium/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "egregium/error.hpp"

namespace egregium {

PairProductMatrix::PairProductMatrix(int dimension)
    : entries_(Eigen::MatrixXd::Zero(dimension, dimension)) {
  entries_.diagonal().setConstant(std::numeric_limits<double>::quiet_NaN());
}

PairProductMatrix PairProductMatrix::from_matrix(const Eigen::MatrixXd& entries) {
  if (entries.rows() != entries.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "pair-product matrix must be square");
  }
  PairProductMatrix Q(static_cast<int>(entries.rows()));
  for (int a = 0; a < Q.dimension(); ++a)
    for (int b = a + 1; b < Q.dimension(); ++b) Q.set(a, b, entries(a, b));
  return Q;
}

PairProductMatrix PairProductMatrix::from_kappa(std::span<const double> kappa) {
  PairProductMatrix Q(static_cast<int>(kappa.size()));
  for (int a = 0; a < Q.dimension(); ++a)
    for (int b = a + 1; b < Q.dimension(); ++b) Q.set(a, b, kappa[a] * kappa[b]);
  return Q;
}

double PairProductMatrix::operator()(int a, int b) const {
  if (a < 0 || b < 0 || a >= dimension() || b >= dimension()) {
    throw Error(ErrorKind::Index, "pair-product index out of range");
  }
  if (a == b) throw std::logic_error("pair-product diagonal entry read");
  return entries_(a, b);
}

void PairProductMatrix::set(int a, int b, double value) {
  if (a < 0 || b < 0 || a >= dimension() || b >= dimension()) {
    throw Error(ErrorKind::Index, "pair-product index out of range");
  }
  if (a == b) throw std::logic_error("pair-product diagonal entry written");
  entries_(a, b) = value;
  entries_(b, a) = value;
}

double PairProductMatrix::max_abs() const {
  double m = 0.0;
  for (int a = 0; a < dimension(); ++a)
    for (int b = a + 1; b < dimension(); ++b) m = std::max(m, std::abs(entries_(a, b)));
  return m;
}

MetricJet induced_metric_jet(const SurfacePatch& patch, const ParamPoint& p) {
  const SurfaceJet j = patch.jet(p, 3);
  const AmbientMetricJet amb = ambient_metric_jet(patch.form(), j.position);
  const int N = static_cast<int>(j.position.size());
  const int n = static_cast<int>(j.first.cols());
  const std::size_t un = n;

  auto dot12 = [&](int i, int k, int l) {  // X_i . X_kl
    double acc = 0.0;
    for (int A = 0; A < N; ++A) acc += j.first(A, i) * j.second(A, k, l);
    return acc;
  };
  auto dot22 = [&](int i, int k, int l, int m) {  // X_ik . X_lm
    double acc = 0.0;
    for (int A = 0; A < N; ++A) acc += j.second(A, i, k) * j.second(A, l, m);
    return acc;
  };
  auto dot13 = [&](int i, int k, int l, int m) {  // X_i . X_klm
    double acc = 0.0;
    for (int A = 0; A < N; ++A) acc += j.first(A, i) * j.third(A, k, l, m);
    return acc;
  };

  const Eigen::MatrixXd E = j.first.transpose() * j.first;
  // Derivatives of the conformal scale along the surface.
  Eigen::VectorXd ck = j.first.transpose() * amb.gradient;
  Eigen::MatrixXd ckl = j.first.transpose() * amb.hessian * j.first;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      double acc = 0.0;
      for (int A = 0; A < N; ++A) acc += amb.gradient(A) * j.second(A, k, l);
      ckl(k, l) += acc;
    }

  Array3 dE({un, un, un});
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k) dE(i, jj, k) = dot12(jj, i, k) + dot12(i, jj, k);

  MetricJet out;
  out.g = amb.scale * E;
  out.dg = Array3({un, un, un});
  out.ddg = Array4({un, un, un, un});
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k) {
        out.dg(i, jj, k) = ck(k) * E(i, jj) + amb.scale * dE(i, jj, k);
        for (int l = 0; l < n; ++l) {
          const double ddE = dot13(jj, i, k, l) + dot22(i, k, jj, l) + dot22(i, l, jj, k) +
                             dot13(i, jj, k, l);
          out.ddg(i, jj, k, l) = ckl(k, l) * E(i, jj) + ck(k) * dE(i, jj, l) +
                                 ck(l) * dE(i, jj, k) + amb.scale * ddE;
        }
      }
  return out;
}

ShapeData shape_operator(const SurfacePatch& patch, const ParamPoint& p, Orientation orientation) {
  const SurfaceJet j = patch.jet(p, 2);
  const Eigen::VectorXd nu = patch.reference_normal(j, p.chart);
  const SpaceForm& form = patch.form();
  const double lambda = form.conformal_factor(j.position);
  const double normal_log = form.log_factor_gradient(j.position).dot(nu);
  const int N = static_cast<int>(j.position.size());
  const int n = static_cast<int>(j.first.cols());

  const Eigen::MatrixXd E = j.first.transpose() * j.first;
  ShapeData s;
  s.g = lambda * lambda * E;
  s.h.resize(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      double acc = 0.0;
      for (int A = 0; A < N; ++A) acc += j.second(A, a, b) * nu(A);
      s.h(a, b) = s.h(b, a) = lambda * (acc - E(a, b) * normal_log);
    }

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.h, s.g);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolveFailure, "generalised eigensolve of (h, g) failed");
  }
  s.kappa = eig.eigenvalues();
  s.principal_frame = eig.eigenvectors();
  s.A = s.g.ldlt().solve(s.h);

  if (orientation == Orientation::Negative) {
    s.h = -s.h;
    s.A = -s.A;
    s.kappa = (-s.kappa.reverse()).eval();
    s.principal_frame = s.principal_frame.rowwise().reverse().eval();
  }
  s.orientation = orientation;
  return s;
}

namespace {

Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (!(lo > 1e-14 * hi)) throw Error(ErrorKind::SingularMetric, "metric is not positive definite");
  return g.inverse();
}

Array4 second_derivative_part(const MetricJet& jet) {
  const std::size_t n = jet.dimension();
  Array4 R({n, n, n, n});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          R(i, j, k, l) = 0.5 * (jet.ddg(i, l, j, k) + jet.ddg(j, k, i, l) -
                                 jet.ddg(j, l, i, k) - jet.ddg(i, k, j, l));
  return R;
}

}  // namespace

RiemannTensor riemann_from_second_derivatives(const MetricJet& jet) {
  checked_inverse(jet.g);
  return RiemannTensor{second_derivative_part(jet), FrameKind::Coordinate};
}

RiemannTensor riemann_intrinsic(const MetricJet& jet) {
  const int n = jet.dimension();
  const std::size_t un = n;
  const Eigen::MatrixXd ginv = checked_inverse(jet.g);

  // Christoffel symbols of the first kind: first(q, i, j) = Gamma_{q,ij}.
  Array3 first({un, un, un});
  for (int q = 0; q < n; ++q)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        first(q, i, j) = 0.5 * (jet.dg(q, j, i) + jet.dg(q, i, j) - jet.dg(i, j, q));
  // Second kind: second(p, i, j) = Gamma^p_ij.
  Array3 second({un, un, un});
  for (int p = 0; p < n; ++p)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int q = 0; q < n; ++q) acc += ginv(p, q) * first(q, i, j);
        second(p, i, j) = acc;
      }

  Array4 R = second_derivative_part(jet);
  // + g_pq (Gamma^p_jk Gamma^q_il - Gamma^p_jl Gamma^q_ik)
  //   = Gamma_{q,jk} Gamma^q_il - Gamma_{q,jl} Gamma^q_ik
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int q = 0; q < n; ++q)
            acc += first(q, j, k) * second(q, i, l) - first(q, j, l) * second(q, i, k);
          R(i, j, k, l) += acc;
        }
  return RiemannTensor{std::move(R), FrameKind::Coordinate};
}

RiemannTensor rotate_frame(const RiemannTensor& R, const Eigen::MatrixXd& E) {
  const int n = R.dimension();
  const std::size_t un = n;
  // Contract one slot at a time: n^5 work.
  Array4 a = R.components;
  Array4 b({un, un, un, un});
  for (int slot = 0; slot < 4; ++slot) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double acc = 0.0;
            for (int m = 0; m < n; ++m) {
              switch (slot) {
                case 0: acc += a(m, j, k, l) * E(m, i); break;
                case 1: acc += a(i, m, k, l) * E(m, j); break;
                case 2: acc += a(i, j, m, l) * E(m, k); break;
                default: acc += a(i, j, k, m) * E(m, l); break;
              }
            }
            b(i, j, k, l) = acc;
          }
    std::swap(a, b);
  }
  return RiemannTensor{std::move(a), R.frame};
}

RiemannTensor orthonormalize(const RiemannTensor& R, const Eigen::MatrixXd& g,
                             const Eigen::MatrixXd& frame) {
  const int n = R.dimension();
  if (g.rows() != n || frame.rows() != n || frame.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "frame and tensor dimensions differ");
  }
  const double defect =
      (frame.transpose() * g * frame - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(defect <= 1e-8)) {
    throw Error(ErrorKind::FrameNotOrthonormal,
                "frame deviates from g-orthonormality by " + std::to_string(defect));
  }
  RiemannTensor out = rotate_frame(R, frame);
  out.frame = FrameKind::Orthonormal;
  return out;
}

PairProductMatrix pair_products(const RiemannTensor& R, int ambient_curvature) {
  if (R.frame != FrameKind::Orthonormal) {
    throw Error(ErrorKind::FrameNotOrthonormal, "pair products need orthonormal components");
  }
  const int n = R.dimension();
  PairProductMatrix Q(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) Q.set(a, b, R(a, b, a, b) - ambient_curvature);
  return Q;
}

double gauss_residual(const ShapeData& shape, const PairProductMatrix& Q) {
  const int n = shape.dimension();
  if (Q.dimension() != n) {
    throw Error(ErrorKind::DimensionMismatch, "shape data and pair products differ in dimension");
  }
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      worst = std::max(worst, std::abs(shape.kappa(a) * shape.kappa(b) - Q(a, b)));
  return worst;
}

double riemann_symmetry_defect(const RiemannTensor& R) {
  const int n = R.dimension();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double r = R(i, j, k, l);
          worst = std::max({worst, std::abs(r + R(j, i, k, l)), std::abs(r + R(i, j, l, k)),
                            std::abs(r - R(k, l, i, j)),
                            std::abs(r + R(i, k, l, j) + R(i, l, j, k))});
        }
  return worst;
}

}  // namespace egregium
