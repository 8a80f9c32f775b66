#pragma once

#include <Eigen/Dense>
#include <span>

#include "egregium/hypersurface.hpp"
#include "egregium/orientation.hpp"
#include "egregium/tensor.hpp"

namespace egregium {

/// Induced metric with its first and second coordinate derivatives:
/// dg(i, j, k) = d_k g_ij and ddg(i, j, k, l) = d_k d_l g_ij.
struct MetricJet {
  Eigen::MatrixXd g;
  Array3 dg;
  Array4 ddg;

  int dimension() const { return static_cast<int>(g.rows()); }
};

/// Extrinsic data at one point. kappa is ascending; the columns of
/// principal_frame are a g-orthonormal eigenbasis of A in the same order.
struct ShapeData {
  Eigen::MatrixXd g;
  Eigen::MatrixXd h;
  Eigen::MatrixXd A;
  Eigen::VectorXd kappa;
  Eigen::MatrixXd principal_frame;
  Orientation orientation = Orientation::Positive;

  int dimension() const { return static_cast<int>(kappa.size()); }
};

enum class FrameKind { Coordinate, Orthonormal };

/// Fully covariant curvature tensor with R_ijij the sectional curvature of
/// the (i, j) plane in an orthonormal frame.
struct RiemannTensor {
  Array4 components;
  FrameKind frame = FrameKind::Coordinate;

  int dimension() const { return static_cast<int>(components.extent(0)); }
  double operator()(int i, int j, int k, int l) const { return components(i, j, k, l); }
};

/// Off-diagonal products kappa_a kappa_b = R_abab - K in a principal
/// orthonormal frame. The diagonal carries no meaning and reading it is a
/// programming error (std::logic_error).
class PairProductMatrix {
 public:
  explicit PairProductMatrix(int dimension);
  /// Builds from a square matrix; only the strict upper triangle is read.
  static PairProductMatrix from_matrix(const Eigen::MatrixXd& entries);
  /// Q(kappa)_ab = kappa_a kappa_b.
  static PairProductMatrix from_kappa(std::span<const double> kappa);
  static PairProductMatrix from_kappa(const Eigen::VectorXd& kappa) {
    return from_kappa(std::span<const double>(kappa.data(), kappa.size()));
  }

  int dimension() const noexcept { return static_cast<int>(entries_.rows()); }
  double operator()(int a, int b) const;
  void set(int a, int b, double value);
  double max_abs() const;
  /// Copy with NaN on the diagonal.
  const Eigen::MatrixXd& raw() const noexcept { return entries_; }

 private:
  Eigen::MatrixXd entries_;
};

MetricJet induced_metric_jet(const SurfacePatch& patch, const ParamPoint& p);

/// h_ij = gbar(Dbar_i d_j X, nu) with the model's Levi-Civita connection; A =
/// g^{-1} h diagonalised as a g-self-adjoint operator. The negative
/// orientation negates the positive result exactly, reversing the order.
ShapeData shape_operator(const SurfacePatch& patch, const ParamPoint& p,
                         Orientation orientation = Orientation::Positive);

/// Coordinate Riemann tensor from g, dg, ddg including Christoffel terms.
RiemannTensor riemann_intrinsic(const MetricJet& jet);

/// Second-derivative-only formula, exact where dg vanishes:
/// R_ijkl = 1/2 (g_il,jk + g_jk,il - g_jl,ik - g_ik,jl).
RiemannTensor riemann_from_second_derivatives(const MetricJet& jet);

/// Components in the frame whose columns (coordinate components) are
/// g-orthonormal within 1e-8; otherwise Error{FrameNotOrthonormal}.
RiemannTensor orthonormalize(const RiemannTensor& R, const Eigen::MatrixXd& g,
                             const Eigen::MatrixXd& frame);

/// Change of orthonormal frame by an orthogonal matrix (columns are the new
/// frame in old components).
RiemannTensor rotate_frame(const RiemannTensor& R, const Eigen::MatrixXd& rotation);

PairProductMatrix pair_products(const RiemannTensor& R, int ambient_curvature);

/// max over a != b of |kappa_a kappa_b - Q_ab|.
double gauss_residual(const ShapeData& shape, const PairProductMatrix& Q);

/// Largest violation of antisymmetry, pair symmetry or the first Bianchi
/// identity.
double riemann_symmetry_defect(const RiemannTensor& R);

}  // namespace egregium
