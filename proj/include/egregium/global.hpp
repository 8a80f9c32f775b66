#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "egregium/hypersurface.hpp"
#include "egregium/intrinsic.hpp"
#include "egregium/orientation.hpp"

namespace egregium {

struct QuadratureNode {
  ParamPoint point;
  /// Partition weight times sqrt(det g) times the cell volume; positive.
  double weight = 0.0;
};

struct QuadratureGrid {
  std::vector<QuadratureNode> nodes;
  int resolution = 0;

  double total_weight() const;
};

/// Worker count for node loops; 0 uses the hardware concurrency. Results do
/// not depend on it.
struct ParallelOptions {
  unsigned threads = 0;
};

/// Composite midpoint rule with `resolution` nodes per axis on every chart,
/// keeping nodes of positive partition weight. Error{NotClosedSurface} for
/// open patches; Error{Domain} if a node of a K = +1 surface leaves the open
/// hemisphere |X| < 1.
QuadratureGrid build_grid(const SurfacePatch& surface, int resolution,
                          const ParallelOptions& parallel = {});

enum class IntegrationMode { Extrinsic, Intrinsic };

/// Both pipelines evaluated at one node, under orientation +1. For the
/// intrinsic pipeline +1 means the branch with a positive pivot sigma.
struct NodeSample {
  Eigen::VectorXd position;
  /// sigma_0 .. sigma_n from the shape operator.
  std::vector<double> extrinsic;
  /// sigma_0 .. sigma_n from the curvature tensor where recoverable.
  std::vector<std::optional<double>> intrinsic;
  /// P_{c,c}(Q) and its pivot threshold at index c for odd c >= 3.
  std::vector<double> odd_square;
  std::vector<double> odd_threshold;
  double gauss_residual = 0.0;
  int rank = 0;
  /// Set when evaluation at this node threw.
  std::optional<std::string> error;
};

NodeSample sample_node(const SurfacePatch& surface, const ParamPoint& point,
                       const IntrinsicTolerances& tol = {});

struct SurfaceSamples {
  std::vector<NodeSample> nodes;
  std::vector<double> weights;
  int dimension = 0;
  int resolution = 0;
};

SurfaceSamples sample_surface(const SurfacePatch& surface, const QuadratureGrid& grid,
                              const IntrinsicTolerances& tol = {},
                              const ParallelOptions& parallel = {});

struct IntegralResult {
  double value = 0.0;
  /// Odd-sigma nodes set to zero because every odd square vanished there.
  std::size_t certified_zero = 0;
  /// Nodes without a recoverable value, filled from the nearest node that
  /// has one.
  std::size_t filled = 0;
  /// Nodes whose evaluation threw (also counted in `filled`).
  std::size_t failed = 0;
};

/// Quadrature of sigma_k^m over sampled nodes. Error{Range} unless
/// 0 <= k <= n and m >= 1.
IntegralResult integrate_samples(const SurfaceSamples& samples, int k, int m,
                                 IntegrationMode mode, Orientation orientation);

/// Samples the surface on the grid and integrates sigma_k^m.
/// Error{NotClosedSurface}; Error{Domain} for n < 3.
IntegralResult integral_invariant(const SurfacePatch& surface, int k, int m,
                                  IntegrationMode mode, Orientation orientation,
                                  const QuadratureGrid& grid,
                                  const IntrinsicTolerances& tol = {},
                                  const ParallelOptions& parallel = {});

/// Weighted fraction of nodes with |sigma_3| < threshold (extrinsic).
double degenerate_locus_fraction(const SurfaceSamples& samples, double threshold);
double degenerate_locus_fraction(const SurfacePatch& surface, const QuadratureGrid& grid,
                                 double threshold, const ParallelOptions& parallel = {});

/// Sum in a fixed pairwise order, independent of how values were produced.
double pairwise_sum(std::span<const double> values);

/// Runs body(i) for i in [0, count) over contiguous blocks on worker threads.
/// The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace egregium
