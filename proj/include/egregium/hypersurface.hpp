#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "egregium/fields.hpp"
#include "egregium/space_form.hpp"
#include "egregium/tensor.hpp"

namespace egregium {

/// Axis-aligned parameter box.
struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  static Box cube(int dim, double half_width);
  int dimension() const { return static_cast<int>(lower.size()); }
  Eigen::VectorXd center() const { return 0.5 * (lower + upper); }
  bool contains(const Eigen::VectorXd& x) const;
};

/// Parameter point on a patch; `chart` is only meaningful for atlases.
struct ParamPoint {
  std::size_t chart = 0;
  Eigen::VectorXd x;

  ParamPoint() = default;
  ParamPoint(Eigen::VectorXd coords) : x(std::move(coords)) {}  // NOLINT(implicit)
  ParamPoint(std::size_t chart_index, Eigen::VectorXd coords)
      : chart(chart_index), x(std::move(coords)) {}
};

/// Position and coordinate derivatives of the embedding at one parameter
/// point. second(A, i, j) = d_i d_j X^A; third is empty unless requested.
struct SurfaceJet {
  Eigen::VectorXd position;
  Eigen::MatrixXd first;
  Array3 second;
  Array4 third;
};

enum class Representation { Graph, LevelSet, Parametric, Atlas };

std::string_view representation_name(Representation rep);

/// One chart of a patch: a jet evaluator over a parameter box together with
/// the sign that fixes the reference normal and, for atlases, the
/// partition-of-unity weight.
///
/// The reference normal of a chart is normal_sign * q, where q is the
/// Euclidean unit normal with det[dX/dx_1, ..., dX/dx_n, q] > 0. Shape data
/// measured against the reference normal is labelled orientation +1.
struct Chart {
  VectorMap map;
  Box domain;
  int normal_sign = 1;
  std::function<double(const Eigen::VectorXd&)> weight;
};

/// A local or closed hypersurface in a space form. Immutable once built;
/// jet evaluation is const and safe to call concurrently.
class SurfacePatch {
 public:
  SurfacePatch(SpaceForm form, Representation kind, std::vector<Chart> charts, bool closed);

  const SpaceForm& form() const noexcept { return form_; }
  Representation kind() const noexcept { return kind_; }
  bool closed() const noexcept { return closed_; }
  int dimension() const noexcept { return form_.hypersurface_dimension(); }
  std::size_t chart_count() const noexcept { return charts_.size(); }
  const Chart& chart(std::size_t index) const;

  /// Evaluates the embedding jet; order 3 fills `third`, by symmetrised
  /// central differences of second derivatives when the chart lacks them.
  /// Throws ModelDomain if the image leaves the model chart and
  /// RankDeficientJacobian if dX loses rank.
  SurfaceJet jet(const ParamPoint& p, int order = 2) const;

  /// Euclidean unit reference normal at a jet of the given chart.
  Eigen::VectorXd reference_normal(const SurfaceJet& jet, std::size_t chart) const;

 private:
  SpaceForm form_;
  Representation kind_;
  std::vector<Chart> charts_;
  bool closed_;
};

inline SurfaceJet evaluate_jet(const SurfacePatch& patch, const ParamPoint& p) {
  return patch.jet(p, 2);
}

/// Proper rotation whose last column is the given unit vector.
Eigen::MatrixXd frame_from_normal(const Eigen::VectorXd& unit_normal);

/// Graph x -> (x, u(x)) in model coordinates. The reference normal has a
/// positive last ambient component.
SurfacePatch from_graph(ScalarField u, Box domain, SpaceForm form);

/// Graph in a rigidly moved frame: X = origin + rotation * (x, u(x)).
SurfacePatch framed_graph(ScalarField u, Box domain, SpaceForm form, Eigen::VectorXd origin,
                          Eigen::MatrixXd rotation, Representation kind = Representation::Graph);

struct LevelSetOptions {
  double gradient_tolerance = 1e-10;
  double newton_tolerance = 1e-12;
  int max_iterations = 50;
  double half_width = 0.1;
};

/// Realises {F = 0} near `seed` as a graph over the tangent hyperplane,
/// solving for the height by Newton iteration along the normal. The
/// reference normal is -grad F / |grad F|, pointing into {F < 0}, so convex
/// domains {F < 0} get positive curvature at orientation +1.
SurfacePatch from_level_set(ScalarField F, const Eigen::VectorXd& seed, SpaceForm form,
                            const LevelSetOptions& options = {});

struct ParametricOptions {
  int normal_sign = 1;
  /// When set, the normal sign is chosen so that the reference normal at the
  /// domain centre points towards this point.
  std::optional<Eigen::VectorXd> interior_point;
};

SurfacePatch from_parametric(VectorMap map, Box domain, SpaceForm form,
                             const ParametricOptions& options = {});

/// Closed hypersurface given as the image of the unit sphere S^n under an
/// ambient map phi : R^{n+1} -> R^{n+1} (evaluated on the sphere only).
/// The atlas uses hyperspherical angle charts attached to disjoint
/// coordinate pairs, blended by a smooth partition of unity that vanishes
/// near each chart's polar set; chart domains are shrunk accordingly. The
/// reference normal points towards `interior_point`.
SurfacePatch sphere_image_atlas(VectorMap phi, SpaceForm form,
                                const Eigen::VectorXd& interior_point);

/// Re-expresses the patch near p as a graph over its tangent hyperplane at
/// p, in rotated and translated model coordinates, with Du(0) = 0 and the
/// same reference normal.
SurfacePatch tangent_chart(const SurfacePatch& patch, const ParamPoint& p,
                           double half_width = 0.05);

/// Hyperspherical coordinates on the unit sphere S^n in R^{n+1}:
/// component j < n is sin(a_0)...sin(a_{j-1}) cos(a_j), component n the
/// product of all sines.
MapJet hyperspherical_jet(const Eigen::VectorXd& angles, int order);

/// Partition threshold for the angle-chart atlas: chart weights vanish where
/// the chart's coordinate pair has squared norm below this value.
inline constexpr double kAtlasPoleMargin = 0.05;

}  // namespace egregium
