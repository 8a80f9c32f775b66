#include "egregium/hypersurface.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "egregium/error.hpp"

namespace egregium {

Box Box::cube(int dim, double half_width) {
  return Box{Eigen::VectorXd::Constant(dim, -half_width), Eigen::VectorXd::Constant(dim, half_width)};
}

bool Box::contains(const Eigen::VectorXd& x) const {
  if (x.size() != lower.size()) return false;
  return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
}

std::string_view representation_name(Representation rep) {
  switch (rep) {
    case Representation::Graph: return "graph";
    case Representation::LevelSet: return "level_set";
    case Representation::Parametric: return "parametric";
    case Representation::Atlas: return "atlas";
  }
  return "unknown";
}

SurfacePatch::SurfacePatch(SpaceForm form, Representation kind, std::vector<Chart> charts,
                           bool closed)
    : form_(form), kind_(kind), charts_(std::move(charts)), closed_(closed) {
  if (charts_.empty()) throw Error(ErrorKind::Domain, "a patch needs at least one chart");
  const int n = form_.hypersurface_dimension();
  for (const auto& c : charts_) {
    if (c.map.arity != n || c.map.outputs != form_.ambient_dimension() ||
        c.domain.dimension() != n) {
      throw Error(ErrorKind::DimensionMismatch,
                  "chart dimensions do not match the ambient space form");
    }
  }
}

const Chart& SurfacePatch::chart(std::size_t index) const {
  if (index >= charts_.size()) {
    throw Error(ErrorKind::Index, "chart index " + std::to_string(index) + " out of range");
  }
  return charts_[index];
}

SurfaceJet SurfacePatch::jet(const ParamPoint& p, int order) const {
  const Chart& c = chart(p.chart);
  MapJet m = c.map.jet(p.x, order);
  form_.require_contains(m.value);

  if (order >= 1) {
    const Eigen::MatrixXd gram = m.first.transpose() * m.first;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(hi > 0.0) || lo <= 1e-20 * hi) {
      throw Error(ErrorKind::RankDeficientJacobian, "tangent vectors are linearly dependent");
    }
  }

  SurfaceJet out;
  out.position = std::move(m.value);
  out.first = std::move(m.first);
  out.second = std::move(m.second);
  if (order >= 3) out.third = std::move(m.third);
  return out;
}

Eigen::VectorXd SurfacePatch::reference_normal(const SurfaceJet& jet, std::size_t chart_index) const {
  const int N = form_.ambient_dimension();
  const int n = N - 1;
  // Cofactor vector: c . v = det[J | v], orthogonal to every column of J.
  Eigen::VectorXd cof(N);
  Eigen::MatrixXd minor(n, n);
  for (int I = 0; I < N; ++I) {
    for (int r = 0, row = 0; r < N; ++r) {
      if (r == I) continue;
      minor.row(row++) = jet.first.row(r);
    }
    const double sign = ((I + N - 1) % 2 == 0) ? 1.0 : -1.0;
    cof(I) = sign * minor.determinant();
  }
  const double norm = cof.norm();
  if (!(norm > 0.0)) {
    throw Error(ErrorKind::RankDeficientJacobian, "cannot form a normal vector");
  }
  return (chart(chart_index).normal_sign / norm) * cof;
}

Eigen::MatrixXd frame_from_normal(const Eigen::VectorXd& unit_normal) {
  const int N = static_cast<int>(unit_normal.size());
  Eigen::VectorXd eN = Eigen::VectorXd::Unit(N, N - 1);
  Eigen::VectorXd v = eN - unit_normal;
  const double vv = v.squaredNorm();
  if (vv < 1e-28) return Eigen::MatrixXd::Identity(N, N);
  // Householder reflection swapping e_N and the normal; flip one tangent
  // column to make it a proper rotation.
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(N, N) - (2.0 / vv) * v * v.transpose();
  R.col(0) *= -1.0;
  return R;
}

SurfacePatch framed_graph(ScalarField u, Box domain, SpaceForm form, Eigen::VectorXd origin,
                          Eigen::MatrixXd rotation, Representation kind) {
  const int N = form.ambient_dimension();
  const int n = N - 1;
  if (u.arity != n) throw Error(ErrorKind::DimensionMismatch, "graph function arity must be n");
  if (origin.size() != N || rotation.rows() != N || rotation.cols() != N) {
    throw Error(ErrorKind::DimensionMismatch, "graph frame does not match the ambient dimension");
  }
  const int det_sign = rotation.determinant() > 0.0 ? 1 : -1;

  VectorMap map;
  map.arity = n;
  map.outputs = N;
  map.provided_order = 3;
  map.evaluate = [u = std::move(u), origin = std::move(origin), R = std::move(rotation), n, N](
                     const Eigen::VectorXd& x, int order) {
    const ScalarJet s = u.jet(x, order);
    const Eigen::VectorXd up = R.col(N - 1);
    MapJet m;
    Eigen::VectorXd local(N);
    local.head(n) = x;
    local(n) = s.value;
    m.value = origin + R * local;
    if (order >= 1) m.first = R.leftCols(n) + up * s.gradient.transpose();
    if (order >= 2) {
      m.second = Array3({std::size_t(N), std::size_t(n), std::size_t(n)});
      for (int A = 0; A < N; ++A)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) m.second(A, i, j) = up(A) * s.hessian(i, j);
    }
    if (order >= 3) {
      m.third = Array4({std::size_t(N), std::size_t(n), std::size_t(n), std::size_t(n)});
      for (int A = 0; A < N; ++A)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) m.third(A, i, j, k) = up(A) * s.third(i, j, k);
    }
    return m;
  };

  std::vector<Chart> charts;
  charts.push_back(Chart{std::move(map), std::move(domain), det_sign, {}});
  return SurfacePatch(form, kind, std::move(charts), false);
}

SurfacePatch from_graph(ScalarField u, Box domain, SpaceForm form) {
  const int N = form.ambient_dimension();
  return framed_graph(std::move(u), std::move(domain), form, Eigen::VectorXd::Zero(N),
                      Eigen::MatrixXd::Identity(N, N), Representation::Graph);
}

namespace {

struct ImplicitHeight {
  ScalarField F;
  Eigen::VectorXd origin;
  Eigen::MatrixXd frame;
  LevelSetOptions options;

  ScalarJet operator()(const Eigen::VectorXd& x, int order) const {
    const int N = static_cast<int>(origin.size());
    const int n = N - 1;
    const Eigen::VectorXd axis = frame.col(N - 1);
    const Eigen::VectorXd base = origin + frame.leftCols(n) * x;

    double t = 0.0;
    bool converged = false;
    for (int it = 0; it < options.max_iterations; ++it) {
      const ScalarJet f = F.jet(base + t * axis, 1);
      const double slope = f.gradient.dot(axis);
      if (!(std::abs(slope) > 0.0)) break;
      const double step = -f.value / slope;
      t += step;
      if (std::abs(step) <= options.newton_tolerance * (1.0 + std::abs(t))) {
        converged = true;
        break;
      }
    }
    if (!converged || !std::isfinite(t)) {
      throw Error(ErrorKind::NoConvergence, "implicit height solve did not converge");
    }

    ScalarJet out;
    out.value = t;
    if (order < 1) return out;
    const ScalarJet f = F.jet(base + t * axis, std::max(order, 1) >= 2 ? 2 : 1);
    const Eigen::VectorXd Gx = frame.leftCols(n).transpose() * f.gradient;
    const double Gt = f.gradient.dot(axis);
    out.gradient = -Gx / Gt;
    if (order < 2) return out;
    const Eigen::MatrixXd Hxx = frame.leftCols(n).transpose() * f.hessian * frame.leftCols(n);
    const Eigen::VectorXd Hxt = frame.leftCols(n).transpose() * f.hessian * axis;
    const double Htt = axis.dot(f.hessian * axis);
    const Eigen::VectorXd& g = out.gradient;
    out.hessian = -(Hxx + Hxt * g.transpose() + g * Hxt.transpose() + Htt * g * g.transpose()) / Gt;
    return out;
  }
};

}  // namespace

SurfacePatch from_level_set(ScalarField F, const Eigen::VectorXd& seed, SpaceForm form,
                            const LevelSetOptions& options) {
  const int N = form.ambient_dimension();
  if (F.arity != N || seed.size() != N) {
    throw Error(ErrorKind::DimensionMismatch, "level-set function must take n+1 variables");
  }
  ScalarJet f0 = F.jet(seed, 1);
  const double gnorm = f0.gradient.norm();
  if (!(gnorm >= options.gradient_tolerance)) {
    throw Error(ErrorKind::DegenerateGradient,
                "|grad F| = " + std::to_string(gnorm) + " at the seed point");
  }
  if (std::abs(f0.value) > 1e-6 * std::max(1.0, gnorm)) {
    throw Error(ErrorKind::Domain, "seed point is not on the zero set (F = " +
                                       std::to_string(f0.value) + ")");
  }
  // Project the seed onto {F = 0} along the gradient.
  Eigen::VectorXd root = seed;
  const Eigen::VectorXd dir = f0.gradient / gnorm;
  for (int it = 0; it < options.max_iterations && f0.value != 0.0; ++it) {
    const double slope = f0.gradient.dot(dir);
    const double step = -f0.value / slope;
    root += step * dir;
    f0 = F.jet(root, 1);
    if (std::abs(step) <= options.newton_tolerance) break;
  }
  form.require_contains(root);

  const Eigen::VectorXd normal = -f0.gradient.normalized();
  Eigen::MatrixXd frame = frame_from_normal(normal);

  ScalarField height;
  height.arity = N - 1;
  height.provided_order = 2;
  height.evaluate = ImplicitHeight{std::move(F), root, frame, options};
  return framed_graph(std::move(height), Box::cube(N - 1, options.half_width), form, root,
                      std::move(frame), Representation::LevelSet);
}

SurfacePatch from_parametric(VectorMap map, Box domain, SpaceForm form,
                             const ParametricOptions& options) {
  std::vector<Chart> charts;
  charts.push_back(Chart{std::move(map), std::move(domain), options.normal_sign >= 0 ? 1 : -1, {}});
  SurfacePatch patch(form, Representation::Parametric, charts, false);
  if (!options.interior_point) return patch;

  const Eigen::VectorXd centre = charts[0].domain.center();
  const SurfaceJet j = patch.jet(centre, 1);
  const Eigen::VectorXd nu = patch.reference_normal(j, 0);
  if (nu.dot(*options.interior_point - j.position) < 0.0) charts[0].normal_sign *= -1;
  return SurfacePatch(form, Representation::Parametric, std::move(charts), false);
}

namespace {

double trig_derivative(bool is_sin, double a, int d) {
  const double s = std::sin(a), c = std::cos(a);
  if (is_sin) {
    switch (d % 4) {
      case 0: return s;
      case 1: return c;
      case 2: return -s;
      default: return -c;
    }
  }
  switch (d % 4) {
    case 0: return c;
    case 1: return -s;
    case 2: return -c;
    default: return s;
  }
}

}  // namespace

// Hyperspherical coordinates on S^n in R^{n+1}: component j < n is
// sin(a_0)...sin(a_{j-1}) cos(a_j); component n is the product of all sines.
// The chart degenerates exactly where the last two components vanish.
MapJet hyperspherical_jet(const Eigen::VectorXd& angles, int order) {
  const int n = static_cast<int>(angles.size());
  const int N = n + 1;
  // factor kind per (component, angle): 0 none, 1 sin, 2 cos
  auto kind = [n](int j, int i) -> int {
    if (i < j && i < n) return 1;
    if (i == j && j < n) return 2;
    return 0;
  };
  std::vector<int> counts(n, 0);
  auto eval = [&](int j) {
    double v = 1.0;
    for (int i = 0; i < n; ++i) {
      const int k = kind(j, i);
      if (k == 0) {
        if (counts[i] > 0) return 0.0;
        continue;
      }
      v *= trig_derivative(k == 1, angles(i), counts[i]);
    }
    return v;
  };

  MapJet m;
  m.value.resize(N);
  for (int j = 0; j < N; ++j) m.value(j) = eval(j);
  if (order < 1) return m;
  m.first.resize(N, n);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < n; ++i) {
      ++counts[i];
      m.first(j, i) = eval(j);
      --counts[i];
    }
  if (order < 2) return m;
  m.second = Array3({std::size_t(N), std::size_t(n), std::size_t(n)});
  for (int j = 0; j < N; ++j)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        ++counts[a];
        ++counts[b];
        m.second(j, a, b) = eval(j);
        --counts[a];
        --counts[b];
      }
  if (order < 3) return m;
  m.third = Array4({std::size_t(N), std::size_t(n), std::size_t(n), std::size_t(n)});
  for (int j = 0; j < N; ++j)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          ++counts[a];
          ++counts[b];
          ++counts[c];
          m.third(j, a, b, c) = eval(j);
          --counts[a];
          --counts[b];
          --counts[c];
        }
  return m;
}

namespace {

MapJet permute_rows(const MapJet& in, const std::vector<int>& target, int order) {
  const std::size_t N = in.value.size();
  const std::size_t n = order >= 1 ? in.first.cols() : 0;
  MapJet out;
  out.value.resize(N);
  for (std::size_t j = 0; j < N; ++j) out.value(target[j]) = in.value(j);
  if (order < 1) return out;
  out.first.resize(N, n);
  for (std::size_t j = 0; j < N; ++j) out.first.row(target[j]) = in.first.row(j);
  if (order < 2) return out;
  out.second = Array3({N, n, n});
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) out.second(target[j], a, b) = in.second(j, a, b);
  if (order < 3) return out;
  out.third = Array4({N, n, n, n});
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          out.third(target[j], a, b, c) = in.third(j, a, b, c);
  return out;
}

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

// Disjoint-ish coordinate pairs covering every coordinate; the first pair
// is the polar pair of the standard chart.
std::vector<std::pair<int, int>> atlas_pairs(int N) {
  std::vector<std::pair<int, int>> pairs{{N - 2, N - 1}};
  for (int i = 0; i < N - 2; i += 2) {
    pairs.emplace_back(i, i + 1 < N - 2 ? i + 1 : N - 2);
  }
  return pairs;
}

}  // namespace

SurfacePatch sphere_image_atlas(VectorMap phi, SpaceForm form, const Eigen::VectorXd& interior_point) {
  const int N = form.ambient_dimension();
  const int n = N - 1;
  if (phi.arity != N || phi.outputs != N) {
    throw Error(ErrorKind::DimensionMismatch, "sphere map must be R^{n+1} -> R^{n+1}");
  }
  const auto pairs = atlas_pairs(N);
  const double margin = kAtlasPoleMargin;
  const double full = 0.5;  // bump reaches 1 once the pair carries half the norm
  const double polar_cut = std::asin(std::sqrt(margin));

  auto bump = [margin, full](double rho2) { return smooth_step((rho2 - margin) / (full - margin)); };

  std::vector<Chart> charts;
  for (std::size_t c = 0; c < pairs.size(); ++c) {
    // target[j] = ambient index receiving hyperspherical component j
    std::vector<int> target(N);
    {
      std::vector<bool> used(N, false);
      target[N - 2] = pairs[c].first;
      target[N - 1] = pairs[c].second;
      used[pairs[c].first] = used[pairs[c].second] = true;
      int next = 0;
      for (int j = 0; j < N - 2; ++j) {
        while (used[next]) ++next;
        target[j] = next;
        used[next] = true;
      }
    }

    auto sphere_point = [target, N](const Eigen::VectorXd& angles) {
      const MapJet s = hyperspherical_jet(angles, 0);
      Eigen::VectorXd y(N);
      for (int j = 0; j < N; ++j) y(target[j]) = s.value(j);
      return y;
    };

    VectorMap chart_map;
    chart_map.arity = n;
    chart_map.outputs = N;
    chart_map.provided_order = 3;
    chart_map.evaluate = [phi, target](const Eigen::VectorXd& angles, int order) {
      const MapJet inner = permute_rows(hyperspherical_jet(angles, order), target, order);
      return compose(phi.jet(inner.value, order), inner, order);
    };

    Box domain{Eigen::VectorXd::Constant(n, polar_cut), Eigen::VectorXd::Constant(n, std::numbers::pi - polar_cut)};
    domain.lower(n - 1) = 0.0;
    domain.upper(n - 1) = 2.0 * std::numbers::pi;

    auto weight = [sphere_point, pairs, c, bump](const Eigen::VectorXd& angles) {
      const Eigen::VectorXd y = sphere_point(angles);
      double total = 0.0, own = 0.0;
      for (std::size_t d = 0; d < pairs.size(); ++d) {
        const double b = bump(y(pairs[d].first) * y(pairs[d].first) +
                              y(pairs[d].second) * y(pairs[d].second));
        total += b;
        if (d == c) own = b;
      }
      return total > 0.0 ? own / total : 0.0;
    };

    charts.push_back(Chart{std::move(chart_map), std::move(domain), 1, std::move(weight)});
  }

  // Orient every chart towards the interior point at its domain centre.
  SurfacePatch probe(form, Representation::Atlas, charts, true);
  for (std::size_t c = 0; c < charts.size(); ++c) {
    const SurfaceJet j = probe.jet(ParamPoint{c, charts[c].domain.center()}, 1);
    const Eigen::VectorXd nu = probe.reference_normal(j, c);
    if (nu.dot(interior_point - j.position) < 0.0) charts[c].normal_sign = -1;
  }
  return SurfacePatch(form, Representation::Atlas, std::move(charts), true);
}

namespace {

struct TangentHeight {
  SurfacePatch patch;
  ParamPoint anchor;
  Eigen::VectorXd origin;
  Eigen::MatrixXd tangent;  // N x n
  Eigen::VectorXd normal;

  ScalarJet operator()(const Eigen::VectorXd& x, int order) const {
    Eigen::VectorXd s = anchor.x;
    SurfaceJet j;
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      j = patch.jet(ParamPoint{anchor.chart, s}, 1);
      const Eigen::VectorXd r = tangent.transpose() * (j.position - origin) - x;
      if (r.norm() <= 1e-15 * (1.0 + x.norm())) {
        converged = true;
        break;
      }
      const Eigen::MatrixXd Jy = tangent.transpose() * j.first;
      const Eigen::VectorXd ds = Jy.partialPivLu().solve(r);
      s -= ds;
      if (ds.norm() <= 1e-14 * (1.0 + s.norm())) {
        j = patch.jet(ParamPoint{anchor.chart, s}, 1);
        converged = true;
        break;
      }
    }
    if (!converged) throw Error(ErrorKind::NoConvergence, "tangent chart inversion failed");

    ScalarJet out;
    out.value = normal.dot(j.position - origin);
    if (order < 1) return out;
    const int n = static_cast<int>(x.size());
    j = patch.jet(ParamPoint{anchor.chart, s}, order >= 2 ? 2 : 1);
    const Eigen::MatrixXd M = (tangent.transpose() * j.first).inverse();
    out.gradient = (normal.transpose() * j.first * M).transpose();
    if (order < 2) return out;
    // u_kl = sum_bc (nu - sum_a u_a t_a) . X_bc  M_bk M_cl
    const Eigen::VectorXd w = normal - tangent * out.gradient;
    Eigen::MatrixXd D(n, n);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double acc = 0.0;
        for (int A = 0; A < j.position.size(); ++A) acc += w(A) * j.second(A, b, c);
        D(b, c) = acc;
      }
    out.hessian = M.transpose() * D * M;
    out.hessian = 0.5 * (out.hessian + out.hessian.transpose()).eval();
    return out;
  }
};

}  // namespace

SurfacePatch tangent_chart(const SurfacePatch& patch, const ParamPoint& p, double half_width) {
  const int N = patch.form().ambient_dimension();
  const int n = N - 1;
  const SurfaceJet j = patch.jet(p, 1);
  const Eigen::VectorXd nu = patch.reference_normal(j, p.chart);
  Eigen::MatrixXd R = frame_from_normal(nu);

  ScalarField height;
  height.arity = n;
  height.provided_order = 2;
  height.evaluate = TangentHeight{patch, p, j.position, R.leftCols(n), nu};
  return framed_graph(std::move(height), Box::cube(n, half_width), patch.form(), j.position,
                      std::move(R), Representation::Graph);
}

}  // namespace egregium
