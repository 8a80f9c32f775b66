#include "egregium/global.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "egregium/curvature.hpp"
#include "egregium/error.hpp"
#include "egregium/symfun.hpp"

namespace egregium {

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double QuadratureGrid::total_weight() const {
  std::vector<double> w;
  w.reserve(nodes.size());
  for (const auto& node : nodes) w.push_back(node.weight);
  return pairwise_sum(w);
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<bool> stop{false};
  std::vector<std::thread> workers;
  const std::size_t block = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * block;
    const std::size_t end = std::min(count, begin + block);
    workers.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end && !stop.load(std::memory_order_relaxed); ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        stop = true;
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

QuadratureGrid build_grid(const SurfacePatch& surface, int resolution,
                          const ParallelOptions& parallel) {
  if (!surface.closed()) {
    throw Error(ErrorKind::NotClosedSurface, "quadrature needs a closed surface");
  }
  if (resolution < 1) throw Error(ErrorKind::Range, "resolution must be positive");
  const int n = surface.dimension();
  const SpaceForm& form = surface.form();

  std::size_t per_chart = 1;
  for (int i = 0; i < n; ++i) per_chart *= static_cast<std::size_t>(resolution);
  const std::size_t total = per_chart * surface.chart_count();

  std::vector<QuadratureNode> candidates(total);
  parallel_for(total, parallel.threads, [&](std::size_t index) {
    const std::size_t c = index / per_chart;
    std::size_t rest = index % per_chart;
    const Chart& chart = surface.chart(c);
    const Eigen::VectorXd step =
        (chart.domain.upper - chart.domain.lower) / static_cast<double>(resolution);
    Eigen::VectorXd x(n);
    for (int i = n - 1; i >= 0; --i) {
      const auto j = static_cast<double>(rest % static_cast<std::size_t>(resolution));
      rest /= static_cast<std::size_t>(resolution);
      x(i) = chart.domain.lower(i) + (j + 0.5) * step(i);
    }
    const double partition = chart.weight ? chart.weight(x) : 1.0;
    if (!(partition > 0.0)) return;
    const ParamPoint p(c, x);
    const SurfaceJet jet = surface.jet(p, 1);
    if (form.curvature() == 1 && !(jet.position.norm() < 1.0)) {
      throw Error(ErrorKind::Domain, "node leaves the open hemisphere |X| < 1");
    }
    const double scale = ambient_metric_jet(form, jet.position).scale;
    const Eigen::MatrixXd g = scale * (jet.first.transpose() * jet.first);
    candidates[index] = QuadratureNode{p, partition * std::sqrt(g.determinant()) * step.prod()};
  });

  QuadratureGrid grid;
  grid.resolution = resolution;
  for (auto& node : candidates)
    if (node.weight > 0.0) grid.nodes.push_back(std::move(node));
  return grid;
}

NodeSample sample_node(const SurfacePatch& surface, const ParamPoint& point,
                       const IntrinsicTolerances& tol) {
  const int n = surface.dimension();
  const int K = surface.form().curvature();
  NodeSample s;
  s.position = surface.jet(point, 0).position;
  const ShapeData shape = shape_operator(surface, point, Orientation::Positive);
  s.extrinsic = elementary_symmetric_all(as_span(shape.kappa));

  const RiemannTensor R = orthonormalize(riemann_intrinsic(induced_metric_jet(surface, point)),
                                         shape.g, shape.principal_frame);
  const PairProductMatrix Q = pair_products(R, K);
  s.gauss_residual = gauss_residual(shape, Q);
  const IntrinsicReport rep = intrinsic_report(Q, Orientation::Positive, tol);
  s.rank = rep.rank;
  s.intrinsic.resize(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) s.intrinsic[m] = rep.sigma(m);
  s.odd_square.assign(static_cast<std::size_t>(n) + 1, 0.0);
  s.odd_threshold.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int c = 3; c <= n; c += 2) {
    s.odd_square[c] = *rep.sigma_odd_sq[static_cast<std::size_t>(c / 2)];
    s.odd_threshold[c] = pivot_tolerance(Q, c, c, tol);
  }
  return s;
}

SurfaceSamples sample_surface(const SurfacePatch& surface, const QuadratureGrid& grid,
                              const IntrinsicTolerances& tol, const ParallelOptions& parallel) {
  SurfaceSamples out;
  out.dimension = surface.dimension();
  out.resolution = grid.resolution;
  out.nodes.resize(grid.nodes.size());
  out.weights.reserve(grid.nodes.size());
  for (const auto& node : grid.nodes) out.weights.push_back(node.weight);
  parallel_for(grid.nodes.size(), parallel.threads, [&](std::size_t i) {
    try {
      out.nodes[i] = sample_node(surface, grid.nodes[i].point, tol);
    } catch (const Error& e) {
      NodeSample failed;
      try {
        failed.position = surface.jet(grid.nodes[i].point, 0).position;
      } catch (const Error&) {
        failed.position = Eigen::VectorXd::Zero(surface.form().ambient_dimension());
      }
      failed.error = e.what();
      out.nodes[i] = std::move(failed);
    }
  });
  return out;
}

namespace {

// Static k-d tree over points for exact nearest-neighbour queries; ties go
// to the smaller point index.
class NearestIndex {
 public:
  NearestIndex(std::vector<Eigen::VectorXd> points, std::vector<std::size_t> ids)
      : points_(std::move(points)), ids_(std::move(ids)), order_(points_.size()) {
    std::iota(order_.begin(), order_.end(), 0);
    if (!points_.empty()) build(0, order_.size(), 0);
  }

  bool empty() const { return points_.empty(); }

  std::size_t nearest(const Eigen::VectorXd& q) const {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_id = std::numeric_limits<std::size_t>::max();
    search(0, order_.size(), 0, q, best, best_id);
    return best_id;
  }

 private:
  void build(std::size_t lo, std::size_t hi, int depth) {
    if (hi - lo <= 1) return;
    const int axis = depth % static_cast<int>(points_[0].size());
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(lo),
                     order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(hi),
                     [&](std::size_t a, std::size_t b) {
                       const double pa = points_[a](axis), pb = points_[b](axis);
                       return pa != pb ? pa < pb : a < b;
                     });
    build(lo, mid, depth + 1);
    build(mid + 1, hi, depth + 1);
  }

  void search(std::size_t lo, std::size_t hi, int depth, const Eigen::VectorXd& q,
              double& best, std::size_t& best_id) const {
    if (lo >= hi) return;
    const int axis = depth % static_cast<int>(points_[0].size());
    const std::size_t mid = lo + (hi - lo) / 2;
    const std::size_t p = order_[mid];
    const double d = (points_[p] - q).squaredNorm();
    if (d < best || (d == best && ids_[p] < best_id)) {
      best = d;
      best_id = ids_[p];
    }
    const double delta = q(axis) - points_[p](axis);
    const bool left_first = delta <= 0.0;
    if (left_first) {
      search(lo, mid, depth + 1, q, best, best_id);
      if (delta * delta <= best) search(mid + 1, hi, depth + 1, q, best, best_id);
    } else {
      search(mid + 1, hi, depth + 1, q, best, best_id);
      if (delta * delta <= best) search(lo, mid, depth + 1, q, best, best_id);
    }
  }

  std::vector<Eigen::VectorXd> points_;
  std::vector<std::size_t> ids_;
  std::vector<std::size_t> order_;
};

}  // namespace

IntegralResult integrate_samples(const SurfaceSamples& samples, int k, int m,
                                 IntegrationMode mode, Orientation orientation) {
  const int n = samples.dimension;
  if (k < 0 || k > n) {
    throw Error(ErrorKind::Range, "sigma degree " + std::to_string(k) + " outside [0, " +
                                      std::to_string(n) + "]");
  }
  if (m < 1) throw Error(ErrorKind::Range, "power must be positive");

  const std::size_t count = samples.nodes.size();
  IntegralResult result;
  std::vector<std::optional<double>> value(count);
  for (std::size_t i = 0; i < count; ++i) {
    const NodeSample& s = samples.nodes[i];
    if (s.error) {
      ++result.failed;
      continue;
    }
    if (mode == IntegrationMode::Extrinsic) {
      value[i] = s.extrinsic[k];
    } else if (s.intrinsic[k]) {
      value[i] = *s.intrinsic[k];
    } else if (k >= 3 && std::abs(s.odd_square[k]) <= s.odd_threshold[k]) {
      value[i] = 0.0;
      ++result.certified_zero;
    }
  }

  std::vector<Eigen::VectorXd> known_points;
  std::vector<std::size_t> known_ids;
  for (std::size_t i = 0; i < count; ++i) {
    if (value[i]) {
      known_points.push_back(samples.nodes[i].position);
      known_ids.push_back(i);
    }
  }
  const NearestIndex index(std::move(known_points), std::move(known_ids));
  std::vector<double> filled(count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    if (value[i]) {
      filled[i] = *value[i];
      continue;
    }
    ++result.filled;
    if (index.empty()) {
      throw Error(ErrorKind::AllOddDegenerate,
                  "no node has a recoverable sigma_" + std::to_string(k));
    }
    filled[i] = *value[index.nearest(samples.nodes[i].position)];
  }

  const double flip = (k % 2 == 1 && orientation == Orientation::Negative) ? -1.0 : 1.0;
  std::vector<double> terms(count);
  for (std::size_t i = 0; i < count; ++i) {
    terms[i] = samples.weights[i] * std::pow(flip * filled[i], m);
  }
  result.value = pairwise_sum(terms);
  return result;
}

IntegralResult integral_invariant(const SurfacePatch& surface, int k, int m,
                                  IntegrationMode mode, Orientation orientation,
                                  const QuadratureGrid& grid, const IntrinsicTolerances& tol,
                                  const ParallelOptions& parallel) {
  if (!surface.closed()) {
    throw Error(ErrorKind::NotClosedSurface, "integral invariants need a closed surface");
  }
  if (surface.dimension() < 3) {
    throw Error(ErrorKind::Domain, "integral invariants need n >= 3");
  }
  return integrate_samples(sample_surface(surface, grid, tol, parallel), k, m, mode, orientation);
}

double degenerate_locus_fraction(const SurfaceSamples& samples, double threshold) {
  if (samples.dimension < 3) throw Error(ErrorKind::Range, "sigma_3 needs n >= 3");
  std::vector<double> hit(samples.nodes.size(), 0.0);
  for (std::size_t i = 0; i < samples.nodes.size(); ++i) {
    const NodeSample& s = samples.nodes[i];
    if (!s.error && std::abs(s.extrinsic[3]) < threshold) hit[i] = samples.weights[i];
  }
  const double total = pairwise_sum(samples.weights);
  return total > 0.0 ? pairwise_sum(hit) / total : 0.0;
}

double degenerate_locus_fraction(const SurfacePatch& surface, const QuadratureGrid& grid,
                                 double threshold, const ParallelOptions& parallel) {
  if (!surface.closed()) {
    throw Error(ErrorKind::NotClosedSurface, "degenerate locus needs a closed surface");
  }
  return degenerate_locus_fraction(sample_surface(surface, grid, {}, parallel), threshold);
}

}  // namespace egregium
