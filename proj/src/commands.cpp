#include "egregium/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <regex>
#include <stdexcept>

#include "egregium/curvature.hpp"
#include "egregium/error.hpp"
#include "egregium/global.hpp"
#include "egregium/intrinsic.hpp"
#include "egregium/pairing.hpp"
#include "egregium/spec_file.hpp"
#include "egregium/symfun.hpp"

namespace egregium {

void Report::line(const std::string& text) {
  text_ += text;
  text_ += '\n';
}

void Report::record(nlohmann::json entry) { records_.push_back(std::move(entry)); }

std::string Report::jsonl() const {
  std::string out;
  for (const auto& r : records_) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

std::optional<Orientation> parse_orientation(const std::string& text) {
  if (text == "outward" || text == "+1" || text == "1") return Orientation::Positive;
  if (text == "inward" || text == "-1") return Orientation::Negative;
  return std::nullopt;
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

namespace {

// Raised when a well-formed spec describes an unusable surface.
class SpecSemanticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string vector_text(const Eigen::VectorXd& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += num(v(i));
  }
  return out + ")";
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

std::string kind_name(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Graph: return "graph";
    case SurfaceKind::LevelSet: return "level_set";
    case SurfaceKind::Parametric: return "parametric";
    case SurfaceKind::SphereMap: return "sphere_map";
    case SurfaceKind::Builtin: return "builtin";
  }
  return "unknown";
}

SurfacePatch build_checked(const SurfaceSpec& spec) {
  try {
    return build_surface(spec);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SpecParse) throw;
    throw SpecSemanticsError(e.what());
  }
}

std::string surface_line(const SurfaceSpec& spec) {
  return spec.name + " (" + kind_name(spec.kind) + ", K = " + std::to_string(spec.curvature) +
         ", N = " + std::to_string(spec.ambient_dimension) + ")";
}

nlohmann::json surface_json(const SurfaceSpec& spec) {
  return {{"name", spec.name},
          {"kind", kind_name(spec.kind)},
          {"curvature", spec.curvature},
          {"ambient_dimension", spec.ambient_dimension}};
}

double gap(double intrinsic, double extrinsic) {
  return std::abs(intrinsic - extrinsic) / std::max(1.0, std::abs(extrinsic));
}

std::vector<ParamPoint> sample_points(const SurfacePatch& surface, int count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<ParamPoint> points;
  const int n = surface.dimension();
  for (int i = 0; i < count; ++i) {
    for (int attempt = 0;; ++attempt) {
      if (attempt == 10000) {
        throw Error(ErrorKind::Domain, "could not place a sample point on the surface");
      }
      std::size_t c = 0;
      if (surface.chart_count() > 1) {
        c = std::min(surface.chart_count() - 1,
                     static_cast<std::size_t>(unit_uniform(gen()) * surface.chart_count()));
      }
      const Chart& chart = surface.chart(c);
      Eigen::VectorXd x(n);
      for (int a = 0; a < n; ++a) {
        const double u = surface.closed() ? unit_uniform(gen()) : 0.1 + 0.8 * unit_uniform(gen());
        x(a) = chart.domain.lower(a) + u * (chart.domain.upper(a) - chart.domain.lower(a));
      }
      if (!chart.weight || chart.weight(x) > 0.0) {
        points.emplace_back(c, x);
        break;
      }
    }
  }
  return points;
}

enum Quantity { kSigmaEven, kSigmaOdd, kNormSq, kMeanCurvature, kKappa, kFlip, kQuantityCount };

constexpr const char* kQuantityNames[kQuantityCount] = {
    "sigma_even", "sigma_odd", "norm_sq", "mean_curvature", "kappa", "orientation_flip"};

struct PointCheck {
  std::optional<std::string> error;
  double gauss = 0.0;
  std::optional<double> gaps[kQuantityCount];
  std::vector<RecoveryNote> notes;
};

double max_abs_sum(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] + b[i]));
  return worst;
}

PointCheck check_point(const SurfacePatch& surface, const ParamPoint& p, const RunConfig& config) {
  PointCheck out;
  const ShapeData shape = shape_operator(surface, p, config.orientation);
  const RiemannTensor R = orthonormalize(riemann_intrinsic(induced_metric_jet(surface, p)),
                                         shape.g, shape.principal_frame);
  const PairProductMatrix Q = pair_products(R, surface.form().curvature());
  out.gauss = gauss_residual(shape, Q);

  IntrinsicTolerances tol;
  tol.pivot = config.tol_pivot;
  const IntrinsicReport pos = intrinsic_report(Q, Orientation::Positive, tol);
  const IntrinsicReport neg = intrinsic_report(Q, Orientation::Negative, tol);
  const auto sigma = elementary_symmetric_all(as_span(shape.kappa));
  const int n = shape.dimension();

  // The intrinsic branch whose orientation-carrying sigma has the extrinsic sign.
  const bool use_negative = pos.pivot_degree && sigma[*pos.pivot_degree] < 0.0;
  const IntrinsicReport& branch = use_negative ? neg : pos;
  out.notes = branch.notes;

  double even = 0.0;
  for (int m = 0; m <= n; m += 2) even = std::max(even, gap(*branch.sigma(m), sigma[m]));
  out.gaps[kSigmaEven] = even;
  if (branch.sigma_odd) {
    double odd = 0.0;
    for (int m = 1; m <= n; m += 2) odd = std::max(odd, gap(*branch.sigma(m), sigma[m]));
    out.gaps[kSigmaOdd] = odd;
  }
  if (branch.norm_sq) out.gaps[kNormSq] = gap(*branch.norm_sq, shape.kappa.squaredNorm());
  if (branch.mean_curvature) out.gaps[kMeanCurvature] = gap(*branch.mean_curvature, sigma[1]);
  if (branch.kappa) {
    auto kappa_gap = [&](const Eigen::VectorXd& k) {
      double worst = 0.0;
      for (int i = 0; i < n; ++i) worst = std::max(worst, gap(k(i), shape.kappa(i)));
      return worst;
    };
    double g = kappa_gap(*branch.kappa);
    // Without any orientation-carrying sigma kappa is fixed only up to sign.
    if (!pos.pivot_degree && neg.kappa) g = std::min(g, kappa_gap(*neg.kappa));
    out.gaps[kKappa] = g;
  }

  double flip = 0.0;
  bool compared = false;
  if (pos.sigma_odd && neg.sigma_odd) {
    flip = std::max(flip, max_abs_sum(*pos.sigma_odd, *neg.sigma_odd));
    compared = true;
  }
  if (pos.kappa && neg.kappa) {
    flip = std::max(flip, max_abs_sum(to_std(*pos.kappa), to_std(*neg.kappa)));
    compared = true;
  }
  if (compared) out.gaps[kFlip] = flip;
  return out;
}

std::string point_text(const ParamPoint& p) {
  std::string out = "chart " + std::to_string(p.chart) + " at (";
  for (Eigen::Index i = 0; i < p.x.size(); ++i) {
    if (i) out += ", ";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", p.x(i));
    out += buf;
  }
  return out + ")";
}

}  // namespace

CommandResult cmd_verify(const RunConfig& config) {
  const SurfaceSpec spec = read_surface_spec(config.spec_path);
  const SurfacePatch surface = build_checked(spec);
  if (config.samples < 1) throw Error(ErrorKind::Range, "sample count must be positive");
  const auto points = sample_points(surface, config.samples, config.seed);

  std::vector<PointCheck> checks(points.size());
  parallel_for(points.size(), config.threads, [&](std::size_t i) {
    try {
      checks[i] = check_point(surface, points[i], config);
    } catch (const Error& e) {
      checks[i].error = e.what();
    }
  });

  CommandResult result;
  Report& rep = result.report;
  rep.line("verify: " + surface_line(spec));
  rep.line("orientation " + std::string(orientation_name(config.orientation)) + ", seed " +
           std::to_string(config.seed) + ", points " + std::to_string(points.size()));
  rep.line("gap = |intrinsic - extrinsic| / max(1, |extrinsic|)");
  rep.record({{"record", "verify"},
              {"surface", surface_json(spec)},
              {"orientation", sign(config.orientation)},
              {"seed", config.seed},
              {"points", points.size()}});

  rep.line(pad("quantity", 18) + pad("points", 8) + pad("max", 15) + pad("tolerance", 15) +
           "status");
  bool all_pass = true;
  auto row = [&](const std::string& name, std::size_t count, double worst, double tolerance) {
    std::string status = "n/a";
    if (count > 0) status = worst < tolerance ? "PASS" : "FAIL";
    if (status == "FAIL") all_pass = false;
    rep.line(pad(name, 18) + pad(std::to_string(count), 8) + pad(count ? sci(worst) : "-", 15) +
             pad(sci(tolerance), 15) + status);
    nlohmann::json entry{{"record", "quantity"},
                         {"name", name},
                         {"points", count},
                         {"tolerance", tolerance},
                         {"status", status}};
    entry["max"] = count ? nlohmann::json(worst) : nlohmann::json(nullptr);
    rep.record(std::move(entry));
  };

  std::size_t gauss_count = 0;
  double gauss_worst = 0.0;
  for (const auto& c : checks) {
    if (c.error) continue;
    ++gauss_count;
    gauss_worst = std::max(gauss_worst, c.gauss);
  }
  row("gauss_residual", gauss_count, gauss_worst, config.tol_gauss);
  for (int q = 0; q < kQuantityCount; ++q) {
    std::size_t count = 0;
    double worst = 0.0;
    for (const auto& c : checks) {
      if (c.error || !c.gaps[q]) continue;
      ++count;
      worst = std::max(worst, *c.gaps[q]);
    }
    row(kQuantityNames[q], count, worst, config.tol_gap);
  }

  std::map<std::pair<std::string, std::string>, std::size_t> note_counts;
  for (const auto& c : checks)
    for (const auto& note : c.notes)
      ++note_counts[{note.quantity, std::string(error_kind_name(note.reason))}];
  for (const auto& [key, count] : note_counts) {
    const auto& [quantity, reason] = key;
    std::string why = reason;
    if (reason == "AllOddDegenerate") why += " (rank < 3, no odd pivot)";
    if (reason == "RankTooLow") why += " (rank < 3)";
    rep.line("note: " + quantity + " unrecoverable at " + std::to_string(count) + " of " +
             std::to_string(points.size()) + " points: " + why);
    rep.record({{"record", "note"}, {"quantity", quantity}, {"reason", reason}, {"points", count}});
  }

  std::size_t errors = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (!checks[i].error) continue;
    ++errors;
    rep.line("error: point " + std::to_string(i) + ", " + point_text(points[i]) + ": " +
             *checks[i].error);
    rep.record({{"record", "error"}, {"point", i}, {"message", *checks[i].error}});
  }

  result.exit_code = errors ? exit_code::pipeline_error
                     : all_pass ? exit_code::pass
                                : exit_code::tolerance_failure;
  const std::string status = result.exit_code == exit_code::pass ? "PASS" : "FAIL";
  rep.line("result: " + status);
  rep.record({{"record", "result"}, {"status", status}, {"exit_code", result.exit_code}});
  return result;
}

namespace {

struct CurvatureData {
  int n = 0;
  int curvature = 0;
  std::string source;
  PairProductMatrix Q{0};
};

CurvatureData read_curvature_data(const std::string& path) {
  const auto doc = KeyValueDocument::parse(read_text_file(path));
  CurvatureData data;
  data.n = doc.integer("n");
  if (data.n < 2) throw Error(ErrorKind::SpecParse, "n must be at least 2");
  data.curvature = doc.has("curvature") ? doc.integer("curvature") : 0;
  data.source = doc.optional_text("kind").value_or(doc.has("Q") ? "Q" : "riemann");
  const int n = data.n;
  data.Q = PairProductMatrix(n);

  if (data.source == "Q") {
    doc.require_only({"n", "curvature", "kind", "Q"});
    const auto v = doc.numbers("Q");
    const std::size_t full = static_cast<std::size_t>(n) * n;
    const std::size_t upper = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (v.size() == full) {
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          if (v[a * n + b] != v[b * n + a]) {
            throw Error(ErrorKind::SpecParse, "Q is not symmetric at (" + std::to_string(a + 1) +
                                                  ", " + std::to_string(b + 1) + ")");
          }
          data.Q.set(a, b, v[a * n + b]);
        }
    } else if (v.size() == upper) {
      std::size_t k = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) data.Q.set(a, b, v[k++]);
    } else {
      throw Error(ErrorKind::SpecParse, "Q needs " + std::to_string(full) + " or " +
                                            std::to_string(upper) + " entries");
    }
    return data;
  }
  if (data.source != "riemann") {
    throw Error(ErrorKind::SpecParse, "kind must be Q or riemann");
  }

  const auto nz = static_cast<std::size_t>(n);
  RiemannTensor R{Array4({nz, nz, nz, nz}), FrameKind::Orthonormal};
  Array4 set({nz, nz, nz, nz});
  const std::regex pattern(R"(R\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\])");
  std::vector<std::string> allowed{"n", "curvature", "kind"};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          const std::string key = "R[" + std::to_string(i) + "," + std::to_string(j) + "," +
                                  std::to_string(k) + "," + std::to_string(l) + "]";
          allowed.push_back(key);
          if (!doc.has(key)) continue;
          const double value = doc.number(key);
          const int a = i - 1, b = j - 1, c = k - 1, d = l - 1;
          const std::array<std::tuple<int, int, int, int, double>, 8> images{{
              {a, b, c, d, value}, {b, a, c, d, -value}, {a, b, d, c, -value},
              {b, a, d, c, value}, {c, d, a, b, value}, {d, c, a, b, -value},
              {c, d, b, a, -value}, {d, c, b, a, value}}};
          for (const auto& [p, q, r, s, v] : images) {
            if (set(p, q, r, s) != 0.0 && R.components(p, q, r, s) != v) {
              throw Error(ErrorKind::SpecParse, "component " + key + " conflicts with symmetry");
            }
            R.components(p, q, r, s) = v;
            set(p, q, r, s) = 1.0;
          }
        }
  doc.require_only(allowed);
  data.Q = pair_products(R, data.curvature);
  return data;
}

}  // namespace

CommandResult cmd_reconstruct(const RunConfig& config) {
  const CurvatureData data = read_curvature_data(config.spec_path);
  const PairProductMatrix& Q = data.Q;
  const int n = data.n;
  IntrinsicTolerances tol;
  tol.pivot = config.tol_pivot;

  CommandResult result;
  Report& rep = result.report;
  rep.line("reconstruct: n = " + std::to_string(n) + ", K = " + std::to_string(data.curvature) +
           ", source " + data.source);
  rep.record({{"record", "reconstruct"}, {"n", n}, {"curvature", data.curvature},
              {"source", data.source}});

  const IntrinsicReport pos = intrinsic_report(Q, Orientation::Positive, tol);
  const IntrinsicReport neg = intrinsic_report(Q, Orientation::Negative, tol);
  rep.line("rank estimate: " + std::to_string(pos.rank));
  rep.record({{"record", "rank"}, {"value", pos.rank}});

  if (n >= 4) {
    const auto [defect, where] = realizability_defect(Q);
    std::string at;
    for (std::size_t i = 0; i < where.size(); ++i) {
      at += (i ? ", " : "") + std::to_string(where[i] + 1);
    }
    rep.line("realizability defect: max |Q_ab Q_cd - Q_ac Q_bd| = " + sci(defect) +
             (where.empty() ? "" : " at (" + at + ")"));
    std::vector<int> one_based;
    for (int w : where) one_based.push_back(w + 1);
    rep.record({{"record", "realizability"}, {"defect", defect}, {"indices", one_based}});
  }

  for (int m = 0; m <= n; m += 2) {
    rep.line("sigma_" + std::to_string(m) + " = " + num(pos.sigma_even[m / 2]));
    rep.record({{"record", "sigma"}, {"degree", m}, {"value", pos.sigma_even[m / 2]}});
  }
  for (int c = 1; c <= n; c += 2) {
    const auto& sq = pos.sigma_odd_sq[c / 2];
    if (!sq) continue;
    rep.line("sigma_" + std::to_string(c) + "^2 = " + num(*sq));
    rep.record({{"record", "sigma_square"}, {"degree", c}, {"value", *sq}});
  }
  if (pos.norm_sq) {
    rep.line("|kappa|^2 = " + num(*pos.norm_sq));
    rep.record({{"record", "norm_sq"}, {"value", *pos.norm_sq}});
  }

  for (const IntrinsicReport* branch : {&pos, &neg}) {
    const std::string label = std::string(orientation_name(branch->orientation));
    nlohmann::json entry{{"record", "branch"}, {"orientation", sign(branch->orientation)}};
    std::string text = "branch " + label + ":";
    if (branch->sigma_odd) {
      for (int c = 1; c <= n; c += 2) {
        text += " sigma_" + std::to_string(c) + " = " + num((*branch->sigma_odd)[c / 2]) + ";";
      }
      entry["sigma_odd"] = *branch->sigma_odd;
    }
    if (branch->mean_curvature) {
      text += " H = " + num(*branch->mean_curvature) + ";";
      entry["mean_curvature"] = *branch->mean_curvature;
    }
    if (branch->kappa) {
      text += " kappa = " + vector_text(*branch->kappa);
      entry["kappa"] = to_std(*branch->kappa);
    } else {
      text += " kappa unrecoverable";
    }
    rep.line(text);
    rep.record(std::move(entry));
  }

  if (pos.rank == 0) {
    rep.line("note: rank <= 1: reconstruction impossible");
  }
  for (const auto& note : pos.notes) {
    if (note.quantity == "rank") continue;
    rep.line("note: " + note.quantity + " unrecoverable: " + note.detail);
    rep.record({{"record", "note"},
                {"quantity", note.quantity},
                {"reason", std::string(error_kind_name(note.reason))},
                {"detail", note.detail}});
  }

  result.exit_code = pos.kappa ? exit_code::pass : exit_code::tolerance_failure;
  const std::string status = pos.kappa ? "RECOVERED" : "UNRECOVERABLE";
  rep.line("result: " + status);
  rep.record({{"record", "result"}, {"status", status}, {"exit_code", result.exit_code}});
  return result;
}

CommandResult cmd_integrate(const RunConfig& config) {
  const SurfaceSpec spec = read_surface_spec(config.spec_path);
  const SurfacePatch surface = build_checked(spec);
  if (!surface.closed()) {
    throw Error(ErrorKind::NotClosedSurface,
                "surface '" + spec.name + "' is not closed; integrals need a closed surface");
  }
  const int n = surface.dimension();
  if (n < 3) throw SpecSemanticsError("integral invariants need n >= 3");

  std::vector<int> ks = config.k;
  if (ks.empty())
    for (int k = 0; k <= n; ++k) ks.push_back(k);
  std::vector<int> ms = config.m.empty() ? std::vector<int>{1} : config.m;
  for (int k : ks)
    if (k < 0 || k > n) throw Error(ErrorKind::Range, "--k entries must lie in [0, n]");
  for (int m : ms)
    if (m < 1) throw Error(ErrorKind::Range, "--m entries must be positive");

  const ParallelOptions parallel{config.threads};
  QuadratureGrid grid;
  try {
    grid = build_grid(surface, config.resolution, parallel);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Domain || e.kind() == ErrorKind::ModelDomain) {
      throw SpecSemanticsError(e.what());
    }
    throw;
  }
  IntrinsicTolerances tol;
  tol.pivot = config.tol_pivot;
  const SurfaceSamples samples = sample_surface(surface, grid, tol, parallel);
  const double area = grid.total_weight();
  const double degenerate = degenerate_locus_fraction(samples, 1e-8);
  const auto closed_form = sphere_closed_form(spec);

  CommandResult result;
  Report& rep = result.report;
  rep.line("integrate: " + surface_line(spec));
  rep.line("resolution " + std::to_string(config.resolution) + ", nodes " +
           std::to_string(grid.nodes.size()) + ", area " + sci(area) + ", orientation " +
           std::string(orientation_name(config.orientation)));
  rep.line("degenerate fraction (|sigma_3| < 1e-08): " + sci(degenerate));
  std::size_t failed = 0;
  for (const auto& s : samples.nodes) failed += s.error ? 1 : 0;
  if (failed) rep.line("nodes with evaluation errors: " + std::to_string(failed));
  rep.line("gap = |intrinsic - extrinsic| / (1 + |extrinsic|)");
  rep.record({{"record", "integrate"},
              {"surface", surface_json(spec)},
              {"resolution", config.resolution},
              {"nodes", grid.nodes.size()},
              {"area", area},
              {"orientation", sign(config.orientation)},
              {"degenerate_fraction", degenerate},
              {"failed_nodes", failed}});

  std::string header = pad("k", 4) + pad("m", 4) + pad("extrinsic", 16) + pad("intrinsic", 16) +
                       pad("gap", 15) + pad("degenerate", 11) + pad("filled", 8);
  if (closed_form) header += pad("closed_form", 16) + pad("closed_gap", 15);
  rep.line(header + "status");

  bool all_pass = true;
  for (int k : ks)
    for (int m : ms) {
      const auto ext = integrate_samples(samples, k, m, IntegrationMode::Extrinsic,
                                         config.orientation);
      const auto intr = integrate_samples(samples, k, m, IntegrationMode::Intrinsic,
                                          config.orientation);
      const double g = std::abs(intr.value - ext.value) / (1.0 + std::abs(ext.value));
      bool pass = g < config.tol_integral;
      std::string line = pad(std::to_string(k), 4) + pad(std::to_string(m), 4) +
                         pad(sci(ext.value), 16) + pad(sci(intr.value), 16) + pad(sci(g), 15) +
                         pad(std::to_string(intr.certified_zero), 11) +
                         pad(std::to_string(intr.filled), 8);
      nlohmann::json entry{{"record", "integral"},
                           {"k", k},
                           {"m", m},
                           {"extrinsic", ext.value},
                           {"intrinsic", intr.value},
                           {"gap", g},
                           {"certified_zero", intr.certified_zero},
                           {"filled", intr.filled}};
      if (closed_form) {
        const double signed_sign = (k % 2 == 1 && config.orientation == Orientation::Negative &&
                                    m % 2 == 1)
                                       ? -1.0
                                       : 1.0;
        const double exact = signed_sign * closed_form->integral(n, k, m);
        const double cg = std::abs(ext.value - exact) / std::max(1e-300, std::abs(exact));
        pass = pass && cg < 0.01;
        line += pad(sci(exact), 16) + pad(sci(cg), 15);
        entry["closed_form"] = exact;
        entry["closed_gap"] = cg;
      }
      all_pass = all_pass && pass;
      line += pass ? "PASS" : "FAIL";
      entry["status"] = pass ? "PASS" : "FAIL";
      rep.line(line);
      rep.record(std::move(entry));
    }

  result.exit_code = failed ? exit_code::pipeline_error
                     : all_pass ? exit_code::pass
                                : exit_code::tolerance_failure;
  const std::string status = result.exit_code == exit_code::pass ? "PASS" : "FAIL";
  rep.line("result: " + status);
  rep.record({{"record", "result"}, {"status", status}, {"exit_code", result.exit_code}});
  return result;
}

CommandResult cmd_genpoly(const RunConfig& config) {
  if (config.n < 1) throw Error(ErrorKind::Range, "--n must be positive");
  if (config.format != "plain" && config.format != "latex") {
    throw Error(ErrorKind::SpecParse, "--format must be plain or latex");
  }
  const PairingPolynomial P = build_pairing_polynomial(config.n, config.a, config.b);
  CommandResult result;
  std::string body = config.format == "plain" ? to_plain(P.poly) : to_latex(P.poly) + "\n";
  if (!body.empty() && body.back() == '\n') body.pop_back();
  result.report.line(body);
  result.report.record({{"record", "polynomial"},
                        {"n", config.n},
                        {"a", config.a},
                        {"b", config.b},
                        {"degree", P.degree()},
                        {"terms", P.poly.size()},
                        {"plain", to_plain(P.poly)},
                        {"latex", to_latex(P.poly)}});
  return result;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  CommandResult result;
  try {
    if (config.command == "verify") {
      result = cmd_verify(config);
    } else if (config.command == "reconstruct") {
      result = cmd_reconstruct(config);
    } else if (config.command == "integrate") {
      result = cmd_integrate(config);
    } else if (config.command == "gen-poly") {
      result = cmd_genpoly(config);
    } else {
      err << "unknown command '" << config.command << "'\n";
      return exit_code::usage;
    }
  } catch (const SpecSemanticsError& e) {
    err << "spec error: " << e.what() << "\n";
    return exit_code::spec_semantics;
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::SpecParse:
        return exit_code::usage;
      case ErrorKind::Parity:
      case ErrorKind::Range:
        err << "usage: egregium gen-poly --n N --a ODD --b ODD [--format plain|latex]\n"
               "       odd degrees in [1, n], not both 1\n";
        return exit_code::usage;
      case ErrorKind::NotClosedSurface:
        return exit_code::spec_semantics;
      default:
        return exit_code::pipeline_error;
    }
  }

  out << result.report.text();
  if (!config.output_path.empty()) {
    std::ofstream text_file(config.output_path, std::ios::binary);
    std::ofstream json_file(config.output_path + ".jsonl", std::ios::binary);
    if (!text_file || !json_file) {
      err << "cannot write report to '" << config.output_path << "'\n";
      return exit_code::pipeline_error;
    }
    text_file << result.report.text();
    json_file << result.report.jsonl();
  }
  return result.exit_code;
}

}  // namespace egregium
