#include "egregium/intrinsic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "egregium/symfun.hpp"

namespace egregium {

namespace {

template <class Value>
class PolynomialCache {
 public:
  using Key = std::tuple<int, int, int>;

  template <class Build>
  const Value& get(const Key& key, Build&& build) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = entries_.find(key); it != entries_.end()) return *it->second;
    }
    auto fresh = std::make_unique<Value>(build());
    std::unique_lock lock(mutex_);
    auto [it, inserted] = entries_.try_emplace(key, std::move(fresh));
    return *it->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<Key, std::unique_ptr<const Value>> entries_;
};

PolynomialCache<PairingPolynomial>& odd_cache() {
  static PolynomialCache<PairingPolynomial> cache;
  return cache;
}
PolynomialCache<PairingPolynomial>& even_cache() {
  static PolynomialCache<PairingPolynomial> cache;
  return cache;
}
PolynomialCache<PairPolynomial>& kappa_sigma_cache() {
  static PolynomialCache<PairPolynomial> cache;
  return cache;
}
PolynomialCache<PairPolynomial>& norm_cache() {
  static PolynomialCache<PairPolynomial> cache;
  return cache;
}

std::string index_list(std::initializer_list<int> indices) {
  std::string out = "(";
  bool first = true;
  for (int i : indices) {
    if (!first) out += ", ";
    out += std::to_string(i + 1);
    first = false;
  }
  return out + ")";
}

std::string index_list(const std::vector<int>& indices) {
  std::string out = "(";
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k) out += ", ";
    out += std::to_string(indices[k] + 1);
  }
  return out + ")";
}

// sigma_1 is treated as zero once its square drops below this.
bool negligible_mean_square(const PairProductMatrix& Q, double h2, const IntrinsicTolerances& tol) {
  return std::abs(h2) <= pivot_tolerance(Q, 1, 1, tol);
}

}  // namespace

const PairingPolynomial& cached_pairing_polynomial(int n, int a, int b) {
  if (a < b) std::swap(a, b);
  return odd_cache().get({n, a, b}, [&] { return build_pairing_polynomial(n, a, b); });
}

const PairingPolynomial& cached_even_sigma_polynomial(int n, int m) {
  return even_cache().get({n, m, 0}, [&] { return build_even_sigma_polynomial(n, m); });
}

const PairPolynomial& cached_kappa_times_sigma(int n, int i, int r) {
  return kappa_sigma_cache().get({n, i, r}, [&] { return build_kappa_times_sigma(n, i, r); });
}

const PairPolynomial& cached_sigma_times_norm_sq(int n, int r) {
  return norm_cache().get({n, r, 0}, [&] { return build_sigma_times_norm_sq(n, r); });
}

double evaluate_pairing_polynomial(const PairingPolynomial& P, const PairProductMatrix& Q) {
  if (P.n != Q.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "polynomial has n = " + std::to_string(P.n) +
                                                  " but Q has n = " +
                                                  std::to_string(Q.dimension()));
  }
  return P.poly.evaluate(Q);
}

double sigma_even_intrinsic(const PairProductMatrix& Q, int m) {
  if (m % 2 != 0) throw Error(ErrorKind::Parity, "sigma_" + std::to_string(m) + " is odd");
  if (m < 0 || m > Q.dimension()) {
    throw Error(ErrorKind::Range, "sigma_" + std::to_string(m) + " exceeds n = " +
                                      std::to_string(Q.dimension()));
  }
  if (m == 0) return 1.0;
  return evaluate_pairing_polynomial(cached_even_sigma_polynomial(Q.dimension(), m), Q);
}

double pivot_tolerance(const PairProductMatrix& Q, int a, int b, const IntrinsicTolerances& tol) {
  return tol.pivot * std::pow(1.0 + Q.max_abs(), 0.5 * (a + b));
}

OddSigmaRecovery recover_odd_sigmas(const PairProductMatrix& Q, Orientation orientation,
                                    const IntrinsicTolerances& tol) {
  const int n = Q.dimension();
  OddSigmaRecovery out;
  double best = -1.0;
  for (int c = 3; c <= n; c += 2) {
    const double square = evaluate_pairing_polynomial(cached_pairing_polynomial(n, c, c), Q);
    out.candidate_squares.push_back(square);
    const double threshold = pivot_tolerance(Q, c, c, tol);
    if (std::abs(square) > threshold && std::abs(square) > best) {
      best = std::abs(square);
      out.pivot_degree = c;
      out.pivot_square = square;
      out.pivot_threshold = threshold;
    }
  }
  if (out.pivot_degree == 0) {
    throw Error(ErrorKind::AllOddDegenerate,
                "every odd sigma of degree >= 3 vanishes within tolerance");
  }
  if (out.pivot_square < 0.0) {
    throw Error(ErrorKind::NegativeSquare,
                "sigma_" + std::to_string(out.pivot_degree) + "^2 evaluates to " +
                    std::to_string(out.pivot_square));
  }
  const double pivot = sign(orientation) * std::sqrt(out.pivot_square);
  for (int d = 1; d <= n; d += 2) {
    if (d == out.pivot_degree) {
      out.values.push_back(pivot);
    } else {
      const auto& P = cached_pairing_polynomial(n, out.pivot_degree, d);
      out.values.push_back(evaluate_pairing_polynomial(P, Q) / pivot);
    }
  }
  return out;
}

double rank_threshold(const PairProductMatrix& Q, const IntrinsicTolerances& tol) {
  return tol.rank >= 0.0 ? tol.rank : 1e-9 * std::max(1.0, Q.max_abs());
}

int rank_estimate(const PairProductMatrix& Q, double threshold) {
  const int n = Q.dimension();
  int count = 0;
  for (int i = 0; i < n; ++i) {
    double widest = 0.0;
    for (int b = 0; b < n; ++b)
      if (b != i) widest = std::max(widest, std::abs(Q(i, b)));
    if (widest > threshold) ++count;
  }
  return count;
}

int rank_estimate(const PairProductMatrix& Q, const IntrinsicTolerances& tol) {
  return rank_estimate(Q, rank_threshold(Q, tol));
}

double norm_sq_intrinsic(const PairProductMatrix& Q, const IntrinsicTolerances& tol) {
  const int n = Q.dimension();
  const int r = rank_estimate(Q, tol);
  if (r < 3) {
    throw Error(ErrorKind::RankTooLow, "estimated rank " + std::to_string(r) + " < 3");
  }
  if (r % 2 == 1) {
    const double sigma_sq = evaluate_pairing_polynomial(cached_pairing_polynomial(n, r, r), Q);
    if (!(sigma_sq > 0.0)) {
      throw Error(ErrorKind::NegativeSquare,
                  "sigma_" + std::to_string(r) + "^2 evaluates to " + std::to_string(sigma_sq));
    }
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double product = cached_kappa_times_sigma(n, i, r).evaluate(Q);
      sum += product * product;
    }
    return sum / sigma_sq;
  }
  const double sigma = sigma_even_intrinsic(Q, r);
  if (sigma == 0.0) {
    throw Error(ErrorKind::RankTooLow, "sigma_" + std::to_string(r) + " vanishes");
  }
  return cached_sigma_times_norm_sq(n, r).evaluate(Q) / sigma;
}

double mean_curvature_intrinsic(const PairProductMatrix& Q, Orientation orientation,
                                const IntrinsicTolerances& tol) {
  const double norm_sq = norm_sq_intrinsic(Q, tol);
  const double square = norm_sq + 2.0 * sigma_even_intrinsic(Q, 2);
  if (square < -1e-8 * (1.0 + std::abs(norm_sq))) {
    throw Error(ErrorKind::NegativeSquare, "sigma_1^2 evaluates to " + std::to_string(square));
  }
  return sign(orientation) * std::sqrt(std::max(0.0, square));
}

std::pair<double, std::vector<int>> realizability_defect(const PairProductMatrix& Q) {
  const int n = Q.dimension();
  double worst = 0.0;
  std::vector<int> where;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
          const double defect = std::abs(Q(a, b) * Q(c, d) - Q(a, c) * Q(b, d));
          if (defect > worst) {
            worst = defect;
            where = {a, b, c, d};
          }
        }
  return {worst, where};
}

Reconstruction reconstruct_kappa(const PairProductMatrix& Q, Orientation orientation,
                                 const IntrinsicTolerances& tol) {
  const int n = Q.dimension();
  const double threshold = rank_threshold(Q, tol);
  std::vector<bool> active(n, false);
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < n; ++b)
      if (b != i && std::abs(Q(i, b)) > threshold) active[i] = true;
  const int r = static_cast<int>(std::count(active.begin(), active.end(), true));
  if (r < 3) {
    throw Error(ErrorKind::RankTooLow,
                "estimated rank " + std::to_string(r) + " < 3: reconstruction impossible");
  }

  int ti = -1, tj = -1, tm = -1;
  double best = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int m = j + 1; m < n; ++m) {
        if (!active[i] || !active[j] || !active[m]) continue;
        const double weakest =
            std::min({std::abs(Q(i, j)), std::abs(Q(i, m)), std::abs(Q(j, m))});
        if (weakest > best) {
          best = weakest;
          ti = i, tj = j, tm = m;
        }
      }
  if (ti < 0 || best <= threshold) {
    throw Error(ErrorKind::NotRealizable,
                "no index triple with three nonzero products among " + std::to_string(r) +
                    " interacting indices");
  }

  Reconstruction out;
  double anchor_sq = -1.0;
  const int triple[3] = {ti, tj, tm};
  for (int k = 0; k < 3; ++k) {
    const int i = triple[k], j = triple[(k + 1) % 3], m = triple[(k + 2) % 3];
    const double ratio = Q(i, j) * Q(i, m) / Q(j, m);
    if (ratio <= 0.0) {
      throw Error(ErrorKind::NotRealizable, "Q" + index_list({i, j}) + " Q" +
                                                index_list({i, m}) + " / Q" +
                                                index_list({j, m}) + " is negative at triple " +
                                                index_list({ti, tj, tm}));
    }
    if (ratio > anchor_sq) {
      anchor_sq = ratio;
      out.anchor = i, out.second = j, out.third = m;
    }
  }
  const double anchor = std::sqrt(anchor_sq);
  out.kappa = Eigen::VectorXd::Zero(n);
  out.kappa(out.anchor) = anchor;
  for (int b = 0; b < n; ++b)
    if (b != out.anchor && active[b]) out.kappa(b) = Q(out.anchor, b) / anchor;

  int worst_a = 0, worst_b = 1;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const double gap = std::abs(out.kappa(a) * out.kappa(b) - Q(a, b));
      if (gap > out.residual) {
        out.residual = gap;
        worst_a = a, worst_b = b;
      }
    }
  if (out.residual > tol.realizability * (1.0 + Q.max_abs())) {
    std::string where;
    if (n >= 4) {
      where = "quadruple " + index_list(realizability_defect(Q).second);
    } else {
      where = "triple " + index_list({ti, tj, tm});
    }
    throw Error(ErrorKind::NotRealizable,
                "products disagree by " + std::to_string(out.residual) + " at Q" +
                    index_list({worst_a, worst_b}) + "; offending " + where);
  }

  // Put the orientation-carrying odd sigma on the requested side.
  const auto sigmas = elementary_symmetric_all(as_span(out.kappa));
  double carrier = 0.0;
  try {
    carrier = sigmas[recover_odd_sigmas(Q, Orientation::Positive, tol).pivot_degree];
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::AllOddDegenerate && e.kind() != ErrorKind::NegativeSquare) throw;
    if (!negligible_mean_square(Q, sigmas[1] * sigmas[1], tol)) carrier = sigmas[1];
  }
  if (carrier == 0.0) carrier = anchor;
  if ((carrier < 0.0) != (sign(orientation) < 0)) out.kappa = -out.kappa;
  return out;
}

std::optional<double> IntrinsicReport::sigma(int m) const {
  if (m < 0 || m > dimension) {
    throw Error(ErrorKind::Index, "sigma order " + std::to_string(m) + " out of range");
  }
  if (m % 2 == 0) return sigma_even[static_cast<std::size_t>(m / 2)];
  if (!sigma_odd) return std::nullopt;
  return (*sigma_odd)[static_cast<std::size_t>(m / 2)];
}

bool IntrinsicReport::has_note(ErrorKind kind) const {
  return std::any_of(notes.begin(), notes.end(),
                     [kind](const RecoveryNote& note) { return note.reason == kind; });
}

IntrinsicReport intrinsic_report(const PairProductMatrix& Q, Orientation orientation,
                                 const IntrinsicTolerances& tol) {
  const int n = Q.dimension();
  IntrinsicReport rep;
  rep.dimension = n;
  rep.orientation = orientation;
  rep.rank = rank_estimate(Q, tol);
  for (int m = 0; m <= n; m += 2) rep.sigma_even.push_back(sigma_even_intrinsic(Q, m));
  rep.sigma_odd_sq.push_back(std::nullopt);
  for (int c = 3; c <= n; c += 2) {
    rep.sigma_odd_sq.push_back(
        evaluate_pairing_polynomial(cached_pairing_polynomial(n, c, c), Q));
  }
  if (rep.rank == 0) {
    rep.notes.push_back({"rank", ErrorKind::RankTooLow,
                         "all products vanish: rank 0 and rank 1 are indistinguishable"});
  }

  auto noted = [&](const std::string& quantity, const Error& e) {
    rep.notes.push_back({quantity, e.kind(), e.what()});
  };

  try {
    const auto rec = recover_odd_sigmas(Q, orientation, tol);
    rep.sigma_odd = rec.values;
    rep.pivot_degree = rec.pivot_degree;
    rep.mean_curvature = rec.values.front();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::AllOddDegenerate && e.kind() != ErrorKind::NegativeSquare) throw;
    noted("sigma_odd", e);
  }

  try {
    rep.norm_sq = norm_sq_intrinsic(Q, tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RankTooLow && e.kind() != ErrorKind::NegativeSquare) throw;
    noted("norm_sq", e);
  }

  if (!rep.sigma_odd && rep.norm_sq) {
    try {
      const double h = mean_curvature_intrinsic(Q, orientation, tol);
      rep.mean_curvature = h;
      std::vector<double> odd{h};
      const bool carries = !negligible_mean_square(Q, h * h, tol);
      for (int c = 3; c <= n; c += 2) {
        odd.push_back(carries ? evaluate_pairing_polynomial(cached_pairing_polynomial(n, c, 1), Q) / h
                              : 0.0);
      }
      // With every odd square negligible the odd sigmas vanish on both sides.
      rep.sigma_odd = odd;
      if (carries) rep.pivot_degree = 1;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NegativeSquare) throw;
      noted("mean_curvature", e);
    }
  } else if (!rep.sigma_odd) {
    rep.notes.push_back({"mean_curvature", ErrorKind::RankTooLow,
                         "no odd pivot and estimated rank " + std::to_string(rep.rank) + " < 3"});
  }

  if (rep.mean_curvature) {
    rep.sigma_odd_sq.front() = *rep.mean_curvature * *rep.mean_curvature;
  }

  try {
    rep.kappa = reconstruct_kappa(Q, orientation, tol).kappa;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RankTooLow && e.kind() != ErrorKind::NotRealizable) throw;
    noted("kappa", e);
  }
  return rep;
}

IntrinsicReport intrinsic_report(const RiemannTensor& R, int ambient_curvature,
                                 Orientation orientation, const IntrinsicTolerances& tol) {
  return intrinsic_report(pair_products(R, ambient_curvature), orientation, tol);
}

}  // namespace egregium
