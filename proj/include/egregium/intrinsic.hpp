#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "egregium/curvature.hpp"
#include "egregium/error.hpp"
#include "egregium/orientation.hpp"
#include "egregium/pairing.hpp"

namespace egregium {

/// Numerical thresholds of the intrinsic pipeline.
struct IntrinsicTolerances {
  /// Relative factor of the pivot threshold
  /// factor * (1 + max|Q|)^{(a+b)/2}.
  double pivot = 1e-8;
  /// Threshold for rank_estimate; negative selects 1e-9 * max(1, max|Q|).
  double rank = -1.0;
  /// Relative bound on the reconstruction cross-check residual.
  double realizability = 1e-6;
};

/// Shared, lazily built polynomials keyed by their degrees. Safe for
/// concurrent use; returned references stay valid for the process lifetime.
const PairingPolynomial& cached_pairing_polynomial(int n, int a, int b);
const PairingPolynomial& cached_even_sigma_polynomial(int n, int m);
const PairPolynomial& cached_kappa_times_sigma(int n, int i, int r);
const PairPolynomial& cached_sigma_times_norm_sq(int n, int r);

/// Sum of coefficient * prod Q_ab. Error{DimensionMismatch} when n differs.
double evaluate_pairing_polynomial(const PairingPolynomial& P, const PairProductMatrix& Q);

/// sigma_m from pair products alone. Error{Parity} for odd m, Error{Range}
/// outside [0, n].
double sigma_even_intrinsic(const PairProductMatrix& Q, int m);

/// The pivot threshold for P_{a,b}.
double pivot_tolerance(const PairProductMatrix& Q, int a, int b,
                       const IntrinsicTolerances& tol = {});

struct OddSigmaRecovery {
  /// sigma_1, sigma_3, ... up to the largest odd degree <= n.
  std::vector<double> values;
  int pivot_degree = 0;
  double pivot_square = 0.0;
  double pivot_threshold = 0.0;
  /// P_{c,c}(Q) for c = 3, 5, ...
  std::vector<double> candidate_squares;

  double sigma(int m) const { return values.at(static_cast<std::size_t>(m / 2)); }
};

/// Odd sigmas with the pivot sigma_c (c >= 3 maximising |P_{c,c}|) given the
/// sign of `orientation`. Error{AllOddDegenerate} when no pivot exceeds its
/// threshold, Error{NegativeSquare} when the chosen pivot square is negative.
OddSigmaRecovery recover_odd_sigmas(const PairProductMatrix& Q, Orientation orientation,
                                    const IntrinsicTolerances& tol = {});

/// Number of indices with max_{b != i} |Q_ib| > threshold.
int rank_estimate(const PairProductMatrix& Q, double threshold);
int rank_estimate(const PairProductMatrix& Q, const IntrinsicTolerances& tol = {});
double rank_threshold(const PairProductMatrix& Q, const IntrinsicTolerances& tol = {});

/// |kappa|^2 by the odd- or even-rank formula. Error{RankTooLow} below rank 3.
double norm_sq_intrinsic(const PairProductMatrix& Q, const IntrinsicTolerances& tol = {});

/// sigma_1 with the sign of `orientation`. Error{RankTooLow},
/// Error{NegativeSquare}.
double mean_curvature_intrinsic(const PairProductMatrix& Q, Orientation orientation,
                                const IntrinsicTolerances& tol = {});

struct Reconstruction {
  Eigen::VectorXd kappa;
  /// The triple whose products fix the first curvature.
  int anchor = 0, second = 0, third = 0;
  /// max |kappa_a kappa_b - Q_ab| over a != b.
  double residual = 0.0;
};

/// kappa in the frame of Q. The global sign puts the pivot odd sigma (else
/// sigma_1, else kappa at the anchor) on the side of `orientation`.
/// Error{RankTooLow}; Error{NotRealizable} naming the offending indices.
Reconstruction reconstruct_kappa(const PairProductMatrix& Q, Orientation orientation,
                                 const IntrinsicTolerances& tol = {});

/// Largest |Q_ab Q_cd - Q_ac Q_bd| over distinct a, b, c, d, with the
/// maximising quadruple (0-based). Zero and {} for n < 4.
std::pair<double, std::vector<int>> realizability_defect(const PairProductMatrix& Q);

/// One quantity that could not be recovered, with the reason.
struct RecoveryNote {
  std::string quantity;
  ErrorKind reason;
  std::string detail;
};

struct IntrinsicReport {
  int dimension = 0;
  int rank = 0;
  Orientation orientation = Orientation::Positive;
  /// sigma_0, sigma_2, sigma_4, ...
  std::vector<double> sigma_even;
  /// sigma_1^2, sigma_3^2, ...; sigma_1^2 only when |kappa|^2 or sigma_1 is
  /// known.
  std::vector<std::optional<double>> sigma_odd_sq;
  /// sigma_1, sigma_3, ... under `orientation`.
  std::optional<std::vector<double>> sigma_odd;
  std::optional<double> norm_sq;
  std::optional<double> mean_curvature;
  std::optional<Eigen::VectorXd> kappa;
  /// Odd degree whose sign carries the orientation; 1 when only the mean
  /// curvature does, empty when neither.
  std::optional<int> pivot_degree;
  std::vector<RecoveryNote> notes;

  /// sigma_m when recovered.
  std::optional<double> sigma(int m) const;
  bool has_note(ErrorKind kind) const;
};

/// Every quantity recoverable from an orthonormal-frame
/// tensor in a principal frame.
IntrinsicReport intrinsic_report(const RiemannTensor& R, int ambient_curvature,
                                 Orientation orientation, const IntrinsicTolerances& tol = {});
IntrinsicReport intrinsic_report(const PairProductMatrix& Q, Orientation orientation,
                                 const IntrinsicTolerances& tol = {});

}  // namespace egregium
