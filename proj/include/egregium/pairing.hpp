#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "egregium/curvature.hpp"

namespace egregium {

using Rational = boost::rational<std::int64_t>;

/// Unordered index pair {a, b}, a != b, stored with a < b.
using IndexPair = std::pair<int, int>;
/// Sorted multiset of pairs; a monomial prod Q_ab.
using PairMonomial = std::vector<IndexPair>;

/// Polynomial in the off-diagonal symbols Q_ab with exact rational
/// coefficients, kept in canonical form: each pair sorted, each monomial's
/// pair list sorted, equal monomials merged, zero terms dropped.
class PairPolynomial {
 public:
  explicit PairPolynomial(int dimension = 0) : n_(dimension) {}

  int dimension() const noexcept { return n_; }
  const std::map<PairMonomial, Rational>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Adds coeff * prod pairs. Throws std::logic_error on a diagonal pair,
  /// Error{Index} on an out-of-range index.
  void add(Rational coeff, PairMonomial pairs);

  /// Sum of coefficient * prod Q_ab; never reads the diagonal.
  double evaluate(const PairProductMatrix& Q) const;

  /// Builds the flattened evaluation table. Evaluation works without it,
  /// only slower; add() invalidates it.
  void finalize();

  /// True when every monomial has exactly `degree` pairs.
  bool has_uniform_degree(int degree) const;

  friend bool operator==(const PairPolynomial& a, const PairPolynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  int n_;
  std::map<PairMonomial, Rational> terms_;
  bool compiled_ = false;
  std::vector<double> coeffs_;
  std::vector<std::size_t> starts_;
  std::vector<int> offsets_;
};

/// How perfect pairings and partners are chosen when expanding products of
/// curvatures into pair monomials. The default picks sorted consecutive
/// pairs and the smallest available partners; a seeded rule picks them at
/// random. Both give equal values on realizable Q.
struct PairingRule {
  std::optional<std::uint64_t> seed;
};

/// P_{a,b} for odd a, b (or, with b absent, the even sigma_a expansion).
struct PairingPolynomial {
  int n = 0;
  int a = 0;
  std::optional<int> b;
  PairPolynomial poly;

  double evaluate(const PairProductMatrix& Q) const;
  int degree() const { return b ? (a + *b) / 2 : a / 2; }
};

/// sigma_a sigma_b = (1/a) sum_i sigma_{a-1}(k|i) [sigma_b(k|i) k_i +
/// sigma_{b-1}(k|i) k_i^2] with a >= b (swapped if needed), each term
/// expanded into pair monomials. Error{Parity} for even a or b;
/// Error{Range} for a, b outside [1, n] or a = b = 1.
PairingPolynomial build_pairing_polynomial(int n, int a, int b, const PairingRule& rule = {});

/// sigma_m for even m as a sum of perfect pairings of each m-subset.
/// Error{Parity} for odd m, Error{Range} for m outside [0, n].
PairingPolynomial build_even_sigma_polynomial(int n, int m, const PairingRule& rule = {});

/// kappa_i sigma_r(kappa) for odd r >= 3.
PairPolynomial build_kappa_times_sigma(int n, int i, int r, const PairingRule& rule = {});

/// sigma_r(kappa) |kappa|^2 for even r >= 4.
PairPolynomial build_sigma_times_norm_sq(int n, int r, const PairingRule& rule = {});

/// One monomial per line: `<p>/<q> * Q[a,b] Q[c,d] ...`, 1-based indices.
std::string to_plain(const PairPolynomial& poly);
/// Sum of `\frac{p}{q}\,Q_{ab}Q_{cd}...` terms on one line.
std::string to_latex(const PairPolynomial& poly);

/// Inverse of to_plain / to_latex; Error{SpecParse} on malformed text.
PairPolynomial parse_plain(std::string_view text, int n);
PairPolynomial parse_latex(std::string_view text, int n);

/// All k-subsets of {0..n-1} in lexicographic order, excluding `skip`.
std::vector<std::vector<int>> index_subsets(int n, int k, int skip = -1);

}  // namespace egregium
