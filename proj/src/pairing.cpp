#include "egregium/pairing.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "egregium/error.hpp"

namespace egregium {

void PairPolynomial::add(Rational coeff, PairMonomial pairs) {
  if (coeff.numerator() == 0) return;
  for (auto& p : pairs) {
    if (p.first == p.second) throw std::logic_error("pair monomial with a diagonal symbol");
    if (p.first < 0 || p.second < 0 || p.first >= n_ || p.second >= n_) {
      throw Error(ErrorKind::Index, "pair index out of range");
    }
    if (p.first > p.second) std::swap(p.first, p.second);
  }
  std::sort(pairs.begin(), pairs.end());
  auto [it, inserted] = terms_.try_emplace(std::move(pairs), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.numerator() == 0) terms_.erase(it);
  }
  compiled_ = false;
}

void PairPolynomial::finalize() {
  coeffs_.clear();
  starts_.clear();
  offsets_.clear();
  for (const auto& [mono, c] : terms_) {
    coeffs_.push_back(boost::rational_cast<double>(c));
    starts_.push_back(offsets_.size());
    for (const auto& [a, b] : mono) offsets_.push_back(a * n_ + b);
  }
  starts_.push_back(offsets_.size());
  compiled_ = true;
}

double PairPolynomial::evaluate(const PairProductMatrix& Q) const {
  if (Q.dimension() != n_) {
    throw Error(ErrorKind::DimensionMismatch, "polynomial and Q differ in dimension");
  }
  // Neumaier-compensated sum of the monomials.
  double sum = 0.0, comp = 0.0;
  auto accumulate = [&](double term) {
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  };
  if (compiled_) {
    const double* q = Q.raw().data();
    for (std::size_t t = 0; t + 1 < starts_.size(); ++t) {
      double prod = coeffs_[t];
      for (std::size_t k = starts_[t]; k < starts_[t + 1]; ++k) prod *= q[offsets_[k]];
      accumulate(prod);
    }
  } else {
    for (const auto& [mono, c] : terms_) {
      double prod = boost::rational_cast<double>(c);
      for (const auto& [a, b] : mono) prod *= Q(a, b);
      accumulate(prod);
    }
  }
  return sum + comp;
}

bool PairPolynomial::has_uniform_degree(int degree) const {
  return std::all_of(terms_.begin(), terms_.end(), [degree](const auto& term) {
    return static_cast<int>(term.first.size()) == degree;
  });
}

double PairingPolynomial::evaluate(const PairProductMatrix& Q) const { return poly.evaluate(Q); }

std::vector<std::vector<int>> index_subsets(int n, int k, int skip) {
  std::vector<int> pool;
  for (int i = 0; i < n; ++i)
    if (i != skip) pool.push_back(i);
  std::vector<std::vector<int>> out;
  const int m = static_cast<int>(pool.size());
  if (k < 0 || k > m) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    std::vector<int> subset(k);
    for (int i = 0; i < k; ++i) subset[i] = pool[idx[i]];
    out.push_back(std::move(subset));
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == m - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

namespace {

// Chooses pairings and partners according to a PairingRule.
class Pairer {
 public:
  explicit Pairer(const PairingRule& rule) {
    if (rule.seed) rng_.emplace(*rule.seed);
  }

  /// Removes and returns one element of `set`.
  int take(std::vector<int>& set) {
    std::size_t pos = 0;
    if (rng_) pos = std::uniform_int_distribution<std::size_t>(0, set.size() - 1)(*rng_);
    const int v = set[pos];
    set.erase(set.begin() + static_cast<std::ptrdiff_t>(pos));
    return v;
  }

  /// Appends a perfect pairing of `set` (even size) to `out`.
  void pair_up(std::vector<int> set, PairMonomial& out) {
    if (rng_) std::shuffle(set.begin(), set.end(), *rng_);
    for (std::size_t k = 0; k + 1 < set.size(); k += 2) out.emplace_back(set[k], set[k + 1]);
  }

 private:
  std::optional<std::mt19937_64> rng_;
};

}  // namespace

PairingPolynomial build_pairing_polynomial(int n, int a, int b, const PairingRule& rule) {
  if (a % 2 == 0 || b % 2 == 0) {
    throw Error(ErrorKind::Parity, "pairing polynomial degrees must be odd (got " +
                                       std::to_string(a) + ", " + std::to_string(b) + ")");
  }
  if (a < 1 || b < 1 || a > n || b > n) {
    throw Error(ErrorKind::Range, "degrees must lie in [1, n] (got " + std::to_string(a) + ", " +
                                      std::to_string(b) + " with n = " + std::to_string(n) + ")");
  }
  if (a == 1 && b == 1) {
    throw Error(ErrorKind::Range, "sigma_1^2 has no pairing expansion; need max(a, b) >= 3");
  }
  PairingPolynomial out{n, a, b, PairPolynomial(n)};
  const int hi = std::max(a, b);
  const int lo = std::min(a, b);
  const Rational weight(1, hi);
  Pairer pairer(rule);

  for (int i = 0; i < n; ++i) {
    const auto evens = index_subsets(n, hi - 1, i);
    const auto odds = index_subsets(n, lo, i);
    const auto rests = index_subsets(n, lo - 1, i);
    for (const auto& S : evens) {
      // sigma_{hi-1}(k|i) sigma_lo(k|i) k_i: pair i with one factor of T.
      for (const auto& T : odds) {
        PairMonomial mono;
        pairer.pair_up(S, mono);
        std::vector<int> rest = T;
        mono.emplace_back(i, pairer.take(rest));
        pairer.pair_up(rest, mono);
        out.poly.add(weight, std::move(mono));
      }
      // sigma_{hi-1}(k|i) sigma_{lo-1}(k|i) k_i^2: pair i with two factors of S.
      for (const auto& U : rests) {
        PairMonomial mono;
        std::vector<int> rest = S;
        mono.emplace_back(i, pairer.take(rest));
        mono.emplace_back(i, pairer.take(rest));
        pairer.pair_up(rest, mono);
        pairer.pair_up(U, mono);
        out.poly.add(weight, std::move(mono));
      }
    }
  }
  out.poly.finalize();
  return out;
}

PairingPolynomial build_even_sigma_polynomial(int n, int m, const PairingRule& rule) {
  if (m % 2 != 0) throw Error(ErrorKind::Parity, "even sigma order must be even");
  if (m < 0 || m > n) throw Error(ErrorKind::Range, "sigma order out of range");
  PairingPolynomial out{n, m, std::nullopt, PairPolynomial(n)};
  Pairer pairer(rule);
  for (const auto& S : index_subsets(n, m)) {
    PairMonomial mono;
    pairer.pair_up(S, mono);
    out.poly.add(Rational(1), std::move(mono));
  }
  out.poly.finalize();
  return out;
}

PairPolynomial build_kappa_times_sigma(int n, int i, int r, const PairingRule& rule) {
  if (r % 2 == 0 || r < 3 || r > n) {
    throw Error(ErrorKind::Range, "kappa_i sigma_r needs odd 3 <= r <= n");
  }
  if (i < 0 || i >= n) throw Error(ErrorKind::Index, "curvature index out of range");
  PairPolynomial out(n);
  Pairer pairer(rule);
  for (const auto& S : index_subsets(n, r)) {
    PairMonomial mono;
    if (std::find(S.begin(), S.end(), i) == S.end()) {
      std::vector<int> all = S;
      all.push_back(i);
      pairer.pair_up(all, mono);
    } else {
      std::vector<int> rest;
      for (int s : S)
        if (s != i) rest.push_back(s);
      mono.emplace_back(i, pairer.take(rest));
      mono.emplace_back(i, pairer.take(rest));
      pairer.pair_up(rest, mono);
    }
    out.add(Rational(1), std::move(mono));
  }
  out.finalize();
  return out;
}

PairPolynomial build_sigma_times_norm_sq(int n, int r, const PairingRule& rule) {
  if (r % 2 != 0 || r < 4 || r > n) {
    throw Error(ErrorKind::Range, "sigma_r |kappa|^2 needs even 4 <= r <= n");
  }
  PairPolynomial out(n);
  Pairer pairer(rule);
  for (const auto& S : index_subsets(n, r)) {
    for (int j = 0; j < n; ++j) {
      PairMonomial mono;
      std::vector<int> rest;
      for (int s : S)
        if (s != j) rest.push_back(s);
      // k_j^2 k_S: j pairs with two members of S when j is outside S, and
      // with three of the others when j is inside.
      const int partners = static_cast<int>(rest.size()) == r ? 2 : 3;
      for (int p = 0; p < partners; ++p) mono.emplace_back(j, pairer.take(rest));
      pairer.pair_up(rest, mono);
      out.add(Rational(1), std::move(mono));
    }
  }
  out.finalize();
  return out;
}

namespace {

std::string coefficient_text(const Rational& c) {
  return std::to_string(c.numerator()) + "/" + std::to_string(c.denominator());
}

std::string latex_index(int a, int b, int n) {
  if (n <= 9) return std::to_string(a + 1) + std::to_string(b + 1);
  return std::to_string(a + 1) + "," + std::to_string(b + 1);
}

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorKind::SpecParse, "polynomial text: " + what);
}

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= s_.size();
  }
  bool accept(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) parse_fail("expected '" + std::string(tok) + "' at offset " + std::to_string(pos_));
  }
  std::int64_t integer() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start]))))
      parse_fail("expected an integer at offset " + std::to_string(start));
    return std::stoll(std::string(s_.substr(start, pos_ - start)));
  }
  int digit() {
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      parse_fail("expected a digit at offset " + std::to_string(pos_));
    return s_[pos_++] - '0';
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_plain(const PairPolynomial& poly) {
  std::ostringstream out;
  for (const auto& [mono, c] : poly.terms()) {
    out << coefficient_text(c) << " *";
    if (mono.empty()) out << " 1";
    for (const auto& [a, b] : mono) out << " Q[" << a + 1 << "," << b + 1 << "]";
    out << "\n";
  }
  return out.str();
}

std::string to_latex(const PairPolynomial& poly) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [mono, c] : poly.terms()) {
    const bool negative = c.numerator() < 0;
    const Rational mag = negative ? -c : c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    out << "\\frac{" << mag.numerator() << "}{" << mag.denominator() << "}";
    if (!mono.empty()) out << "\\,";
    for (const auto& [a, b] : mono) out << "Q_{" << latex_index(a, b, poly.dimension()) << "}";
  }
  if (first) out << "0";
  return out.str();
}

PairPolynomial parse_plain(std::string_view text, int n) {
  PairPolynomial poly(n);
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    Cursor cur(line);
    if (cur.done()) continue;
    const std::int64_t num = cur.integer();
    cur.expect("/");
    const std::int64_t den = cur.integer();
    if (den == 0) parse_fail("zero denominator");
    cur.expect("*");
    PairMonomial mono;
    if (!cur.accept("1")) {
      while (!cur.done()) {
        cur.expect("Q[");
        const auto a = cur.integer();
        cur.expect(",");
        const auto b = cur.integer();
        cur.expect("]");
        if (a < 1 || b < 1 || a > n || b > n || a == b) parse_fail("bad pair index");
        mono.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
      }
    }
    if (!cur.done()) parse_fail("trailing text in '" + line + "'");
    poly.add(Rational(num, den), std::move(mono));
  }
  poly.finalize();
  return poly;
}

PairPolynomial parse_latex(std::string_view text, int n) {
  PairPolynomial poly(n);
  Cursor cur(text);
  if (cur.accept("0") && cur.done()) return poly;
  bool first = true;
  while (!cur.done()) {
    std::int64_t sign = 1;
    if (cur.accept("-")) {
      sign = -1;
    } else if (!first) {
      cur.expect("+");
    }
    first = false;
    cur.expect("\\frac{");
    const auto num = cur.integer();
    cur.expect("}{");
    const auto den = cur.integer();
    cur.expect("}");
    if (den == 0) parse_fail("zero denominator");
    PairMonomial mono;
    if (cur.accept("\\,")) {
      while (cur.accept("Q_{")) {
        int a = 0, b = 0;
        if (n <= 9) {
          a = cur.digit();
          b = cur.digit();
        } else {
          a = static_cast<int>(cur.integer());
          cur.expect(",");
          b = static_cast<int>(cur.integer());
        }
        cur.expect("}");
        if (a < 1 || b < 1 || a > n || b > n || a == b) parse_fail("bad pair index");
        mono.emplace_back(a - 1, b - 1);
      }
      if (mono.empty()) parse_fail("expected Q_{..} after \\,");
    }
    poly.add(Rational(sign * num, den), std::move(mono));
  }
  poly.finalize();
  return poly;
}

}  // namespace egregium
