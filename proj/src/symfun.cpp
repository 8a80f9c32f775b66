#include "egregium/symfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "egregium/error.hpp"

namespace egregium {

SigmaVector::SigmaVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty() || values_[0] != 1.0) {
    throw Error(ErrorKind::Domain, "sigma vector must start with sigma_0 = 1");
  }
}

SigmaVector SigmaVector::from_kappa(std::span<const double> kappa) {
  return SigmaVector(elementary_symmetric_all(kappa));
}

std::vector<double> elementary_symmetric_all(std::span<const double> kappa) {
  std::vector<double> e(kappa.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    for (std::size_t m = i + 1; m >= 1; --m) e[m] += kappa[i] * e[m - 1];
  }
  return e;
}

double elementary_symmetric(std::span<const double> kappa, int m) {
  if (m < 0 || m > static_cast<int>(kappa.size())) {
    throw Error(ErrorKind::Index, "sigma order " + std::to_string(m) + " out of range");
  }
  return elementary_symmetric_all(kappa)[m];
}

double elementary_symmetric_excluding(std::span<const double> kappa, int m, int i) {
  const int n = static_cast<int>(kappa.size());
  if (i < 0 || i >= n) throw Error(ErrorKind::Index, "excluded index out of range");
  if (m < 0 || m > n - 1) {
    throw Error(ErrorKind::Index, "sigma order " + std::to_string(m) + " out of range");
  }
  std::vector<double> rest;
  rest.reserve(n - 1);
  for (int k = 0; k < n; ++k)
    if (k != i) rest.push_back(kappa[k]);
  return elementary_symmetric_all(rest)[m];
}

std::vector<double> kappa_from_sigma(const SigmaVector& sigma) {
  const int n = sigma.dimension();
  if (n == 0) return {};
  // Monic polynomial t^n + c_{n-1} t^{n-1} + ... + c_0 with
  // c_{n-m} = (-1)^m sigma_m.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int r = 1; r < n; ++r) companion(r, r - 1) = 1.0;
  for (int m = 1; m <= n; ++m) {
    const double c = ((m % 2) ? -1.0 : 1.0) * sigma[m];
    companion(n - m, n - 1) = -c;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> eig(companion, false);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolveFailure, "companion eigensolve failed");
  }
  std::vector<std::complex<double>> roots(eig.eigenvalues().data(),
                                          eig.eigenvalues().data() + n);
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  double scale = 1.0;
  for (const auto& r : roots) scale = std::max(scale, std::abs(r));
  // A multiple root of multiplicity k is perturbed by ~eps^{1/k}; cluster
  // within that radius and judge realness on the cluster mean.
  const double cluster_radius = 1e-4 * scale;
  std::vector<bool> used(n, false);
  std::vector<double> out;
  out.reserve(n);
  for (int a = 0; a < n; ++a) {
    if (used[a]) continue;
    std::vector<int> members{a};
    used[a] = true;
    for (std::size_t idx = 0; idx < members.size(); ++idx) {
      for (int b = a + 1; b < n; ++b) {
        if (!used[b] && std::abs(roots[b] - roots[members[idx]]) <= cluster_radius) {
          members.push_back(b);
          used[b] = true;
        }
      }
    }
    auto is_real = [](std::complex<double> z) {
      return std::abs(z.imag()) <= 1e-7 * std::max(1.0, std::abs(z));
    };
    if (std::all_of(members.begin(), members.end(), [&](int k) { return is_real(roots[k]); })) {
      for (int k : members) out.push_back(roots[k].real());
      continue;
    }
    std::complex<double> mean = 0.0;
    for (int k : members) mean += roots[k];
    mean /= static_cast<double>(members.size());
    if (!is_real(mean)) {
      throw Error(ErrorKind::NonRealRoots,
                  "root with imaginary part " + std::to_string(mean.imag()));
    }
    for (std::size_t k = 0; k < members.size(); ++k) out.push_back(mean.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace egregium
