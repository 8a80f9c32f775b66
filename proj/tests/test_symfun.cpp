#include <doctest.h>

#include <random>
#include <vector>

#include "egregium/symfun.hpp"
#include "support/checks.hpp"
#include "support/oracles.hpp"

using namespace egregium;

TEST_SUITE("symfun") {

TEST_CASE("elementary symmetric values for (1, 2, 3)") {
  const std::vector<double> k{1, 2, 3};
  CHECK(elementary_symmetric(k, 0) == 1.0);
  CHECK(elementary_symmetric(k, 1) == 6.0);
  CHECK(elementary_symmetric(k, 2) == 11.0);
  CHECK(elementary_symmetric(k, 3) == 6.0);
  CHECK(elementary_symmetric(k, 3) == oracle::sigma(k, 3));
  CHECK(elementary_symmetric(k, 2) == oracle::sigma(k, 2));
  CHECK(checks::error_kind([&] { elementary_symmetric(k, 4); }) == ErrorKind::Index);
  CHECK(checks::error_kind([&] { elementary_symmetric(k, -1); }) == ErrorKind::Index);
}

TEST_CASE("excluding one curvature") {
  const std::vector<double> k{1, 2, 3};
  CHECK(elementary_symmetric_excluding(k, 2, 0) == 6.0);
  for (int i = 0; i < 3; ++i) CHECK(elementary_symmetric_excluding(k, 0, i) == 1.0);
  CHECK(checks::error_kind([&] { elementary_symmetric_excluding(k, 3, 0); }) ==
        ErrorKind::Index);
  CHECK(checks::error_kind([&] { elementary_symmetric_excluding(k, 1, 3); }) ==
        ErrorKind::Index);
}

TEST_CASE("random sigmas match brute force and the deletion identities") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 8;
    const auto k = oracle::uniform_vector(gen, n, -5.0, 5.0);
    const auto all = elementary_symmetric_all(k);
    REQUIRE(all.size() == static_cast<std::size_t>(n + 1));
    for (int m = 0; m <= n; ++m) {
      const double reference = oracle::sigma(k, m);
      CHECK(std::abs(all[m] - reference) <= 1e-12 * (1.0 + std::abs(reference)) * std::pow(5.0, m));
    }
    for (int m = 1; m <= n; ++m) {
      double averaged = 0.0;
      for (int i = 0; i < n; ++i) {
        const double without = elementary_symmetric_excluding(k, m - 1, i);
        averaged += without * k[i];
        if (m <= n - 1) {
          const double split = elementary_symmetric_excluding(k, m, i) + k[i] * without;
          CHECK(std::abs(split - all[m]) <= 1e-12 * std::pow(6.0, m));
        }
        CHECK(without == doctest::Approx(oracle::sigma_excluding(k, m - 1, i)).epsilon(1e-10));
      }
      CHECK(std::abs(averaged / m - all[m]) <= 1e-12 * std::pow(6.0, m));
    }
  }
}

TEST_CASE("kappa from sigma") {
  CHECK(oracle::multiset_distance(kappa_from_sigma(SigmaVector({1, 6, 11, 6})), {1, 2, 3}) <
        1e-12);
  CHECK(oracle::multiset_distance(kappa_from_sigma(SigmaVector({1, 0, 0, 0})), {0, 0, 0}) ==
        0.0);
  CHECK(checks::error_kind([] { SigmaVector({2, 1}); }) == ErrorKind::Domain);
  // t^2 + 1 has no real roots.
  CHECK(checks::error_kind([] { kappa_from_sigma(SigmaVector({1, 0, 1})); }) ==
        ErrorKind::NonRealRoots);
}

TEST_CASE("kappa from sigma round-trips random curvatures") {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 8;
    const auto k = oracle::uniform_vector(gen, n, -5.0, 5.0);
    const auto back = kappa_from_sigma(SigmaVector::from_kappa(k));
    CHECK(oracle::multiset_distance(back, k) < 1e-8);
  }
}

TEST_CASE("kappa from sigma resolves repeated roots") {
  for (const std::vector<double>& k : {std::vector<double>{2, 2, 2, -1}, {1, 1, 1},
                                       {0, 0, 3}, {-1.5, -1.5, 4, 4, 4}}) {
    CHECK(oracle::multiset_distance(kappa_from_sigma(SigmaVector::from_kappa(k)), k) < 1e-8);
  }
}

}
