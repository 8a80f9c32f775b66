#include "egregium/fields.hpp"

#include <algorithm>
#include <array>

#include "egregium/error.hpp"

namespace egregium {

double finite_difference_step(int levels) {
  static constexpr std::array<double, 3> steps{1e-5, 1e-4, 1e-3};
  return steps[std::clamp(levels, 1, 3) - 1];
}

void symmetrize_third(Array4& third) {
  const std::size_t A = third.extent(0);
  const std::size_t n = third.extent(1);
  for (std::size_t a = 0; a < A; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) {
          const double mean = (third(a, i, j, k) + third(a, i, k, j) + third(a, j, i, k) +
                               third(a, j, k, i) + third(a, k, i, j) + third(a, k, j, i)) /
                              6.0;
          third(a, i, j, k) = third(a, i, k, j) = third(a, j, i, k) = mean;
          third(a, j, k, i) = third(a, k, i, j) = third(a, k, j, i) = mean;
        }
      }
    }
  }
}

ScalarJet ScalarField::jet(const Eigen::VectorXd& x, int order) const {
  if (x.size() != arity) {
    throw Error(ErrorKind::DimensionMismatch, "scalar field evaluated with wrong arity");
  }
  if (order <= provided_order) return evaluate(x, order);

  ScalarJet out = jet(x, order - 1);
  const double h = finite_difference_step(order - provided_order);
  const int n = arity;
  Eigen::VectorXd shifted = x;
  if (order == 1) {
    out.gradient.resize(n);
    for (int k = 0; k < n; ++k) {
      shifted(k) = x(k) + h;
      const double fp = jet(shifted, 0).value;
      shifted(k) = x(k) - h;
      const double fm = jet(shifted, 0).value;
      shifted(k) = x(k);
      out.gradient(k) = (fp - fm) / (2.0 * h);
    }
  } else if (order == 2) {
    out.hessian.resize(n, n);
    for (int k = 0; k < n; ++k) {
      shifted(k) = x(k) + h;
      const Eigen::VectorXd gp = jet(shifted, 1).gradient;
      shifted(k) = x(k) - h;
      const Eigen::VectorXd gm = jet(shifted, 1).gradient;
      shifted(k) = x(k);
      out.hessian.col(k) = (gp - gm) / (2.0 * h);
    }
    out.hessian = 0.5 * (out.hessian + out.hessian.transpose()).eval();
  } else {
    Array4 third({1, std::size_t(n), std::size_t(n), std::size_t(n)});
    for (int k = 0; k < n; ++k) {
      shifted(k) = x(k) + h;
      const Eigen::MatrixXd hp = jet(shifted, 2).hessian;
      shifted(k) = x(k) - h;
      const Eigen::MatrixXd hm = jet(shifted, 2).hessian;
      shifted(k) = x(k);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) third(0, i, j, k) = (hp(i, j) - hm(i, j)) / (2.0 * h);
    }
    symmetrize_third(third);
    out.third = Array3({std::size_t(n), std::size_t(n), std::size_t(n)});
    out.third.data() = third.data();
  }
  return out;
}

MapJet VectorMap::jet(const Eigen::VectorXd& x, int order) const {
  if (x.size() != arity) {
    throw Error(ErrorKind::DimensionMismatch, "map evaluated with wrong arity");
  }
  if (order <= provided_order) return evaluate(x, order);

  MapJet out = jet(x, order - 1);
  const double h = finite_difference_step(order - provided_order);
  const std::size_t n = arity;
  const std::size_t m = outputs;
  Eigen::VectorXd shifted = x;
  if (order == 1) {
    out.first.resize(m, n);
    for (std::size_t k = 0; k < n; ++k) {
      shifted(k) = x(k) + h;
      const Eigen::VectorXd vp = jet(shifted, 0).value;
      shifted(k) = x(k) - h;
      const Eigen::VectorXd vm = jet(shifted, 0).value;
      shifted(k) = x(k);
      out.first.col(k) = (vp - vm) / (2.0 * h);
    }
  } else if (order == 2) {
    out.second = Array3({m, n, n});
    for (std::size_t k = 0; k < n; ++k) {
      shifted(k) = x(k) + h;
      const Eigen::MatrixXd jp = jet(shifted, 1).first;
      shifted(k) = x(k) - h;
      const Eigen::MatrixXd jm = jet(shifted, 1).first;
      shifted(k) = x(k);
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t i = 0; i < n; ++i) out.second(a, i, k) = (jp(a, i) - jm(a, i)) / (2.0 * h);
    }
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          const double mean = 0.5 * (out.second(a, i, j) + out.second(a, j, i));
          out.second(a, i, j) = out.second(a, j, i) = mean;
        }
  } else {
    out.third = Array4({m, n, n, n});
    for (std::size_t k = 0; k < n; ++k) {
      shifted(k) = x(k) + h;
      const Array3 sp = jet(shifted, 2).second;
      shifted(k) = x(k) - h;
      const Array3 sm = jet(shifted, 2).second;
      shifted(k) = x(k);
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            out.third(a, i, j, k) = (sp(a, i, j) - sm(a, i, j)) / (2.0 * h);
    }
    symmetrize_third(out.third);
  }
  return out;
}

MapJet compose(const MapJet& outer, const MapJet& inner, int order) {
  const std::size_t m = outer.value.size();
  const std::size_t p = inner.value.size();
  const std::size_t n = inner.first.cols();
  MapJet out;
  out.value = outer.value;
  if (order < 1) return out;
  out.first = outer.first * inner.first;
  if (order < 2) return out;

  out.second = Array3({m, n, n});
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t b = 0; b < p; ++b) {
          acc += outer.first(a, b) * inner.second(b, i, j);
          for (std::size_t c = 0; c < p; ++c)
            acc += outer.second(a, b, c) * inner.first(b, i) * inner.first(c, j);
        }
        out.second(a, i, j) = out.second(a, j, i) = acc;
      }
  if (order < 3) return out;

  out.third = Array4({m, n, n, n});
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          double acc = 0.0;
          for (std::size_t b = 0; b < p; ++b) {
            acc += outer.first(a, b) * inner.third(b, i, j, k);
            for (std::size_t c = 0; c < p; ++c) {
              const double o2 = outer.second(a, b, c);
              if (o2 != 0.0) {
                acc += o2 * (inner.second(b, i, j) * inner.first(c, k) +
                             inner.second(b, i, k) * inner.first(c, j) +
                             inner.first(b, i) * inner.second(c, j, k));
              }
              for (std::size_t d = 0; d < p; ++d) {
                const double o3 = outer.third(a, b, c, d);
                if (o3 != 0.0)
                  acc += o3 * inner.first(b, i) * inner.first(c, j) * inner.first(d, k);
              }
            }
          }
          out.third(a, i, j, k) = acc;
        }
  return out;
}

}  // namespace egregium
