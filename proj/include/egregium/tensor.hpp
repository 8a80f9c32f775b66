#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace egregium {

/// Dense row-major array of fixed rank with runtime extents.
template <std::size_t Rank>
class DenseArray {
 public:
  DenseArray() = default;

  explicit DenseArray(const std::array<std::size_t, Rank>& extents)
      : extents_(extents) {
    std::size_t total = 1;
    for (auto e : extents_) total *= e;
    data_.assign(total, 0.0);
  }

  template <typename... Idx>
  double& operator()(Idx... idx) {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }

  template <typename... Idx>
  double operator()(Idx... idx) const {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }

  std::size_t extent(std::size_t axis) const { return extents_[axis]; }
  const std::array<std::size_t, Rank>& extents() const { return extents_; }
  bool empty() const { return data_.empty(); }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t offset(const std::array<std::size_t, Rank>& idx) const {
    std::size_t off = 0;
    for (std::size_t a = 0; a < Rank; ++a) off = off * extents_[a] + idx[a];
    return off;
  }

  std::array<std::size_t, Rank> extents_{};
  std::vector<double> data_;
};

using Array3 = DenseArray<3>;
using Array4 = DenseArray<4>;

}  // namespace egregium
