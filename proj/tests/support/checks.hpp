#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "egregium/error.hpp"

namespace checks {

/// Kind of the egregium::Error thrown by f, or empty when none is thrown.
template <typename F>
std::optional<egregium::ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const egregium::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline double relative(double value, double reference) {
  return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

}  // namespace checks
