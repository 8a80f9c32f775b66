#pragma once

#include <string_view>

namespace egregium {

/// Choice of unit normal. Positive selects a chart's reference normal, for
/// which convex closed bodies and convex-up graphs have positive principal
/// curvatures ("outward" in the CLI).
enum class Orientation : int { Positive = 1, Negative = -1 };

constexpr int sign(Orientation o) noexcept { return static_cast<int>(o); }

constexpr Orientation flipped(Orientation o) noexcept {
  return o == Orientation::Positive ? Orientation::Negative : Orientation::Positive;
}

constexpr Orientation orientation_from_sign(double s) noexcept {
  return s < 0.0 ? Orientation::Negative : Orientation::Positive;
}

constexpr std::string_view orientation_name(Orientation o) noexcept {
  return o == Orientation::Positive ? "+1" : "-1";
}

}  // namespace egregium
