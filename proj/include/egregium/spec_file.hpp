#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "egregium/hypersurface.hpp"

namespace egregium {

/// `key = value` lines; `#` starts a comment. Keys are unique.
class KeyValueDocument {
 public:
  /// Error{SpecParse} on a line without `=`, an empty key or a repeated key.
  static KeyValueDocument parse(std::string_view text);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  /// Error{SpecParse} when the key is missing.
  const std::string& text(const std::string& key) const;
  std::optional<std::string> optional_text(const std::string& key) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;
  /// Line number of each key, for messages.
  int line_of(const std::string& key) const;
  /// Error{SpecParse} naming the first key outside `allowed`.
  void require_only(const std::vector<std::string>& allowed) const;

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
};

/// Whitespace- or comma-separated reals; Error{SpecParse} on anything else.
std::vector<double> parse_number_list(std::string_view text, std::string_view what);

/// Integer list with ranges, e.g. "1,3" or "0-3" or "1 2 3".
std::vector<int> parse_integer_list(std::string_view text, std::string_view what);

enum class SurfaceKind { Graph, LevelSet, Parametric, SphereMap, Builtin };

/// Parsed surface description. Field meanings by kind:
///   graph       u(x1..xn) over `domain`
///   level_set   F(x1..xN) = 0 near `seed`
///   parametric  map(x1..xn) -> R^N over `domain`, optional `interior`
///   sphere_map  closed image of the unit sphere under map(x1..xN)
///   builtin     geodesic_sphere, round_sphere, ellipsoid, flattened_sphere,
///               cylinder with their parameters
struct SurfaceSpec {
  SurfaceKind kind = SurfaceKind::Graph;
  std::string name;
  int curvature = 0;
  int ambient_dimension = 0;
  KeyValueDocument document;
};

SurfaceSpec parse_surface_spec(std::string_view text);
SurfaceSpec read_surface_spec(const std::string& path);

/// Error{SpecParse} for unusable expressions; geometric failures keep their
/// own kinds.
SurfacePatch build_surface(const SurfaceSpec& spec);

/// For builtin spheres: the constant principal curvature and the area, so
/// that the integral of sigma_k^m is (C(n, k) kappa^k)^m * area.
struct SphereClosedForm {
  double curvature = 0.0;
  double area = 0.0;
  double integral(int n, int k, int m) const;
};
std::optional<SphereClosedForm> sphere_closed_form(const SurfaceSpec& spec);

/// Reads a whole file; Error{SpecParse} if it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace egregium
