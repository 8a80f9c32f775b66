#include "egregium/spec_file.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "egregium/error.hpp"
#include "egregium/expression.hpp"
#include "egregium/surfaces.hpp"

namespace egregium {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorKind::SpecParse, message); }

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return parts;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != ',') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

double parse_real(std::string_view token, std::string_view what) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  if (!token.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    fail(std::string(what) + ": '" + std::string(token) + "' is not a number");
  }
  return value;
}

int parse_int(std::string_view token, std::string_view what) {
  int value = 0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  if (!token.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    fail(std::string(what) + ": '" + std::string(token) + "' is not an integer");
  }
  return value;
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  for (auto tok : tokens(text)) out.push_back(parse_real(tok, what));
  return out;
}

std::vector<int> parse_integer_list(std::string_view text, std::string_view what) {
  std::vector<int> out;
  for (auto tok : tokens(text)) {
    const auto dash = tok.find('-', 1);
    if (dash == std::string_view::npos) {
      out.push_back(parse_int(tok, what));
      continue;
    }
    const int lo = parse_int(tok.substr(0, dash), what);
    const int hi = parse_int(tok.substr(dash + 1), what);
    if (hi < lo) fail(std::string(what) + ": empty range '" + std::string(tok) + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) fail(std::string(what) + ": empty list");
  return out;
}

KeyValueDocument KeyValueDocument::parse(std::string_view text) {
  KeyValueDocument doc;
  int line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    const auto hash = raw.find('#');
    const auto line = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) fail("line " + std::to_string(line_no) + ": empty key");
    if (doc.values_.count(key)) {
      fail("line " + std::to_string(line_no) + ": key '" + key + "' repeated");
    }
    doc.values_[key] = value;
    doc.lines_[key] = line_no;
  }
  return doc;
}

const std::string& KeyValueDocument::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) fail("missing key '" + key + "'");
  return it->second;
}

std::optional<std::string> KeyValueDocument::optional_text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double KeyValueDocument::number(const std::string& key) const {
  return parse_real(trim(text(key)), key);
}

double KeyValueDocument::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int KeyValueDocument::integer(const std::string& key) const {
  return parse_int(trim(text(key)), key);
}

std::vector<double> KeyValueDocument::numbers(const std::string& key) const {
  return parse_number_list(text(key), key);
}

int KeyValueDocument::line_of(const std::string& key) const {
  const auto it = lines_.find(key);
  return it == lines_.end() ? 0 : it->second;
}

void KeyValueDocument::require_only(const std::vector<std::string>& allowed) const {
  for (const auto& [key, value] : values_) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail("line " + std::to_string(line_of(key)) + ": unknown key '" + key + "'");
    }
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

SurfaceSpec parse_surface_spec(std::string_view text) {
  SurfaceSpec spec;
  spec.document = KeyValueDocument::parse(text);
  const auto& doc = spec.document;
  const std::string kind = doc.text("kind");
  std::vector<std::string> allowed{"kind", "name", "curvature", "dimension"};
  if (kind == "graph") {
    spec.kind = SurfaceKind::Graph;
    allowed.insert(allowed.end(), {"u", "domain"});
  } else if (kind == "level_set") {
    spec.kind = SurfaceKind::LevelSet;
    allowed.insert(allowed.end(), {"F", "seed", "half_width"});
  } else if (kind == "parametric") {
    spec.kind = SurfaceKind::Parametric;
    allowed.insert(allowed.end(), {"map", "domain", "interior"});
  } else if (kind == "sphere_map") {
    spec.kind = SurfaceKind::SphereMap;
    allowed.insert(allowed.end(), {"map", "interior"});
  } else if (kind == "builtin") {
    spec.kind = SurfaceKind::Builtin;
    allowed.insert(allowed.end(),
                   {"builtin", "radius", "axes", "center", "cap_start", "width", "half_length"});
  } else {
    fail("kind '" + kind + "' is not one of graph, level_set, parametric, sphere_map, builtin");
  }
  doc.require_only(allowed);
  spec.name = doc.optional_text("name").value_or(doc.optional_text("builtin").value_or(kind));
  spec.curvature = doc.has("curvature") ? doc.integer("curvature") : 0;
  if (spec.curvature < -1 || spec.curvature > 1) fail("curvature must be -1, 0 or 1");
  spec.ambient_dimension = doc.integer("dimension");
  if (spec.ambient_dimension < 2) fail("dimension must be at least 2");
  return spec;
}

SurfaceSpec read_surface_spec(const std::string& path) {
  return parse_surface_spec(read_text_file(path));
}

namespace {

Box parse_domain(const KeyValueDocument& doc, int n) {
  const auto rows = split(doc.text("domain"), ';');
  Box box{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  if (rows.size() == 1) {
    const auto bounds = parse_number_list(rows[0], "domain");
    if (bounds.size() != 2) fail("domain: expected 'lo hi' or one 'lo hi' per axis");
    box.lower.setConstant(bounds[0]);
    box.upper.setConstant(bounds[1]);
  } else if (static_cast<int>(rows.size()) == n) {
    for (int i = 0; i < n; ++i) {
      const auto bounds = parse_number_list(rows[i], "domain");
      if (bounds.size() != 2) fail("domain: expected 'lo hi' for axis " + std::to_string(i + 1));
      box.lower(i) = bounds[0];
      box.upper(i) = bounds[1];
    }
  } else {
    fail("domain: expected 1 or " + std::to_string(n) + " 'lo hi' entries");
  }
  if (!(box.lower.array() < box.upper.array()).all()) fail("domain: lower bound not below upper");
  return box;
}

Eigen::VectorXd parse_point(const KeyValueDocument& doc, const std::string& key, int N) {
  const auto v = doc.numbers(key);
  if (static_cast<int>(v.size()) != N) {
    fail(key + ": expected " + std::to_string(N) + " coordinates");
  }
  return Eigen::Map<const Eigen::VectorXd>(v.data(), N);
}

std::vector<Expression> parse_components(const KeyValueDocument& doc, int count, int arity) {
  const auto parts = split(doc.text("map"), ';');
  if (static_cast<int>(parts.size()) != count) {
    fail("map: expected " + std::to_string(count) + " ';'-separated components");
  }
  const auto names = indexed_names("x", arity);
  std::vector<Expression> out;
  for (auto part : parts) out.push_back(Expression::parse(part, names));
  return out;
}

}  // namespace

SurfacePatch build_surface(const SurfaceSpec& spec) {
  const auto& doc = spec.document;
  const SpaceForm form(spec.curvature, spec.ambient_dimension);
  const int N = spec.ambient_dimension;
  const int n = N - 1;
  switch (spec.kind) {
    case SurfaceKind::Graph: {
      const auto u = Expression::parse(doc.text("u"), indexed_names("x", n));
      return from_graph(scalar_field_from_expression(u, n), parse_domain(doc, n), form);
    }
    case SurfaceKind::LevelSet: {
      const auto F = Expression::parse(doc.text("F"), indexed_names("x", N));
      LevelSetOptions options;
      options.half_width = doc.number_or("half_width", options.half_width);
      return from_level_set(scalar_field_from_expression(F, N), parse_point(doc, "seed", N), form,
                            options);
    }
    case SurfaceKind::Parametric: {
      ParametricOptions options;
      if (doc.has("interior")) options.interior_point = parse_point(doc, "interior", N);
      return from_parametric(vector_map_from_expressions(parse_components(doc, N, n), n),
                             parse_domain(doc, n), form, options);
    }
    case SurfaceKind::SphereMap: {
      const Eigen::VectorXd interior =
          doc.has("interior") ? parse_point(doc, "interior", N) : Eigen::VectorXd::Zero(N);
      return sphere_image_atlas(vector_map_from_expressions(parse_components(doc, N, N), N), form,
                                interior);
    }
    case SurfaceKind::Builtin: {
      const std::string which = doc.text("builtin");
      if (which == "geodesic_sphere") return geodesic_sphere(form, doc.number("radius"));
      if (spec.curvature != 0 && which != "geodesic_sphere") {
        throw Error(ErrorKind::Domain, "builtin '" + which + "' exists only for curvature 0");
      }
      if (which == "round_sphere") {
        const Eigen::VectorXd center =
            doc.has("center") ? parse_point(doc, "center", N) : Eigen::VectorXd::Zero(N);
        return round_sphere(N, doc.number_or("radius", 1.0), center);
      }
      if (which == "ellipsoid") return ellipsoid(parse_point(doc, "axes", N));
      if (which == "flattened_sphere") {
        return flattened_sphere(N, doc.number_or("cap_start", 0.5), doc.number_or("width", 0.3));
      }
      if (which == "cylinder") {
        return cylinder(N, doc.number_or("radius", 1.0), doc.number_or("half_length", 0.5));
      }
      fail("unknown builtin '" + which +
           "' (geodesic_sphere, round_sphere, ellipsoid, flattened_sphere, cylinder)");
    }
  }
  fail("unhandled surface kind");
}

double SphereClosedForm::integral(int n, int k, int m) const {
  double binom = 1.0;
  for (int j = 1; j <= k; ++j) binom = binom * (n - k + j) / j;
  return std::pow(binom * std::pow(curvature, k), m) * area;
}

std::optional<SphereClosedForm> sphere_closed_form(const SurfaceSpec& spec) {
  if (spec.kind != SurfaceKind::Builtin) return std::nullopt;
  const auto& doc = spec.document;
  const std::string which = doc.text("builtin");
  const int n = spec.ambient_dimension - 1;
  const double unit_area = 2.0 * std::pow(std::numbers::pi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
  const double r = doc.number_or("radius", 1.0);
  if (which == "round_sphere") return SphereClosedForm{1.0 / r, unit_area * std::pow(r, n)};
  if (which != "geodesic_sphere") return std::nullopt;
  const SpaceForm form(spec.curvature, spec.ambient_dimension);
  const double kappa = geodesic_sphere_curvature(form, r);
  const double areal = spec.curvature == 0 ? r : spec.curvature < 0 ? std::sinh(r) : std::sin(r);
  return SphereClosedForm{kappa, unit_area * std::pow(areal, n)};
}

}  // namespace egregium
