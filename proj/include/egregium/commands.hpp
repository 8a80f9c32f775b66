#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "egregium/orientation.hpp"

namespace egregium {

/// Process exit codes of the command-line tool.
namespace exit_code {
inline constexpr int pass = 0;
inline constexpr int tolerance_failure = 1;
inline constexpr int pipeline_error = 2;
inline constexpr int usage = 64;
inline constexpr int spec_semantics = 65;
}  // namespace exit_code

struct RunConfig {
  std::string command;
  std::string spec_path;
  std::string output_path;
  int resolution = 32;
  std::uint64_t seed = 1;
  int samples = 32;
  Orientation orientation = Orientation::Positive;
  double tol_gauss = 1e-6;
  double tol_gap = 1e-6;
  double tol_pivot = 1e-8;
  double tol_integral = 1e-5;
  std::vector<int> k;
  std::vector<int> m;
  std::string format = "plain";
  int n = 0;
  int a = 0;
  int b = 0;
  unsigned threads = 0;
};

/// Human-readable lines plus a line-delimited JSON mirror of the same
/// content.
class Report {
 public:
  void line(const std::string& text);
  void record(nlohmann::json entry);

  const std::string& text() const noexcept { return text_; }
  std::string jsonl() const;
  const std::vector<nlohmann::json>& records() const noexcept { return records_; }

 private:
  std::string text_;
  std::vector<nlohmann::json> records_;
};

struct CommandResult {
  int exit_code = exit_code::pass;
  Report report;
};

CommandResult cmd_verify(const RunConfig& config);
CommandResult cmd_reconstruct(const RunConfig& config);
CommandResult cmd_integrate(const RunConfig& config);
CommandResult cmd_genpoly(const RunConfig& config);

/// Dispatches on config.command, turns errors into exit codes, prints the
/// text report to `out` (and to config.output_path with the JSON mirror at
/// output_path + ".jsonl") and diagnostics to `err`.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

/// "outward", "inward", "+1", "-1".
std::optional<Orientation> parse_orientation(const std::string& text);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double unit_uniform(std::uint64_t bits);

}  // namespace egregium
