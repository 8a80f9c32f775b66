#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "egregium/commands.hpp"
#include "egregium/spec_file.hpp"

namespace {

void add_common(CLI::App* cmd, egregium::RunConfig& config, std::string& orientation) {
  cmd->add_option("--spec", config.spec_path, "input file")->required();
  cmd->add_option("--out", config.output_path, "also write the report here and JSONL to <out>.jsonl");
  cmd->add_option("--orientation", orientation, "outward (+1) or inward (-1)");
  cmd->add_option("--tol-pivot", config.tol_pivot, "relative pivot tolerance");
  cmd->add_option("--threads", config.threads, "worker threads, 0 for all cores");
}

}  // namespace

int main(int argc, char** argv) {
  egregium::RunConfig config;
  std::string orientation = "outward";
  std::string k_list, m_list;

  CLI::App app{"Checks which hypersurface curvature quantities are intrinsic."};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "compare extrinsic and intrinsic quantities at sample points");
  add_common(verify, config, orientation);
  verify->add_option("--seed", config.seed, "sampling seed");
  verify->add_option("--samples", config.samples, "number of sample points");
  verify->add_option("--tol-gauss", config.tol_gauss, "Gauss equation residual tolerance");
  verify->add_option("--tol-gap", config.tol_gap, "relative gap tolerance");

  auto* reconstruct = app.add_subcommand("reconstruct", "recover curvature data from a curvature tensor");
  add_common(reconstruct, config, orientation);

  auto* integrate = app.add_subcommand("integrate", "integrate sigma_k^m over a closed hypersurface");
  add_common(integrate, config, orientation);
  integrate->add_option("--resolution", config.resolution, "nodes per chart axis");
  integrate->add_option("--tol-integral", config.tol_integral, "relative integral gap tolerance");
  integrate->add_option("--k", k_list, "degrees, e.g. 0-3 or 1,3");
  integrate->add_option("--m", m_list, "powers, e.g. 1,2");

  auto* genpoly = app.add_subcommand("gen-poly", "print a pairing polynomial");
  genpoly->add_option("--n", config.n, "dimension")->required();
  genpoly->add_option("--a", config.a, "first odd degree")->required();
  genpoly->add_option("--b", config.b, "second odd degree")->required();
  genpoly->add_option("--format", config.format, "plain or latex");
  genpoly->add_option("--out", config.output_path, "also write the output here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return egregium::exit_code::usage;
  }

  config.command = app.get_subcommands().front()->get_name();
  const auto parsed = egregium::parse_orientation(orientation);
  if (!parsed) {
    std::cerr << "--orientation must be outward, inward, +1 or -1\n";
    return egregium::exit_code::usage;
  }
  config.orientation = *parsed;
  try {
    if (!k_list.empty()) config.k = egregium::parse_integer_list(k_list, "--k");
    if (!m_list.empty()) config.m = egregium::parse_integer_list(m_list, "--m");
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return egregium::exit_code::usage;
  }
  return egregium::run_command(config, std::cout, std::cerr);
}
