// geomax: extremal closed geodesics of band-limited functions on the 2-torus.
//
//   geomax analyze   --preset sine --ell 5 -o report.json
//   geomax verify    --preset random --n 8 --decay 1 --seed 2
//   geomax sweep     --ell-min 1 --ell-max 12 -o sweep.csv
//   geomax enumerate --radius 100

#include <iostream>

#include "CLI11.hpp"
#include "geomax/cli.hpp"
#include "geomax/error.hpp"

namespace {

void add_run_options(CLI::App* cmd, geomax::cli::RunConfig& cfg) {
  cmd->add_option("-i,--input", cfg.input, "Field JSON file");
  cmd->add_option("--preset", cfg.preset, "Built-in field: sine or random");
  cmd->add_option("--ell", cfg.ell, "sine preset: f = sin(2 pi (x + ell y))");
  cmd->add_option("--n", cfg.n, "random preset: bandlimit");
  cmd->add_option("--decay", cfg.decay, "random preset: modulus decay exponent");
  cmd->add_option("--seed", cfg.seed, "random preset: RNG seed");
  cmd->add_option("--s", cfg.s, "Smoothness order of the length bound (>= 2)");
  cmd->add_option("--constant", cfg.constant, "Prefactor of the length bound");
  cmd->add_option("--radius", cfg.radius_override, "Override the search radius");
  cmd->add_flag("--keep-table", cfg.keep_table,
                "Write per-direction CSV next to the report");
  cmd->add_option("-o,--output", cfg.output, "Output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  using geomax::cli::Command;
  geomax::cli::RunConfig cfg;

  CLI::App app{"Extremal closed geodesics on the flat 2-torus"};
  app.set_version_flag("--version", geomax::cli::kVersion);
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "Norms, search bound and extremal geodesic");
  add_run_options(analyze, cfg);
  auto* verify = app.add_subcommand("verify", "Run every verification check");
  add_run_options(verify, cfg);

  auto* sweep = app.add_subcommand("sweep", "Sine family table over a range of ell");
  sweep->add_option("--ell-min", cfg.ell_min, "First ell");
  sweep->add_option("--ell-max", cfg.ell_max, "Last ell");
  sweep->add_option("--s", cfg.s, "Smoothness order (>= 2)");
  sweep->add_option("--constant", cfg.constant, "Prefactor of the length bound");
  sweep->add_option("--preset", cfg.preset, "Only 'sine' is accepted");
  sweep->add_option("-o,--output", cfg.output, "Output path (default stdout)");

  auto* enumerate = app.add_subcommand("enumerate", "Canonical primitive directions");
  enumerate->add_option("--radius", cfg.radius_override, "Disk radius")->required();
  enumerate->add_option("-o,--output", cfg.output, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : geomax::cli::kExitInvalidInput;
  }

  if (analyze->parsed()) cfg.command = Command::analyze;
  if (verify->parsed()) cfg.command = Command::verify;
  if (sweep->parsed()) cfg.command = Command::sweep;
  if (enumerate->parsed()) cfg.command = Command::enumerate;

  const auto result = geomax::cli::run(cfg);
  if (!result.error.empty()) {
    std::cerr << "geomax: " << result.error << "\n";
    return result.exit_code;
  }
  try {
    geomax::cli::write_outputs(cfg, result);
  } catch (const geomax::IoError& e) {
    std::cerr << "geomax: " << e.what() << "\n";
    return geomax::cli::kExitIoError;
  }
  if (result.exit_code == geomax::cli::kExitVerificationFailed) {
    std::cerr << "geomax: verification failed\n";
  }
  return result.exit_code;
}
