#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "geomax/extremizer.hpp"
#include "geomax/spectrum.hpp"

namespace geomax::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitIoError = 2;
inline constexpr int kExitInvalidInput = 3;

inline constexpr const char* kVersion = "0.1.0";

enum class Command { analyze, verify, sweep, enumerate };

struct RunConfig {
  Command command = Command::analyze;
  std::optional<std::string> input;   // field JSON path
  std::optional<std::string> preset;  // "sine" or "random"
  int s = 2;
  double constant = 1.0;
  std::optional<double> radius_override;
  bool keep_table = false;
  std::optional<std::string> output;  // stdout when empty
  int ell = 1;
  int n = 4;
  double decay = 1.0;
  std::uint64_t seed = 0;
  int ell_min = 1;
  int ell_max = 12;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string document;              // report JSON or CSV table
  std::optional<std::string> table;  // per-direction CSV (analyze/verify)
  std::string error;
};

/// Checks the config invariants (one input source for analyze/verify, known
/// preset, s >= 2, ...). Throws InvalidInput.
void validate(const RunConfig& cfg);

/// Loads the field named by the config. Throws IoError or InvalidInput.
SpectralField load_field(const RunConfig& cfg);

// The commands throw InvalidInput, IoError or PreconditionError; run()
// maps those onto exit codes.
CommandResult cmd_analyze(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_sweep(const RunConfig& cfg);
CommandResult cmd_enumerate(const RunConfig& cfg);

/// Dispatches on cfg.command and converts exceptions into exit codes 2/3.
CommandResult run(const RunConfig& cfg);

/// "out.json" -> "out.directions.csv".
std::string table_path_for(const std::string& output);

/// Writes the document (and table, when present) to cfg.output or stdout.
/// Throws IoError.
void write_outputs(const RunConfig& cfg, const CommandResult& result);

/// Shortest round-trip decimal form of v.
std::string format_double(double v);

/// Per-direction CSV: a,b,length,theta_star,value.
std::string direction_table_csv(const ExtremalResult& result);

}  // namespace geomax::cli
