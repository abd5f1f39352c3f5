#include "geomax/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "geomax/error.hpp"
#include "geomax/geodesic.hpp"
#include "geomax/oracle.hpp"
#include "json.hpp"

namespace geomax::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

const char* command_name(Command c) {
  switch (c) {
    case Command::analyze: return "analyze";
    case Command::verify: return "verify";
    case Command::sweep: return "sweep";
    case Command::enumerate: return "enumerate";
  }
  return "unknown";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path);
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw IoError("error while writing " + path);
}

ordered_json config_echo(const RunConfig& cfg) {
  ordered_json j;
  j["command"] = command_name(cfg.command);
  if (cfg.input) j["input"] = *cfg.input;
  if (cfg.preset) {
    j["preset"] = *cfg.preset;
    if (*cfg.preset == "sine") j["ell"] = cfg.ell;
    if (*cfg.preset == "random") {
      j["n"] = cfg.n;
      j["decay"] = cfg.decay;
      j["seed"] = cfg.seed;
    }
  }
  j["s"] = cfg.s;
  j["constant"] = cfg.constant;
  if (cfg.radius_override) j["radius"] = *cfg.radius_override;
  j["keep_table"] = cfg.keep_table;
  return j;
}

ordered_json input_section(const RunConfig& cfg, const SpectralField& field) {
  ordered_json j;
  if (cfg.input) {
    j["source"] = "file";
    j["path"] = *cfg.input;
  } else {
    j["source"] = "preset";
    j["preset"] = *cfg.preset;
  }
  j["coefficients"] = field.size();
  j["bandlimit"] = field.bandlimit();
  return j;
}

ordered_json norms_section(const NormReport& report) {
  ordered_json j;
  j["l2"] = report.l2;
  j["grad_l2"] = report.grad_l2;
  j["ratio_n"] = report.ratio_n;
  j["grid"] = report.grid;
  ordered_json deriv;
  for (const auto& [s, v] : report.deriv_l1) deriv[std::to_string(s)] = v;
  j["deriv_l1"] = deriv;
  return j;
}

ordered_json bound_section(const SearchBound& bound, const RunConfig& cfg) {
  ordered_json j;
  j["s"] = bound.s;
  j["constant"] = bound.constant;
  j["theorem_radius"] = bound.theorem_radius;
  j["cutoff_radius"] = bound.cutoff_radius;
  j["effective_radius"] = bound.effective_radius;
  if (cfg.radius_override) j["radius_override"] = *cfg.radius_override;
  return j;
}

ordered_json direction_json(GeodesicDirection d) { return {d.a(), d.b()}; }

ordered_json extremal_section(const ExtremalResult& result,
                              const std::optional<LowerBoundResult>& lower) {
  ordered_json j;
  j["direction"] = direction_json(result.geodesic.direction);
  j["theta"] = result.geodesic.theta;
  j["offset_point"] = {result.geodesic.offset_point.x,
                       result.geodesic.offset_point.y};
  j["value"] = result.value;
  j["length"] = result.geodesic.direction.length();
  j["scanned"] = result.scanned;
  if (lower) {
    ordered_json lb;
    lb["direction"] = direction_json(lower->geodesic.direction);
    lb["theta"] = lower->geodesic.theta;
    lb["value"] = lower->value;
    lb["line_mass"] = lower->line_mass;
    lb["certified"] = lower->certified;
    lb["axes_swapped"] = lower->swapped;
    j["lower_bound"] = lb;
  }
  return j;
}

ordered_json verification_section(const VerificationReport& report) {
  ordered_json j;
  j["passed"] = report.all_passed();
  j["passed_count"] = report.passed_count();
  j["total"] = report.checks.size();
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["measured"] = c.measured;
    e["threshold"] = c.threshold;
    e["detail"] = c.detail;
    checks.push_back(e);
  }
  j["checks"] = checks;
  return j;
}

ordered_json meta_section(const RunConfig& cfg) {
  ordered_json j;
  j["version"] = kVersion;
  j["config"] = config_echo(cfg);
  return j;
}

// Shared by analyze and verify: norms, bound, extremal.
struct Analysis {
  SpectralField field;
  NormReport norms;
  std::optional<SearchBound> bound;
  ExtremalResult extremal;
  std::optional<LowerBoundResult> lower;
};

Analysis analyze_field(const RunConfig& cfg) {
  SpectralField field = load_field(cfg);
  NormReport report = norms(field, cfg.s, default_norm_grid(field));

  std::optional<SearchBound> bound;
  SearchBound scan_bound;  // the zero field scans the unit radius only
  if (!field.empty()) {
    bound = search_bound(field, report, cfg.s, cfg.constant);
    scan_bound = *bound;
  }
  if (cfg.radius_override) {
    scan_bound.effective_radius = std::max(1.0, *cfg.radius_override);
    if (bound) bound->effective_radius = scan_bound.effective_radius;
  }
  ExtremalResult extremal = find_extremal(field, scan_bound, cfg.keep_table);
  std::optional<LowerBoundResult> lower;
  if (!field.empty()) lower = short_geodesic_lower_bound(field);
  return {std::move(field), std::move(report), bound, std::move(extremal), lower};
}

ordered_json base_report(const RunConfig& cfg, const Analysis& a) {
  ordered_json doc;
  doc["input"] = input_section(cfg, a.field);
  doc["norms"] = norms_section(a.norms);
  doc["bound"] = a.bound ? bound_section(*a.bound, cfg) : ordered_json(nullptr);
  doc["extremal"] = extremal_section(a.extremal, a.lower);
  return doc;
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string line;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) line += ',';
    line += c;
    first = false;
  }
  return line + '\n';
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string direction_table_csv(const ExtremalResult& result) {
  std::string out = "a,b,length,theta_star,value\n";
  if (!result.per_direction) return out;
  for (const auto& r : *result.per_direction) {
    out += csv_row({std::to_string(r.direction.a()), std::to_string(r.direction.b()),
                    format_double(r.direction.length()), format_double(r.theta),
                    format_double(r.value)});
  }
  return out;
}

void validate(const RunConfig& cfg) {
  if (cfg.command == Command::analyze || cfg.command == Command::verify) {
    if (cfg.input.has_value() == cfg.preset.has_value()) {
      throw InvalidInput("give exactly one of --input or --preset");
    }
    if (cfg.preset && *cfg.preset != "sine" && *cfg.preset != "random") {
      throw InvalidInput("unknown preset '" + *cfg.preset + "'");
    }
    if (cfg.preset && *cfg.preset == "sine" && cfg.ell < 1) {
      throw InvalidInput("--ell must be >= 1");
    }
    if (cfg.preset && *cfg.preset == "random" && (cfg.n < 1 || cfg.decay < 0.0)) {
      throw InvalidInput("--n must be >= 1 and --decay >= 0");
    }
    if (cfg.keep_table && !cfg.output) {
      throw InvalidInput("--keep-table needs --output to place the CSV");
    }
  }
  if (cfg.s < 2) throw InvalidInput("--s must be >= 2");
  if (!(cfg.constant > 0.0)) throw InvalidInput("--constant must be positive");
  if (cfg.radius_override && !(*cfg.radius_override > 0.0)) {
    throw InvalidInput("--radius must be positive");
  }
  if (cfg.command == Command::enumerate &&
      (!cfg.radius_override || *cfg.radius_override < 1.0)) {
    throw InvalidInput("enumerate needs --radius >= 1");
  }
  if (cfg.command == Command::sweep && cfg.preset && *cfg.preset != "sine") {
    throw InvalidInput("sweep runs the sine family only");
  }
}

SpectralField load_field(const RunConfig& cfg) {
  if (cfg.input) return parse_field(read_file(*cfg.input));
  if (*cfg.preset == "sine") return preset_sine(cfg.ell);
  return preset_random(cfg.n, cfg.decay, cfg.seed);
}

CommandResult cmd_analyze(const RunConfig& cfg) {
  validate(cfg);
  const Analysis a = analyze_field(cfg);
  ordered_json doc = base_report(cfg, a);
  doc["meta"] = meta_section(cfg);

  CommandResult result;
  result.document = doc.dump(2) + "\n";
  if (cfg.keep_table) result.table = direction_table_csv(a.extremal);
  return result;
}

CommandResult cmd_verify(const RunConfig& cfg) {
  validate(cfg);
  const Analysis a = analyze_field(cfg);
  const VerificationReport report = run_all_checks(a.field, cfg.s);
  ordered_json doc = base_report(cfg, a);
  doc["verification"] = verification_section(report);
  doc["meta"] = meta_section(cfg);

  CommandResult result;
  result.exit_code = report.all_passed() ? kExitOk : kExitVerificationFailed;
  result.document = doc.dump(2) + "\n";
  if (cfg.keep_table) result.table = direction_table_csv(a.extremal);
  return result;
}

CommandResult cmd_sweep(const RunConfig& cfg) {
  validate(cfg);
  std::string out =
      "ell,extremal_length,theorem_radius,cutoff_radius,deriv_l1_s,grad_l2,l2\n";
  for (int ell = cfg.ell_min; ell <= cfg.ell_max; ++ell) {
    const SpectralField field = preset_sine(ell);
    const NormReport report = norms(field, cfg.s, default_norm_grid(field));
    const SearchBound bound = search_bound(field, report, cfg.s, cfg.constant);
    const ExtremalResult extremal = find_extremal(field, bound, false);
    out += csv_row({std::to_string(ell),
                    format_double(extremal.geodesic.direction.length()),
                    format_double(bound.theorem_radius),
                    format_double(bound.cutoff_radius),
                    format_double(report.deriv_l1.at(cfg.s)),
                    format_double(report.grad_l2), format_double(report.l2)});
  }
  return {kExitOk, out, std::nullopt, {}};
}

CommandResult cmd_enumerate(const RunConfig& cfg) {
  validate(cfg);
  const double radius = *cfg.radius_override;
  const auto dirs = enumerate_directions(radius);
  std::string out = "a,b,length\n";
  for (const auto& d : dirs) {
    out += csv_row({std::to_string(d.a()), std::to_string(d.b()),
                    format_double(d.length())});
  }

  // Nonzero lattice points in the disk, halved: one per +-k pair.
  const std::int64_t limit = squared_radius_limit(radius);
  const auto reach = static_cast<int>(std::sqrt(static_cast<double>(limit))) + 1;
  std::int64_t points = 0;
  for (int x = -reach; x <= reach; ++x) {
    for (int y = -reach; y <= reach; ++y) {
      const std::int64_t r2 = std::int64_t{x} * x + std::int64_t{y} * y;
      if (r2 > 0 && r2 <= limit) ++points;
    }
  }
  const double half_disk = static_cast<double>(points) / 2.0;
  out += "# directions=" + std::to_string(dirs.size()) +
         ",half_disk_points=" + format_double(half_disk) +
         ",density=" + format_double(static_cast<double>(dirs.size()) / half_disk) +
         "\n";
  return {kExitOk, out, std::nullopt, {}};
}

CommandResult run(const RunConfig& cfg) {
  try {
    switch (cfg.command) {
      case Command::analyze: return cmd_analyze(cfg);
      case Command::verify: return cmd_verify(cfg);
      case Command::sweep: return cmd_sweep(cfg);
      case Command::enumerate: return cmd_enumerate(cfg);
    }
  } catch (const IoError& e) {
    return {kExitIoError, {}, std::nullopt, e.what()};
  } catch (const InvalidInput& e) {
    return {kExitInvalidInput, {}, std::nullopt, e.what()};
  } catch (const PreconditionError& e) {
    return {kExitInvalidInput, {}, std::nullopt, e.what()};
  }
  return {kExitInvalidInput, {}, std::nullopt, "unknown command"};
}

std::string table_path_for(const std::string& output) {
  const auto slash = output.find_last_of('/');
  const auto dot = output.find_last_of('.');
  const bool has_ext = dot != std::string::npos &&
                       (slash == std::string::npos || dot > slash) && dot != 0 &&
                       (slash == std::string::npos || dot > slash + 1);
  return (has_ext ? output.substr(0, dot) : output) + ".directions.csv";
}

void write_outputs(const RunConfig& cfg, const CommandResult& result) {
  if (cfg.output) {
    write_file(*cfg.output, result.document);
    if (result.table) write_file(table_path_for(*cfg.output), *result.table);
  } else {
    std::cout << result.document;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to stdout");
  }
}

}  // namespace geomax::cli
