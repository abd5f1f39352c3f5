#include "geomax/extremizer.hpp"

#include <algorithm>
#include <string>

#include "geomax/error.hpp"

namespace geomax {
namespace {

// Strict "candidate beats incumbent" under the extremal tie-breaking order.
bool beats(const DirectionRecord& candidate, const DirectionRecord& incumbent) {
  if (candidate.value > incumbent.value + 1e-12) return true;
  if (incumbent.value > candidate.value + 1e-12) return false;
  if (candidate.direction != incumbent.direction) {
    return shorter_first(candidate.direction, incumbent.direction);
  }
  return candidate.theta < incumbent.theta;
}

double x_axis_mass(const SpectralField& field) {
  double mass = 0.0;
  for (const auto& [k, c] : field.coefficients()) {
    if (k.k2 == 0) mass += std::norm(c);
  }
  return mass;
}

double total_mass(const SpectralField& field) {
  double mass = 0.0;
  for (const auto& [k, c] : field.coefficients()) mass += std::norm(c);
  return mass;
}

// Directions of length <= radius whose lattice line is not the x-axis.
std::vector<GeodesicDirection> off_x_axis_directions(double radius) {
  auto dirs = enumerate_directions(std::max(radius, 1.0));
  std::erase_if(dirs, [](const GeodesicDirection& d) {
    return d == GeodesicDirection::make(0, 1);
  });
  return dirs;
}

GeodesicDirection transpose(GeodesicDirection dir) {
  return GeodesicDirection::canonical(dir.b(), dir.a());
}

}  // namespace

SearchBound search_bound(const SpectralField& field, int s, double constant) {
  require(s >= 2, "search_bound: s must be >= 2");
  require(!field.empty(), "search_bound: the zero field has no extremal bound");
  return search_bound(field, norms(field, s, default_norm_grid(field)), s,
                      constant);
}

SearchBound search_bound(const SpectralField& field, const NormReport& report,
                         int s, double constant) {
  require(s >= 2, "search_bound: s must be >= 2");
  require(!field.empty(), "search_bound: the zero field has no extremal bound");
  require(constant > 0.0, "search_bound: constant must be positive");
  const auto it = report.deriv_l1.find(s);
  require(it != report.deriv_l1.end(),
          "search_bound: norms lack deriv_l1 for s = " + std::to_string(s));

  SearchBound bound;
  bound.s = s;
  bound.constant = constant;
  bound.theorem_radius =
      std::pow(constant * it->second * report.grad_l2 / (report.l2 * report.l2),
               1.0 / s);
  bound.cutoff_radius = field.bandlimit();
  bound.effective_radius =
      std::min(std::max(bound.theorem_radius, 1.0), bound.cutoff_radius);
  return bound;
}

ExtremalResult find_extremal(const SpectralField& field, const SearchBound& bound,
                             bool keep_table) {
  const auto dirs = enumerate_directions(std::max(bound.effective_radius, 1.0));

  std::optional<std::vector<DirectionRecord>> table;
  if (keep_table) {
    table.emplace();
    table->reserve(dirs.size());
  }

  std::optional<DirectionRecord> best;
  for (const auto& dir : dirs) {
    const auto peak = maximize_offset(line_spectrum(field, dir));
    const DirectionRecord record{dir, peak.theta, peak.value};
    if (table) table->push_back(record);
    if (!best || beats(record, *best)) best = record;
  }

  if (!best || best->value == 0.0) {
    best = DirectionRecord{GeodesicDirection::make(1, 0), 0.0, 0.0};
  }
  return {ClosedGeodesic::at_phase(best->direction, best->theta), best->value,
          bound, dirs.size(), std::move(table)};
}

CoveringFamily covering_family(const SpectralField& field) {
  require(!field.empty(), "covering_family: field must be nonempty");
  const NormReport report = norms(field, 1, minimal_norm_grid(field));

  CoveringFamily family;
  family.n = report.ratio_n;
  const double x_mass = x_axis_mass(field);
  family.swapped = x_mass > 0.5 * total_mass(field);
  family.excluded_axis_mass =
      family.swapped ? x_axis_mass(field.transposed()) : x_mass;

  family.directions = off_x_axis_directions(2.0 * family.n);
  if (family.swapped) {
    for (auto& dir : family.directions) dir = transpose(dir);
    std::sort(family.directions.begin(), family.directions.end(), shorter_first);
  }
  return family;
}

LowerBoundResult short_geodesic_lower_bound(const SpectralField& field) {
  require(!field.empty(), "short_geodesic_lower_bound: field must be nonempty");
  const NormReport report = norms(field, 1, minimal_norm_grid(field));
  const bool swapped = x_axis_mass(field) > 0.5 * total_mass(field);
  const SpectralField work = swapped ? field.transposed() : field;

  std::optional<LineSpectrum> heaviest;
  double heaviest_mass = -1.0;
  for (const auto& dir : off_x_axis_directions(2.0 * report.ratio_n)) {
    auto ls = line_spectrum(work, dir);
    const double mass = line_mass(ls);
    if (mass > heaviest_mass) {
      heaviest_mass = mass;
      heaviest = std::move(ls);
    }
  }

  const auto peak = maximize_offset(*heaviest);
  auto geodesic = ClosedGeodesic::at_phase(heaviest->direction, peak.theta);
  if (swapped) {
    // f~(x, y) = f(y, x): the geodesic t (a, b) + p of f~ is t (b, a) + (p.y, p.x)
    // for f.
    geodesic = ClosedGeodesic::through(
        transpose(geodesic.direction),
        {geodesic.offset_point.y, geodesic.offset_point.x});
  }
  return {geodesic, peak.value,
          peak.value * report.grad_l2 / (report.l2 * report.l2), heaviest_mass,
          swapped};
}

}  // namespace geomax
