#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "geomax/geodesic.hpp"
#include "geomax/spectrum.hpp"

namespace geomax {

/// Radius up to which directions are scanned.
///
/// theorem_radius = (constant * deriv_l1(s) * grad_l2 / l2^2)^(1/s) is the
/// smoothness bound on the extremal length and is reported only; the scan
/// itself relies on cutoff_radius = N_max, beyond which every geodesic
/// average vanishes identically.
struct SearchBound {
  int s = 2;
  double constant = 1.0;
  double theorem_radius = 1.0;
  double cutoff_radius = 1.0;
  double effective_radius = 1.0;  // min(max(theorem_radius, 1), cutoff_radius)
};

struct DirectionRecord {
  GeodesicDirection direction;
  double theta;
  double value;
};

struct ExtremalResult {
  ClosedGeodesic geodesic;
  double value;
  SearchBound bound;
  std::size_t scanned;
  std::optional<std::vector<DirectionRecord>> per_direction;
};

/// Requires s >= 2 and a nonempty field (throws PreconditionError). The
/// second overload reuses norms computed with s_max >= s.
SearchBound search_bound(const SpectralField& field, int s, double constant);
SearchBound search_bound(const SpectralField& field, const NormReport& norms,
                         int s, double constant);

/// Scans every direction with length <= bound.effective_radius and returns
/// the geodesic with the largest |average|. Ties within 1e-12 go to the
/// shorter direction, then to the smaller (a, b, theta). When every average
/// is 0 the result is direction (1, 0), theta 0, value 0.
ExtremalResult find_extremal(const SpectralField& field, const SearchBound& bound,
                             bool keep_table);

/// The direction family used by the covering argument: all canonical
/// directions of length <= 2N, N = ||grad f|| / ||f||, except the one whose
/// lattice line is the excluded coordinate axis. The x-axis frequencies are
/// excluded unless they carry more than half the L^2 mass, in which case the
/// field is transposed and the y-axis frequencies are excluded instead.
struct CoveringFamily {
  bool swapped = false;
  double n = 0.0;
  double excluded_axis_mass = 0.0;  // total mass on the excluded axis
  std::vector<GeodesicDirection> directions;  // in the original coordinates
};

CoveringFamily covering_family(const SpectralField& field);

struct LowerBoundResult {
  ClosedGeodesic geodesic;
  double value;
  /// value * grad_l2 / l2^2: the constant realized in
  /// max |average| >~ ||f||^2 / ||grad f||.
  double certified;
  double line_mass;
  bool swapped;
};

/// Constructive short-geodesic bound: within the covering family, the line
/// with the largest spectral mass, and its best offset. Requires a nonempty
/// field.
LowerBoundResult short_geodesic_lower_bound(const SpectralField& field);

}  // namespace geomax
