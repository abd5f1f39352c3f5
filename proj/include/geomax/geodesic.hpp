#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "geomax/spectrum.hpp"

namespace geomax {

/// Primitive direction (a, b) of a family of parallel closed geodesics
/// t -> t (a, b) + p, t in [0, 1]. Canonical orientation: a > 0, or
/// (a, b) = (0, 1).
class GeodesicDirection {
 public:
  /// Requires a primitive vector already in canonical orientation.
  static GeodesicDirection make(int a, int b);
  /// Accepts any primitive vector and flips it into canonical orientation.
  static GeodesicDirection canonical(int a, int b);

  [[nodiscard]] int a() const { return a_; }
  [[nodiscard]] int b() const { return b_; }
  [[nodiscard]] std::int64_t length_squared() const {
    return std::int64_t{a_} * a_ + std::int64_t{b_} * b_;
  }
  [[nodiscard]] double length() const {
    return std::sqrt(static_cast<double>(length_squared()));
  }
  /// (-b, a): the frequencies seen by this family are its integer multiples.
  [[nodiscard]] FrequencyPair line_generator() const { return {-b_, a_}; }

  friend bool operator==(const GeodesicDirection&,
                         const GeodesicDirection&) = default;

 private:
  GeodesicDirection(int a, int b) : a_(a), b_(b) {}
  int a_;
  int b_;
};

/// Sort order used everywhere directions are listed: (length, a, b).
bool shorter_first(const GeodesicDirection& lhs, const GeodesicDirection& rhs);

/// One closed geodesic, identified by its direction and its offset phase
/// theta = <(-b, a), p> mod 1.
struct ClosedGeodesic {
  GeodesicDirection direction;
  double theta;
  Point offset_point;

  /// Canonical representative for phase theta: (0, theta / a) when a != 0,
  /// else (1 - theta, 0) mod 1.
  static ClosedGeodesic at_phase(GeodesicDirection direction, double theta);
  /// The geodesic of the given family passing through p.
  static ClosedGeodesic through(GeodesicDirection direction, Point p);

  /// gamma(t) = t (a, b) + offset_point, reduced mod 1.
  [[nodiscard]] Point at(double t) const;
};

/// Restriction of a field's spectrum to the lattice line through
/// (-b, a): coeffs[d] = c_{d (-b, a)} for 1 <= |d| <= dmax, zeros omitted.
struct LineSpectrum {
  GeodesicDirection direction;
  std::map<int, Complex> coeffs;
  int dmax = 0;
};

struct OffsetMaximum {
  double theta = 0.0;
  double value = 0.0;
};

/// All canonical primitive directions with length <= radius, sorted by
/// (length, a, b). Requires radius >= 1.
std::vector<GeodesicDirection> enumerate_directions(double radius);

LineSpectrum line_spectrum(const SpectralField& field, GeodesicDirection dir);

/// g(theta) = sum_d coeffs[d] e(d theta), the average of f over the
/// geodesic with phase theta.
double offset_function(const LineSpectrum& ls, double theta);

/// max over theta of |g|, with the smallest maximizing theta in [0, 1).
OffsetMaximum maximize_offset(const LineSpectrum& ls);

/// sum_d |coeffs[d]|^2 = ||g||^2 on [0, 1].
double line_mass(const LineSpectrum& ls);

/// floor(r^2) with a relative slack of 1e-9, so that radius = sqrt(n)
/// admits lattice points of squared norm n.
std::int64_t squared_radius_limit(double radius);

}  // namespace geomax
