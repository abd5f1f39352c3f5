#include "geomax/geodesic.hpp"

#include <algorithm>
#include <cassert>
#include <numbers>
#include <numeric>
#include <string>

#include "geomax/error.hpp"

namespace geomax {
namespace {

double wrap_unit(double v) {
  v -= std::floor(v);
  return v >= 1.0 ? 0.0 : v;
}

Complex unit_phase(double turns) { return std::polar(1.0, kTwoPi * wrap_unit(turns)); }

// Golden-section search for the maximum of f on [lo, hi].
template <typename F>
double golden_section_argmax(F&& f, double lo, double hi, double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > width) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

GeodesicDirection GeodesicDirection::make(int a, int b) {
  require(a != 0 || b != 0, "direction must be nonzero");
  require(std::gcd(a, b) == 1, "direction (" + std::to_string(a) + "," +
                                   std::to_string(b) + ") is not primitive");
  require(a > 0 || (a == 0 && b == 1),
          "direction (" + std::to_string(a) + "," + std::to_string(b) +
              ") is not in canonical orientation");
  return {a, b};
}

GeodesicDirection GeodesicDirection::canonical(int a, int b) {
  if (a < 0 || (a == 0 && b < 0)) return make(-a, -b);
  return make(a, b);
}

bool shorter_first(const GeodesicDirection& lhs, const GeodesicDirection& rhs) {
  if (lhs.length_squared() != rhs.length_squared()) {
    return lhs.length_squared() < rhs.length_squared();
  }
  if (lhs.a() != rhs.a()) return lhs.a() < rhs.a();
  return lhs.b() < rhs.b();
}

ClosedGeodesic ClosedGeodesic::at_phase(GeodesicDirection direction,
                                        double theta) {
  theta = wrap_unit(theta);
  const Point p = direction.a() != 0
                      ? Point{0.0, theta / direction.a()}
                      : Point{wrap_unit(1.0 - theta), 0.0};
  return {direction, theta, p};
}

ClosedGeodesic ClosedGeodesic::through(GeodesicDirection direction, Point p) {
  const auto g = direction.line_generator();
  return at_phase(direction, g.k1 * wrap_unit(p.x) + g.k2 * wrap_unit(p.y));
}

Point ClosedGeodesic::at(double t) const {
  return {wrap_unit(t * direction.a() + offset_point.x),
          wrap_unit(t * direction.b() + offset_point.y)};
}

std::int64_t squared_radius_limit(double radius) {
  const double r2 = radius * radius;
  return static_cast<std::int64_t>(std::floor(r2 + 1e-9 * std::max(1.0, r2)));
}

std::vector<GeodesicDirection> enumerate_directions(double radius) {
  require(radius >= 1.0, "enumerate_directions: radius must be >= 1");
  const std::int64_t limit = squared_radius_limit(radius);
  const auto reach = static_cast<int>(std::sqrt(static_cast<double>(limit)) + 1.0);

  std::vector<GeodesicDirection> out;
  for (int a = 0; a <= reach; ++a) {
    for (int b = -reach; b <= reach; ++b) {
      if (a == 0 && b != 1) continue;
      if (std::int64_t{a} * a + std::int64_t{b} * b > limit) continue;
      if (std::gcd(a, b) != 1) continue;
      out.push_back(GeodesicDirection::make(a, b));
    }
  }
  std::sort(out.begin(), out.end(), shorter_first);
  return out;
}

LineSpectrum line_spectrum(const SpectralField& field, GeodesicDirection dir) {
  LineSpectrum ls{dir, {}, 0};
  const std::int64_t len_sq = dir.length_squared();
  while (std::int64_t{ls.dmax + 1} * (ls.dmax + 1) * len_sq <=
         field.bandlimit_squared()) {
    ++ls.dmax;
  }
  const auto g = dir.line_generator();
  for (int d = -ls.dmax; d <= ls.dmax; ++d) {
    if (d == 0) continue;
    const Complex c = field.coefficient({d * g.k1, d * g.k2});
    if (c != Complex{}) ls.coeffs.emplace(d, c);
  }
  return ls;
}

double offset_function(const LineSpectrum& ls, double theta) {
  Complex sum{};
  for (const auto& [d, c] : ls.coeffs) sum += c * unit_phase(d * theta);
  assert(std::abs(sum.imag()) <= 1e-10);
  return sum.real();
}

OffsetMaximum maximize_offset(const LineSpectrum& ls) {
  if (ls.coeffs.empty()) return {};

  const int samples = std::max(256, 8 * (2 * ls.dmax + 1));
  const double spacing = 1.0 / samples;
  std::vector<double> value(static_cast<std::size_t>(samples));
  double best_sample = 0.0;
  for (int j = 0; j < samples; ++j) {
    value[static_cast<std::size_t>(j)] = std::abs(offset_function(ls, j * spacing));
    best_sample = std::max(best_sample, value[static_cast<std::size_t>(j)]);
  }

  // A degree-dmax polynomial loses at most this fraction of its peak within
  // half a sample spacing (Bernstein), so any sampled local maximum below it
  // cannot sit next to the global peak.
  const double ratio = std::numbers::pi * ls.dmax / samples;
  const double admit = best_sample * (1.0 - 0.5 * ratio * ratio) - 1e-15;

  const auto abs_g = [&ls](double t) { return std::abs(offset_function(ls, t)); };
  std::vector<OffsetMaximum> candidates;
  for (int j = 0; j < samples; ++j) {
    const double here = value[static_cast<std::size_t>(j)];
    const double left = value[static_cast<std::size_t>((j + samples - 1) % samples)];
    const double right = value[static_cast<std::size_t>((j + 1) % samples)];
    if (here < admit || here < left || here < right) continue;

    const double theta0 = j * spacing;
    const double refined =
        golden_section_argmax(abs_g, theta0 - spacing, theta0 + spacing, 1e-13);
    const double refined_value = abs_g(refined);
    if (refined_value > here) {
      candidates.push_back({wrap_unit(refined), refined_value});
    } else {
      candidates.push_back({theta0, here});
    }
  }

  OffsetMaximum best = candidates.front();
  for (const auto& c : candidates) {
    if (c.value > best.value + 1e-12 ||
        (std::abs(c.value - best.value) <= 1e-12 && c.theta < best.theta)) {
      best = c;
    }
  }
  return best;
}

double line_mass(const LineSpectrum& ls) {
  double mass = 0.0;
  for (const auto& [d, c] : ls.coeffs) mass += std::norm(c);
  return mass;
}

}  // namespace geomax
