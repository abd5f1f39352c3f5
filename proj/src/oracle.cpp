#include "geomax/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "geomax/error.hpp"

namespace geomax {
namespace {

std::string describe(GeodesicDirection dir) {
  return "(" + std::to_string(dir.a()) + "," + std::to_string(dir.b()) + ")";
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Canonical primitive directions by direct gcd scan, sorted (length, a, b).
std::vector<GeodesicDirection> scan_directions(double radius) {
  const double r2 = radius * radius;
  const auto limit =
      static_cast<std::int64_t>(std::floor(r2 + 1e-9 * std::max(1.0, r2)));
  const auto reach = static_cast<int>(std::ceil(radius)) + 1;
  std::vector<GeodesicDirection> out;
  for (int a = 0; a <= reach; ++a) {
    for (int b = -reach; b <= reach; ++b) {
      const bool canonical = a > 0 || (a == 0 && b == 1);
      if (!canonical || std::gcd(a, b) != 1) continue;
      if (std::int64_t{a} * a + std::int64_t{b} * b <= limit) {
        out.push_back(GeodesicDirection::make(a, b));
      }
    }
  }
  std::sort(out.begin(), out.end(), shorter_first);
  return out;
}

template <typename F>
double golden_argmax(F&& f, double lo, double hi, double width) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - r * (hi - lo);
  double x2 = lo + r * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > width) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

struct Peak {
  double theta;
  double value;
};

// max over theta of |average| for one direction, by sampling + golden section.
Peak brute_force_direction(const SpectralField& field, GeodesicDirection dir,
                           int theta_samples) {
  const int m = minimal_quadrature_nodes(field, dir);
  const auto abs_avg = [&](double theta) {
    return std::abs(
        quadrature_average(field, ClosedGeodesic::at_phase(dir, theta), m));
  };

  const double spacing = 1.0 / theta_samples;
  std::vector<double> samples(static_cast<std::size_t>(theta_samples));
  double top = 0.0;
  for (int j = 0; j < theta_samples; ++j) {
    samples[static_cast<std::size_t>(j)] = abs_avg(j * spacing);
    top = std::max(top, samples[static_cast<std::size_t>(j)]);
  }

  Peak best{0.0, -1.0};
  for (int j = 0; j < theta_samples; ++j) {
    const double here = samples[static_cast<std::size_t>(j)];
    const double left =
        samples[static_cast<std::size_t>((j + theta_samples - 1) % theta_samples)];
    const double right = samples[static_cast<std::size_t>((j + 1) % theta_samples)];
    if (here < left || here < right || here < top * (1.0 - 1e-3)) continue;

    Peak p{j * spacing, here};
    const double t = golden_argmax(abs_avg, p.theta - spacing, p.theta + spacing, 1e-12);
    const double v = abs_avg(t);
    if (v > here) p = {t - std::floor(t), v};
    if (p.theta >= 1.0) p.theta = 0.0;
    if (p.value > best.value + 1e-12 ||
        (std::abs(p.value - best.value) <= 1e-12 && p.theta < best.theta)) {
      best = p;
    }
  }
  return best;
}

std::vector<GeodesicDirection> directions_within_bandlimit(
    const SpectralField& field) {
  if (field.empty()) return {};
  auto dirs = enumerate_directions(std::max(1.0, field.bandlimit()));
  std::erase_if(dirs, [&](const GeodesicDirection& d) {
    return d.length_squared() > field.bandlimit_squared();
  });
  return dirs;
}

}  // namespace

double decay_headroom(int s) { return std::ldexp(1.0, s); }

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckEntry& c) { return c.passed; });
}

std::size_t VerificationReport::passed_count() const {
  return static_cast<std::size_t>(std::count_if(
      checks.begin(), checks.end(), [](const CheckEntry& c) { return c.passed; }));
}

int minimal_quadrature_nodes(const SpectralField& field, GeodesicDirection dir) {
  const double product = std::sqrt(static_cast<double>(field.bandlimit_squared()) *
                                   static_cast<double>(dir.length_squared()));
  return static_cast<int>(std::floor(2.0 * product + 1.0)) + 1;
}

double quadrature_average(const SpectralField& field, const ClosedGeodesic& geo,
                          int m) {
  const double product =
      std::sqrt(static_cast<double>(field.bandlimit_squared()) *
                static_cast<double>(geo.direction.length_squared()));
  if (!(m > 2.0 * product + 1.0)) {
    throw PreconditionError("quadrature_average: " + std::to_string(m) +
                            " nodes alias a polynomial of degree " +
                            format_number(product));
  }

  const std::int64_t a = geo.direction.a();
  const std::int64_t b = geo.direction.b();
  double sum = 0.0;
  for (std::int64_t j = 0; j < m; ++j) {
    // t = j/m; reduce t*a and t*b exactly before adding the offset.
    const double x = static_cast<double>((j * a) % m) / m + geo.offset_point.x;
    const double y = static_cast<double>(((j * b) % m + m) % m) / m + geo.offset_point.y;
    sum += evaluate(field, {x, y});
  }
  return sum / m;
}

BruteForceResult brute_force_extremal(const SpectralField& field, double radius,
                                      int theta_samples) {
  require(radius >= 1.0, "brute_force_extremal: radius must be >= 1");
  require(theta_samples >= kOracleThetaSamples,
          "brute_force_extremal: need at least 4096 theta samples");

  std::optional<GeodesicDirection> best_dir;
  Peak best{0.0, -1.0};
  for (const auto& dir : scan_directions(radius)) {
    const Peak p = field.empty() ? Peak{0.0, 0.0}
                                 : brute_force_direction(field, dir, theta_samples);
    if (!best_dir || p.value > best.value + 1e-12) {
      best_dir = dir;
      best = p;
    }
  }
  return {ClosedGeodesic::at_phase(*best_dir, best.theta), best.value};
}

CheckEntry check_tail_mass(const SpectralField& field) {
  require(!field.empty(), "check_tail_mass: field must be nonempty");
  const NormReport report = norms(field, 1, minimal_norm_grid(field));
  const double n = report.ratio_n;
  double tail = 0.0;
  for (const auto& [k, c] : field.coefficients()) {
    if (k.norm() >= n) tail += std::norm(c);
  }
  const double measured = tail / (report.l2 * report.l2);
  return {"tail_mass", measured <= kTailMassLimit + 1e-12, measured,
          kTailMassLimit,
          "N = " + format_number(n) + ", tail mass " + format_number(tail)};
}

CheckEntry check_covering_lower_bound(const SpectralField& field) {
  const CoveringFamily family = covering_family(field);

  double off_axis = 0.0;
  for (const auto& [k, c] : field.coefficients()) {
    if (k.norm() > family.n) continue;
    const bool on_excluded_axis = family.swapped ? k.k1 == 0 : k.k2 == 0;
    if (!on_excluded_axis) off_axis += std::norm(c);
  }

  double max_sq = 0.0;
  for (const auto& dir : family.directions) {
    const double v = maximize_offset(line_spectrum(field, dir)).value;
    max_sq = std::max(max_sq, v * v);
  }
  const auto lines = static_cast<double>(family.directions.size());
  double measured = 0.0;
  if (off_axis > 0.0) {
    measured = max_sq > 0.0 ? off_axis / (lines * max_sq)
                            : std::numeric_limits<double>::infinity();
  }
  return {"covering_lower_bound", measured <= kCoveringHeadroom, measured,
          kCoveringHeadroom,
          std::to_string(family.directions.size()) + " lines, N = " +
              format_number(family.n) +
              (family.swapped ? ", axes swapped" : "")};
}

CheckEntry check_interpolation_inequality(const SpectralField& field,
                                          GeodesicDirection dir) {
  require(dir.a() != 0 && dir.b() != 0,
          "check_interpolation_inequality: axis directions have length 1");

  // Reduce to a >= b >= 1 by f(x, -y) and f(y, x).
  SpectralField work = field;
  int a = dir.a();
  int b = dir.b();
  if (b < 0) {
    work = work.reflected_y();
    b = -b;
  }
  if (b > a) {
    work = work.transposed();
    std::swap(a, b);
  }
  const auto oriented = GeodesicDirection::make(a, b);
  const LineSpectrum ls = line_spectrum(work, oriented);
  if (ls.coeffs.empty()) {
    return {"interpolation_inequality", true, 0.0, kInterpolationHeadroom,
            "vacuous: empty line " + describe(dir)};
  }

  // In the offset variable c, g(c) = G(a c): ||g'||^2 = 4 pi^2 sum (d a)^2 |c_d|^2.
  double derivative_sq = 0.0;
  for (const auto& [d, c] : ls.coeffs) {
    const double freq = static_cast<double>(d) * a;
    derivative_sq += kTwoPi * kTwoPi * freq * freq * std::norm(c);
  }
  const double sup = maximize_offset(ls).value;
  const double measured = sup * std::sqrt(oriented.length()) /
                          std::pow(line_mass(ls) * derivative_sq, 0.25);
  return {"interpolation_inequality", measured <= kInterpolationHeadroom,
          measured, kInterpolationHeadroom, "line " + describe(dir)};
}

CheckEntry check_interpolation_all_lines(const SpectralField& field) {
  CheckEntry worst{"interpolation_inequality", true, 0.0, kInterpolationHeadroom,
                   "vacuous: no nonempty off-axis line"};
  bool any = false;
  for (const auto& dir : directions_within_bandlimit(field)) {
    if (dir.a() == 0 || dir.b() == 0) continue;
    const CheckEntry e = check_interpolation_inequality(field, dir);
    if (e.detail.starts_with("vacuous")) continue;
    if (!any || e.measured > worst.measured) worst = e;
    any = true;
  }
  if (any) worst.detail = "worst " + worst.detail;
  return worst;
}

CheckEntry check_decay_of_averages(const SpectralField& field, int s) {
  require(s >= 2, "check_decay_of_averages: s must be >= 2");
  const double threshold = decay_headroom(s);
  if (field.empty()) return {"decay_of_averages", true, 0.0, threshold, "vacuous"};

  const double deriv = norms(field, s, default_norm_grid(field)).deriv_l1.at(s);
  double measured = 0.0;
  std::string worst = "none";
  for (const auto& dir : directions_within_bandlimit(field)) {
    const double v = maximize_offset(line_spectrum(field, dir)).value *
                     std::pow(dir.length(), s) / deriv;
    if (v > measured) {
      measured = v;
      worst = describe(dir);
    }
  }
  return {"decay_of_averages", measured <= threshold, measured, threshold,
          "s = " + std::to_string(s) + ", worst line " + worst};
}

CheckEntry check_oracle_equivalence(const SpectralField& field, int s) {
  require(!field.empty(), "check_oracle_equivalence: field must be nonempty");
  const auto fast = find_extremal(field, search_bound(field, s, 1.0), false);
  const auto slow =
      brute_force_extremal(field, field.bandlimit(), kOracleThetaSamples);
  const double gap = std::abs(fast.value - slow.value);
  return {"oracle_equivalence", gap <= kOracleAgreement, gap, kOracleAgreement,
          "search " + describe(fast.geodesic.direction) + " " +
              format_number(fast.value) + ", brute force " +
              describe(slow.geodesic.direction) + " " + format_number(slow.value)};
}

CheckEntry check_plancherel_on_line(const SpectralField& field) {
  double worst_rel = 0.0;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::size_t lines = 0;
  for (const auto& dir : directions_within_bandlimit(field)) {
    const LineSpectrum ls = line_spectrum(field, dir);
    if (ls.coeffs.empty()) continue;
    ++lines;
    const int m = 4 * ls.dmax + 4;  // > 2 * (2 dmax + 1) - 1: exact for g^2
    double mean_square = 0.0;
    for (int j = 0; j < m; ++j) {
      const double g = offset_function(ls, static_cast<double>(j) / m);
      mean_square += g * g;
    }
    mean_square /= m;
    const double mass = line_mass(ls);
    worst_rel = std::max(worst_rel, std::abs(mean_square - mass) / mass);
    worst_slack =
        std::min(worst_slack, maximize_offset(ls).value - std::sqrt(mass));
  }
  const bool dominated = lines == 0 || worst_slack >= -1e-9;
  return {"plancherel_on_line", worst_rel <= kLinePlancherelTolerance && dominated,
          worst_rel, kLinePlancherelTolerance,
          std::to_string(lines) + " lines, min(max|g| - sqrt(mass)) = " +
              (lines == 0 ? std::string("n/a") : format_number(worst_slack))};
}

VerificationReport run_all_checks(const SpectralField& field, int s) {
  require(!field.empty(), "run_all_checks: field must be nonempty");
  require(s >= 2, "run_all_checks: s must be >= 2");
  VerificationReport report;
  report.checks.push_back(check_covering_lower_bound(field));
  report.checks.push_back(check_decay_of_averages(field, s));
  report.checks.push_back(check_interpolation_all_lines(field));
  report.checks.push_back(check_oracle_equivalence(field, s));
  report.checks.push_back(check_plancherel_on_line(field));
  report.checks.push_back(check_tail_mass(field));
  return report;
}

}  // namespace geomax
