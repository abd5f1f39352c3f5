#pragma once

#include <string>
#include <vector>

#include "geomax/extremizer.hpp"
#include "geomax/geodesic.hpp"
#include "geomax/spectrum.hpp"

namespace geomax {

// Frozen headroom for the proof's unspecified constants. These are
// regression tripwires, not estimates of the true constants.
inline constexpr double kCoveringHeadroom = 2.0;
inline constexpr double kInterpolationHeadroom = 4.0;
inline constexpr double kTailMassLimit = 0.25;
inline constexpr double kOracleAgreement = 1e-9;
inline constexpr double kLinePlancherelTolerance = 1e-10;
inline constexpr int kOracleThetaSamples = 4096;
double decay_headroom(int s);  // 2^s

/// Smallest node count accepted by quadrature_average for this direction:
/// the first integer above 2 N_max |gamma| + 1.
int minimal_quadrature_nodes(const SpectralField& field, GeodesicDirection dir);

/// (1/m) sum_j f(gamma(j/m)): the average of f over the geodesic by the
/// equal-weight rule, exact for band-limited f. Throws PreconditionError
/// unless m > 2 N_max |gamma| + 1.
double quadrature_average(const SpectralField& field, const ClosedGeodesic& geo,
                          int m);

struct BruteForceResult {
  ClosedGeodesic geodesic;
  double value;
};

/// Exhaustive search over every direction of length <= radius and a uniform
/// theta grid, refined by golden section. Uses only quadrature_average.
/// Requires radius >= 1 and theta_samples >= 4096.
BruteForceResult brute_force_extremal(const SpectralField& field, double radius,
                                      int theta_samples);

struct CheckEntry {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckEntry> checks;  // ordered by name

  [[nodiscard]] bool all_passed() const;
  [[nodiscard]] std::size_t passed_count() const;
};

/// Fraction of L^2 mass at ||k|| >= ||grad f|| / ||f||; must be <= 1/4.
CheckEntry check_tail_mass(const SpectralField& field);

/// Off-axis disk mass at radius N over (#covering lines * max |average|^2).
CheckEntry check_covering_lower_bound(const SpectralField& field);

/// ||g||_inf |gamma|^(1/2) / (||g||_2^(1/2) ||g'||_2^(1/2)) for the offset
/// function g of one direction, in the offset variable c. Requires a
/// direction with a != 0 and b != 0; an empty line passes as "vacuous".
CheckEntry check_interpolation_inequality(const SpectralField& field,
                                          GeodesicDirection dir);

/// max over directions with length <= N_max of |average| |gamma|^s /
/// max_{|alpha|=s} ||d^alpha f||_1.
CheckEntry check_decay_of_averages(const SpectralField& field, int s);

/// find_extremal against brute_force_extremal at radius N_max.
CheckEntry check_oracle_equivalence(const SpectralField& field, int s);

/// Line Plancherel identity and max-dominates-mass on every line up to N_max.
CheckEntry check_plancherel_on_line(const SpectralField& field);

/// Interpolation check maximized over every eligible direction up to N_max.
CheckEntry check_interpolation_all_lines(const SpectralField& field);

/// All six checks. Requires a nonempty field and s >= 2.
VerificationReport run_all_checks(const SpectralField& field, int s);

}  // namespace geomax
