#pragma once

#include <cmath>
#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace geomax {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Entries with modulus below this are dropped when a field is built.
inline constexpr double kDropThreshold = 1e-15;
/// Allowed mismatch between a supplied f(-k) and conj(f(k)).
inline constexpr double kConjugateTolerance = 1e-12;

/// Integer frequency k = (k1, k2) of the lattice Z^2.
struct FrequencyPair {
  int k1 = 0;
  int k2 = 0;

  [[nodiscard]] constexpr std::int64_t norm_squared() const {
    return std::int64_t{k1} * k1 + std::int64_t{k2} * k2;
  }
  [[nodiscard]] double norm() const {
    return std::sqrt(static_cast<double>(norm_squared()));
  }
  [[nodiscard]] constexpr FrequencyPair operator-() const { return {-k1, -k2}; }
  [[nodiscard]] constexpr bool is_zero() const { return k1 == 0 && k2 == 0; }

  friend constexpr auto operator<=>(const FrequencyPair&,
                                    const FrequencyPair&) = default;
};

/// A point of the torus, identified with [0,1)^2.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// A real, mean-zero trigonometric polynomial on T^2 stored by its Fourier
/// coefficients, f(x) = sum_k c_k exp(2 pi i <k, x>).
///
/// Every instance is Hermitian-complete (c_{-k} = conj(c_k)), carries no
/// (0,0) entry and no entry below kDropThreshold. Instances are immutable.
class SpectralField {
 public:
  using Coefficients = std::map<FrequencyPair, Complex>;

  /// The zero function.
  SpectralField() = default;

  /// Builds a field from a list of (k, c_k) entries. Half spectra are
  /// completed by conjugation. Throws InvalidInput on a nonzero (0,0) entry,
  /// a repeated frequency, or a k/-k pair that is not conjugate.
  static SpectralField from_entries(
      const std::vector<std::pair<FrequencyPair, Complex>>& entries);

  [[nodiscard]] const Coefficients& coefficients() const { return coeffs_; }
  /// c_k, or 0 when k is outside the support.
  [[nodiscard]] Complex coefficient(FrequencyPair k) const;
  [[nodiscard]] bool empty() const { return coeffs_.empty(); }
  [[nodiscard]] std::size_t size() const { return coeffs_.size(); }

  /// N_max = max ||k|| over the support (0 for the zero field).
  [[nodiscard]] double bandlimit() const {
    return std::sqrt(static_cast<double>(bandlimit_sq_));
  }
  [[nodiscard]] std::int64_t bandlimit_squared() const { return bandlimit_sq_; }
  [[nodiscard]] int max_abs_k1() const { return max_k1_; }
  [[nodiscard]] int max_abs_k2() const { return max_k2_; }

  /// g(x, y) = f(y, x): transposes every frequency index.
  [[nodiscard]] SpectralField transposed() const;
  /// g(x, y) = f(x, -y).
  [[nodiscard]] SpectralField reflected_y() const;

 private:
  struct HalfEntry {
    int k1;
    int k2;
    Complex c;
  };

  explicit SpectralField(Coefficients coeffs);

  Coefficients coeffs_;
  // Representatives with k2 > 0, or k2 == 0 and k1 > 0.
  std::vector<HalfEntry> half_;
  std::int64_t bandlimit_sq_ = 0;
  int max_k1_ = 0;
  int max_k2_ = 0;

  friend double evaluate(const SpectralField& field, Point x);
};

/// Returns a description of the first violated field invariant, if any.
std::optional<std::string> find_invariant_violation(const SpectralField& field);

/// L^2 and derivative norms of a field.
struct NormReport {
  double l2 = 0.0;       // ||f||_2
  double grad_l2 = 0.0;  // ||grad f||_2
  /// s -> max over |alpha| = s of ||d^alpha f||_1, for 1 <= s <= s_max.
  std::map<int, double> deriv_l1;
  double ratio_n = 0.0;  // grad_l2 / l2, 0 for the zero field
  int grid = 0;          // mesh used for deriv_l1
};

/// Parses the field JSON document {"coefficients": [{"k": [k1,k2], "re": x,
/// "im": y}, ...]}. Throws InvalidInput.
SpectralField parse_field(std::string_view document);

/// Writes the field JSON document with both members of every conjugate pair,
/// sorted by frequency.
std::string serialize_field(const SpectralField& field);

/// f(x, y) = sin(2 pi (x + ell y)).
SpectralField preset_sine(int ell);

/// Random band-limited field: one draw per +-k pair with 0 < ||k|| <= n,
/// modulus U[0,1) * (1 + ||k||)^-decay and uniform phase. Pure function of
/// its arguments.
SpectralField preset_random(int n, double decay, std::uint64_t seed);

/// Point value of f. x is taken modulo 1 in each coordinate.
double evaluate(const SpectralField& field, Point x);

/// Smallest mesh accepted by norms(): ceil(4 N_max + 1).
int minimal_norm_grid(const SpectralField& field);
/// Mesh used when none is given: max(256, minimal_norm_grid).
int default_norm_grid(const SpectralField& field);

/// l2 and grad_l2 exactly from the coefficients; deriv_l1(s) by rectangle
/// rule on a grid x grid mesh. Requires s_max >= 1 and
/// grid >= minimal_norm_grid(field).
NormReport norms(const SpectralField& field, int s_max, int grid);

/// sum_k (2 pi ||k||)^s |c_k|, an upper bound for every ||d^alpha f||_1.
double derivative_l1_upper_bound(const SpectralField& field, int s);

}  // namespace geomax
