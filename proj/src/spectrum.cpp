#include "geomax/spectrum.hpp"

#include <algorithm>
#include <cassert>
#include <tuple>
#include <random>

#include "geomax/error.hpp"
#include "json.hpp"

namespace geomax {
namespace {

using json = nlohmann::json;

constexpr int kMaxFrequency = 1 << 20;

bool is_half_representative(FrequencyPair k) {
  return k.k2 > 0 || (k.k2 == 0 && k.k1 > 0);
}

std::string to_string(FrequencyPair k) {
  return "(" + std::to_string(k.k1) + "," + std::to_string(k.k2) + ")";
}

double wrap_unit(double v) {
  v -= std::floor(v);
  return v >= 1.0 ? 0.0 : v;
}

// table[m] = exp(2 pi i m / n)
std::vector<Complex> roots_of_unity(int n) {
  std::vector<Complex> table(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    table[static_cast<std::size_t>(m)] =
        std::polar(1.0, kTwoPi * static_cast<double>(m) / n);
  }
  return table;
}

int mod(std::int64_t v, int n) {
  auto r = static_cast<int>(v % n);
  return r < 0 ? r + n : r;
}

double int_power(int base, int exponent) {
  double r = 1.0;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

// (1/G^2) sum over the mesh of |sum_k k1^a1 k2^a2 c_k e(<k, x>)|.
double mean_abs_monomial_derivative(const SpectralField& field, int alpha1,
                                    int alpha2, int grid,
                                    const std::vector<Complex>& roots) {
  const int k2_span = field.max_abs_k2();
  const auto width = static_cast<std::size_t>(2 * k2_span + 1);
  const auto g = static_cast<std::size_t>(grid);

  // partial[i][k2] = sum_{k1} w(k) c_k exp(2 pi i k1 x_i)
  std::vector<Complex> partial(g * width);
  for (const auto& [k, c] : field.coefficients()) {
    const double weight = int_power(k.k1, alpha1) * int_power(k.k2, alpha2);
    if (weight == 0.0) continue;
    const Complex wc = weight * c;
    const auto col = static_cast<std::size_t>(k.k2 + k2_span);
    for (int i = 0; i < grid; ++i) {
      partial[static_cast<std::size_t>(i) * width + col] +=
          wc * roots[static_cast<std::size_t>(mod(std::int64_t{k.k1} * i, grid))];
    }
  }

  std::vector<Complex> column_phase(g * width);
  for (int j = 0; j < grid; ++j) {
    for (int k2 = -k2_span; k2 <= k2_span; ++k2) {
      column_phase[static_cast<std::size_t>(j) * width +
                   static_cast<std::size_t>(k2 + k2_span)] =
          roots[static_cast<std::size_t>(mod(std::int64_t{k2} * j, grid))];
    }
  }

  double total = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    const Complex* row = partial.data() + i * width;
    double row_sum = 0.0;
    for (std::size_t j = 0; j < g; ++j) {
      const Complex* phase = column_phase.data() + j * width;
      Complex v{};
      for (std::size_t c = 0; c < width; ++c) v += row[c] * phase[c];
      row_sum += std::abs(v);
    }
    total += row_sum;
  }
  return total / (static_cast<double>(grid) * grid);
}

}  // namespace

SpectralField::SpectralField(Coefficients coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& [k, c] : coeffs_) {
    bandlimit_sq_ = std::max(bandlimit_sq_, k.norm_squared());
    max_k1_ = std::max(max_k1_, std::abs(k.k1));
    max_k2_ = std::max(max_k2_, std::abs(k.k2));
    if (is_half_representative(k)) half_.push_back({k.k1, k.k2, c});
  }
  // Row-major in k2 so evaluate can factor out e(k2 v) per row.
  std::sort(half_.begin(), half_.end(), [](const HalfEntry& l, const HalfEntry& r) {
    return std::tie(l.k2, l.k1) < std::tie(r.k2, r.k1);
  });
}

SpectralField SpectralField::from_entries(
    const std::vector<std::pair<FrequencyPair, Complex>>& entries) {
  std::map<FrequencyPair, Complex> given;
  for (const auto& [k, c] : entries) {
    if (std::abs(k.k1) > kMaxFrequency || std::abs(k.k2) > kMaxFrequency) {
      throw InvalidInput("frequency " + to_string(k) + " out of range");
    }
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidInput("non-finite coefficient at " + to_string(k));
    }
    if (!given.emplace(k, c).second) {
      throw InvalidInput("duplicate frequency " + to_string(k));
    }
  }

  Coefficients coeffs;
  for (const auto& [k, c] : given) {
    if (k.is_zero()) {
      if (std::abs(c) >= kDropThreshold) {
        throw InvalidInput("mean-zero violated: nonzero coefficient at (0,0)");
      }
      continue;
    }
    const auto partner = given.find(-k);
    if (partner != given.end() &&
        std::abs(partner->second - std::conj(c)) > kConjugateTolerance) {
      throw InvalidInput("coefficients at " + to_string(k) + " and " +
                         to_string(-k) + " are not complex conjugates");
    }
    // Each pair is materialized once, from its half-plane representative
    // when present.
    if (!is_half_representative(k) && partner != given.end()) continue;
    const Complex value = is_half_representative(k) ? c : std::conj(c);
    const FrequencyPair rep = is_half_representative(k) ? k : -k;
    if (std::abs(value) < kDropThreshold) continue;
    coeffs[rep] = value;
    coeffs[-rep] = std::conj(value);
  }
  return SpectralField(std::move(coeffs));
}

Complex SpectralField::coefficient(FrequencyPair k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Complex{} : it->second;
}

SpectralField SpectralField::transposed() const {
  Coefficients out;
  for (const auto& [k, c] : coeffs_) out[{k.k2, k.k1}] = c;
  return SpectralField(std::move(out));
}

SpectralField SpectralField::reflected_y() const {
  Coefficients out;
  for (const auto& [k, c] : coeffs_) out[{k.k1, -k.k2}] = c;
  return SpectralField(std::move(out));
}

std::optional<std::string> find_invariant_violation(const SpectralField& field) {
  std::int64_t max_sq = 0;
  for (const auto& [k, c] : field.coefficients()) {
    if (k.is_zero()) return "entry at (0,0)";
    if (std::abs(c) < kDropThreshold) {
      return "coefficient below drop threshold at " + to_string(k);
    }
    const auto partner = field.coefficients().find(-k);
    if (partner == field.coefficients().end()) {
      return "missing conjugate partner of " + to_string(k);
    }
    if (partner->second != std::conj(c)) {
      return "non-conjugate pair at " + to_string(k);
    }
    max_sq = std::max(max_sq, k.norm_squared());
  }
  if (max_sq != field.bandlimit_squared()) return "stale bandlimit";
  return std::nullopt;
}

SpectralField parse_field(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed field JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("coefficients") ||
      !doc["coefficients"].is_array()) {
    throw InvalidInput("field JSON needs a \"coefficients\" array");
  }

  std::vector<std::pair<FrequencyPair, Complex>> entries;
  for (const auto& item : doc["coefficients"]) {
    if (!item.is_object() || !item.contains("k") || !item.contains("re")) {
      throw InvalidInput("coefficient entries need \"k\" and \"re\"");
    }
    const auto& k = item["k"];
    if (!k.is_array() || k.size() != 2 || !k[0].is_number_integer() ||
        !k[1].is_number_integer()) {
      throw InvalidInput("malformed frequency " + k.dump());
    }
    const auto k1 = k[0].get<std::int64_t>();
    const auto k2 = k[1].get<std::int64_t>();
    if (std::abs(k1) > kMaxFrequency || std::abs(k2) > kMaxFrequency) {
      throw InvalidInput("frequency " + k.dump() + " out of range");
    }
    if (!item["re"].is_number() ||
        (item.contains("im") && !item["im"].is_number())) {
      throw InvalidInput("coefficient at " + k.dump() + " is not numeric");
    }
    const double re = item["re"].get<double>();
    const double im = item.contains("im") ? item["im"].get<double>() : 0.0;
    entries.push_back({{static_cast<int>(k1), static_cast<int>(k2)}, {re, im}});
  }
  return SpectralField::from_entries(entries);
}

std::string serialize_field(const SpectralField& field) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& [k, c] : field.coefficients()) {
    nlohmann::ordered_json item;
    item["k"] = {k.k1, k.k2};
    item["re"] = c.real();
    item["im"] = c.imag();
    list.push_back(std::move(item));
  }
  nlohmann::ordered_json doc;
  doc["coefficients"] = std::move(list);
  return doc.dump(2) + "\n";
}

SpectralField preset_sine(int ell) {
  require(ell >= 1, "preset_sine: ell must be >= 1");
  // sin(2 pi t) = (-i/2) e(t) + (i/2) e(-t)
  return SpectralField::from_entries({{{1, ell}, {0.0, -0.5}}});
}

SpectralField preset_random(int n, double decay, std::uint64_t seed) {
  require(n >= 1, "preset_random: n must be >= 1");
  require(decay >= 0.0, "preset_random: decay must be nonnegative");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::int64_t limit = std::int64_t{n} * n;

  std::vector<std::pair<FrequencyPair, Complex>> entries;
  for (int k2 = 0; k2 <= n; ++k2) {
    for (int k1 = -n; k1 <= n; ++k1) {
      const FrequencyPair k{k1, k2};
      if (!is_half_representative(k) || k.norm_squared() > limit) continue;
      const double magnitude = unit(rng) * std::pow(1.0 + k.norm(), -decay);
      const double phase = kTwoPi * unit(rng);
      entries.push_back({k, std::polar(magnitude, phase)});
    }
  }
  return SpectralField::from_entries(entries);
}

double evaluate(const SpectralField& field, Point x) {
  const double u = wrap_unit(x.x);
  const double v = wrap_unit(x.y);

  // Powers of e(u), e(v) by recurrence; error grows like k * eps. Products
  // are spelled out in reals to stay off the checked complex multiply.
  thread_local std::vector<double> xr, xi, yr, yi;
  const auto powers = [](double t, int n, std::vector<double>& re,
                         std::vector<double>& im) {
    re.resize(static_cast<std::size_t>(n) + 1);
    im.resize(static_cast<std::size_t>(n) + 1);
    const double cr = std::cos(kTwoPi * t);
    const double ci = std::sin(kTwoPi * t);
    re[0] = 1.0;
    im[0] = 0.0;
    for (std::size_t i = 1; i < re.size(); ++i) {
      re[i] = re[i - 1] * cr - im[i - 1] * ci;
      im[i] = re[i - 1] * ci + im[i - 1] * cr;
    }
  };
  // x powers span -max_k1 .. max_k1 so negative k1 needs no branch.
  thread_local std::vector<double> pr, pi;
  const int mx = field.max_k1_;
  powers(u, mx, pr, pi);
  xr.resize(static_cast<std::size_t>(2 * mx + 1));
  xi.resize(xr.size());
  for (int i = 0; i <= mx; ++i) {
    const auto p = static_cast<std::size_t>(i);
    xr[static_cast<std::size_t>(mx + i)] = pr[p];
    xi[static_cast<std::size_t>(mx + i)] = pi[p];
    xr[static_cast<std::size_t>(mx - i)] = pr[p];
    xi[static_cast<std::size_t>(mx - i)] = -pi[p];
  }
  const double* ur = xr.data() + mx;
  const double* ui = xi.data() + mx;
  powers(v, field.max_k2_, yr, yi);

  // sum over rows of Re(e(k2 v) * sum_k1 c e(k1 u))
  double sum = 0.0;
  double row_re = 0.0;
  double row_im = 0.0;
  int row = field.half_.empty() ? 0 : field.half_.front().k2;
  const auto flush = [&] {
    const auto i2 = static_cast<std::size_t>(row);
    sum += row_re * yr[i2] - row_im * yi[i2];
    row_re = 0.0;
    row_im = 0.0;
  };
  for (const auto& e : field.half_) {
    if (e.k2 != row) {
      flush();
      row = e.k2;
    }
    const double ar = ur[e.k1];
    const double ai = ui[e.k1];
    row_re += e.c.real() * ar - e.c.imag() * ai;
    row_im += e.c.real() * ai + e.c.imag() * ar;
  }
  flush();

#ifndef NDEBUG
  Complex full{};
  for (const auto& [k, c] : field.coeffs_) {
    full += c * std::polar(1.0, kTwoPi * (k.k1 * u + k.k2 * v));
  }
  assert(std::abs(full.imag()) <= 1e-10);
#endif
  return 2.0 * sum;
}

int minimal_norm_grid(const SpectralField& field) {
  return static_cast<int>(std::ceil(4.0 * field.bandlimit() + 1.0 - 1e-9));
}

int default_norm_grid(const SpectralField& field) {
  return std::max(256, minimal_norm_grid(field));
}

NormReport norms(const SpectralField& field, int s_max, int grid) {
  require(s_max >= 1, "norms: s_max must be >= 1");
  require(grid >= minimal_norm_grid(field),
          "norms: grid " + std::to_string(grid) + " below 4*N_max+1 = " +
              std::to_string(minimal_norm_grid(field)));

  NormReport report;
  report.grid = grid;
  double mass = 0.0;
  double weighted = 0.0;
  for (const auto& [k, c] : field.coefficients()) {
    const double m = std::norm(c);
    mass += m;
    weighted += static_cast<double>(k.norm_squared()) * m;
  }
  report.l2 = std::sqrt(mass);
  report.grad_l2 = kTwoPi * std::sqrt(weighted);
  report.ratio_n = report.l2 > 0.0 ? report.grad_l2 / report.l2 : 0.0;

  const auto roots = roots_of_unity(grid);
  for (int s = 1; s <= s_max; ++s) {
    double best = 0.0;
    for (int alpha1 = 0; alpha1 <= s; ++alpha1) {
      best = std::max(best, mean_abs_monomial_derivative(field, alpha1,
                                                         s - alpha1, grid, roots));
    }
    report.deriv_l1[s] = std::pow(kTwoPi, s) * best;
  }
  return report;
}

double derivative_l1_upper_bound(const SpectralField& field, int s) {
  double total = 0.0;
  for (const auto& [k, c] : field.coefficients()) {
    total += std::pow(kTwoPi * k.norm(), s) * std::abs(c);
  }
  return total;
}

}  // namespace geomax
