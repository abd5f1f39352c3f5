#include "geomax/extremizer.hpp"

#include <gtest/gtest.h>

#include "geomax/error.hpp"
#include "geomax/oracle.hpp"
#include "test_support.hpp"

namespace geomax {
namespace {

using testing::cos_field;
using testing::kPi;

TEST(SearchBound, SineFamily) {
  for (int ell = 2; ell <= 8; ++ell) {
    const auto f = preset_sine(ell);
    const auto b = search_bound(f, 2, 1.0);
    const double cutoff = std::sqrt(1.0 + ell * ell);
    EXPECT_DOUBLE_EQ(b.cutoff_radius, cutoff);
    EXPECT_DOUBLE_EQ(b.effective_radius, cutoff);
    // deriv_l1(2) = 8 pi ell^2, grad = sqrt(2) pi sqrt(1 + ell^2), l2^2 = 1/2
    const double expected =
        std::sqrt(8.0 * kPi * ell * ell * std::sqrt(2.0) * kPi * cutoff / 0.5);
    EXPECT_NEAR(b.theorem_radius / expected, 1.0, 1e-3) << ell;
    EXPECT_EQ(b.s, 2);
  }
}

TEST(SearchBound, CosField) {
  const auto b = search_bound(cos_field(), 2, 1.0);
  EXPECT_DOUBLE_EQ(b.cutoff_radius, 1.0);
  EXPECT_DOUBLE_EQ(b.effective_radius, 1.0);
}

TEST(SearchBound, Preconditions) {
  EXPECT_THROW(search_bound(cos_field(), 1, 1.0), PreconditionError);
  EXPECT_THROW(search_bound(SpectralField{}, 2, 1.0), PreconditionError);
  EXPECT_THROW(search_bound(cos_field(), 2, 0.0), PreconditionError);
}

TEST(SearchBound, NeverExceedsBandlimit) {
  for (const auto& f : testing::ensemble(7, 0.5)) {
    for (double constant : {1e-6, 1.0, 1e6}) {
      const auto b = search_bound(f, 2, constant);
      EXPECT_LE(b.effective_radius, f.bandlimit());
      EXPECT_GE(b.effective_radius, 1.0);
    }
  }
}

TEST(FindExtremal, SineFive) {
  const auto f = preset_sine(5);
  const auto r = find_extremal(f, search_bound(f, 2, 1.0), false);
  EXPECT_EQ(r.geodesic.direction, GeodesicDirection::make(5, -1));
  EXPECT_NEAR(r.geodesic.theta, 0.25, 1e-12);
  EXPECT_NEAR(r.value, 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(r.geodesic.direction.length(), std::sqrt(26.0));
  EXPECT_FALSE(r.per_direction);
}

TEST(FindExtremal, CosField) {
  const auto r = find_extremal(cos_field(), search_bound(cos_field(), 2, 1.0), false);
  EXPECT_EQ(r.geodesic.direction, GeodesicDirection::make(0, 1));
  EXPECT_EQ(r.geodesic.theta, 0.0);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_EQ(r.scanned, 2u);
}

TEST(FindExtremal, RandomAgainstBruteForce) {
  const auto f = preset_random(6, 1.0, 123);
  const auto r = find_extremal(f, search_bound(f, 2, 1.0), false);
  const auto oracle = brute_force_extremal(f, 6.0, 4096);
  EXPECT_NEAR(r.value, oracle.value, 1e-9);
  EXPECT_EQ(r.geodesic.direction, oracle.geodesic.direction);
}

TEST(FindExtremal, ZeroField) {
  SearchBound unit;
  const auto r = find_extremal(SpectralField{}, unit, false);
  EXPECT_EQ(r.geodesic.direction, GeodesicDirection::make(1, 0));
  EXPECT_EQ(r.geodesic.theta, 0.0);
  EXPECT_EQ(r.value, 0.0);
}

TEST(FindExtremal, TieBreaking) {
  // cos(2 pi x) + cos(2 pi y): both unit directions reach 1; (0, 1) sorts first.
  const auto axes = SpectralField::from_entries({{{1, 0}, {0.5, 0}}, {{0, 1}, {0.5, 0}}});
  auto r = find_extremal(axes, search_bound(axes, 2, 1.0), false);
  EXPECT_EQ(r.geodesic.direction, GeodesicDirection::make(0, 1));

  // sin(2 pi (x + y)) + sin(2 pi (x - y)): (1, -1) and (1, 1) tie; smaller b.
  const auto diag =
      SpectralField::from_entries({{{1, 1}, {0, -0.5}}, {{1, -1}, {0, -0.5}}});
  r = find_extremal(diag, search_bound(diag, 2, 1.0), false);
  EXPECT_EQ(r.geodesic.direction, GeodesicDirection::make(1, -1));
  EXPECT_NEAR(r.value, 1.0, 1e-12);

  // A strictly larger value on a longer line wins over ties on short ones.
  const auto longer = SpectralField::from_entries(
      {{{1, 0}, {0.5, 0}}, {{0, 1}, {0.5, 0}}, {{2, 1}, {0.6, 0}}});
  r = find_extremal(longer, search_bound(longer, 2, 1.0), false);
  EXPECT_EQ(r.geodesic.direction, GeodesicDirection::make(1, -2));
  EXPECT_NEAR(r.value, 1.2, 1e-12);
}

TEST(FindExtremal, TableDominatedByResult) {
  const auto f = preset_random(5, 1.0, 4);
  const auto r = find_extremal(f, search_bound(f, 2, 1.0), true);
  ASSERT_TRUE(r.per_direction);
  EXPECT_EQ(r.per_direction->size(), r.scanned);
  for (const auto& rec : *r.per_direction) EXPECT_LE(rec.value, r.value);
}

TEST(ExtremizerProperty, GlobalOptimalityAndBound) {
  // length^2 <= 50 deriv_l1(2) grad / l2^2 with s = 2, constant = 1.
  auto fields = testing::ensemble();
  for (int ell = 1; ell <= 8; ++ell) fields.push_back(preset_sine(ell));
  for (const auto& f : fields) {
    const auto rep = norms(f, 2, default_norm_grid(f));
    const auto b = search_bound(f, rep, 2, 1.0);
    const auto r = find_extremal(f, b, false);
    EXPECT_LE(r.geodesic.direction.length(), b.effective_radius + 1e-12);
    EXPECT_LE(r.geodesic.direction.length_squared(),
              50.0 * rep.deriv_l1.at(2) * rep.grad_l2 / (rep.l2 * rep.l2));
  }
}

TEST(ExtremizerProperty, MonotoneInRadius) {
  for (const auto& f : testing::ensemble()) {
    auto b = search_bound(f, 2, 1.0);
    double previous = 0.0;
    for (double radius = 1.0; radius <= f.bandlimit() + 1.0; radius += 0.5) {
      b.effective_radius = radius;
      const double v = find_extremal(f, b, false).value;
      EXPECT_GE(v, previous);
      previous = v;
    }
  }
}

TEST(LowerBound, SineOne) {
  const auto lb = short_geodesic_lower_bound(preset_sine(1));
  EXPECT_EQ(lb.geodesic.direction, GeodesicDirection::make(1, -1));
  EXPECT_NEAR(lb.value, 1.0, 1e-12);
  EXPECT_FALSE(lb.swapped);
  // value * grad / l2^2 = 1 * 2 pi / (1/2)
  EXPECT_NEAR(lb.certified, 4.0 * kPi, 1e-12);
}

TEST(LowerBound, AxisSwap) {
  const auto lb = short_geodesic_lower_bound(cos_field());
  EXPECT_TRUE(lb.swapped);
  EXPECT_EQ(lb.geodesic.direction, GeodesicDirection::make(0, 1));
  EXPECT_NEAR(lb.value, 1.0, 1e-12);
}

TEST(LowerBound, SwappedGeodesicCarriesTheValue) {
  // Mass concentrated on the x-axis forces the transposition; the mapped
  // geodesic must realize the value on the original field.
  auto entries = std::vector<std::pair<FrequencyPair, Complex>>{
      {{1, 0}, {0.8, 0.3}}, {{2, 0}, {0.0, -0.7}}, {{1, 1}, {0.1, 0.05}},
      {{1, -2}, {0.2, 0.0}}};
  const auto f = SpectralField::from_entries(entries);
  const auto lb = short_geodesic_lower_bound(f);
  ASSERT_TRUE(lb.swapped);
  const double avg = quadrature_average(
      f, lb.geodesic, minimal_quadrature_nodes(f, lb.geodesic.direction));
  EXPECT_NEAR(std::abs(avg), lb.value, 1e-12);
}

TEST(LowerBound, Chain) {
  for (const auto& f : testing::ensemble()) {
    const auto lb = short_geodesic_lower_bound(f);
    const auto best = find_extremal(f, search_bound(f, 2, 1.0), false);
    EXPECT_GE(best.value, lb.value - 1e-12);

    double heaviest = 0.0;
    for (const auto& dir : covering_family(f).directions) {
      heaviest = std::max(heaviest, line_mass(line_spectrum(f, dir)));
    }
    EXPECT_NEAR(lb.line_mass, heaviest, 1e-15);
    EXPECT_GE(lb.value, std::sqrt(heaviest) - 1e-9);
  }
}

TEST(CoveringFamily, ExcludesOneAxis) {
  const auto plain = covering_family(preset_sine(1));
  EXPECT_FALSE(plain.swapped);
  for (const auto& d : plain.directions) EXPECT_NE(d, GeodesicDirection::make(0, 1));
  EXPECT_NEAR(plain.n, 2.0 * kPi * std::sqrt(2.0), 1e-12);

  const auto swapped = covering_family(cos_field());
  EXPECT_TRUE(swapped.swapped);
  for (const auto& d : swapped.directions) EXPECT_NE(d, GeodesicDirection::make(1, 0));
  // Same count either way: all directions of length <= 2N but one.
  EXPECT_EQ(swapped.directions.size() + 1, enumerate_directions(2.0 * swapped.n).size());
}

}  // namespace
}  // namespace geomax
