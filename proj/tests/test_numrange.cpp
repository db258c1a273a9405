#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "speclim/btsphere.hpp"
#include "speclim/numrange.hpp"

using namespace speclim;

namespace {

std::vector<SymmetricMatrix> spin_pair(int m) {
  // x and z: both real, not commuting
  return {toeplitz_coordinate(m, Axis::x).re, toeplitz_coordinate(m, Axis::z).re};
}

}  // namespace

TEST(Expectation, Examples) {
  const std::vector<double> d{1.0, -1.0};
  const std::vector<SymmetricMatrix> fam{SymmetricMatrix::diagonal(d)};
  EXPECT_EQ(expectation(fam, MixedState::pure({1.0, 0.0}))[0], 1.0);
  EXPECT_EQ(expectation(fam, MixedState::maximally_mixed(2))[0], 0.0);
  const double s = std::sqrt(0.5);
  EXPECT_NEAR(expectation(fam, MixedState::pure({s, s}))[0], 0.0, 1e-16);
  const MixedState q({0.25, 0.75}, {{1.0, 0.0}, {0.0, 1.0}});
  EXPECT_DOUBLE_EQ(expectation(fam, q)[0], -0.5);
  EXPECT_THROW(expectation(fam, MixedState::maximally_mixed(3)), DimensionError);
}

TEST(MixedState, Validation) {
  EXPECT_THROW(MixedState({0.5, 0.6}, {{1.0, 0.0}, {0.0, 1.0}}), DomainError);
  EXPECT_THROW(MixedState({1.5, -0.5}, {{1.0, 0.0}, {0.0, 1.0}}), DomainError);
  EXPECT_THROW(MixedState({0.5, 0.5}, {{1.0, 0.0}, {1.0, 0.0}}), DomainError);
  EXPECT_THROW(MixedState({1.0}, {{2.0, 0.0}}), DomainError);
  EXPECT_THROW(MixedState({0.5, 0.5}, {{1.0, 0.0}, {0.0, 1.0, 0.0}}), DimensionError);
  EXPECT_THROW(MixedState({1.0}, {}), DimensionError);
}

TEST(SampleNumericalRange, OneDimensionalSpace) {
  const std::vector<double> a{3.0};
  const std::vector<double> b{-2.0};
  const auto cloud = sample_numerical_range({SymmetricMatrix::diagonal(a), SymmetricMatrix::diagonal(b)}, 5, 1);
  ASSERT_EQ(cloud.size(), 5u);
  for (const auto& p : cloud.points()) EXPECT_EQ(p, (Point{3.0, -2.0}));
}

TEST(SampleNumericalRange, CommutingSamplesStayInHull) {
  const auto fam = coupled_momenta(1, 2, 2);
  const auto cloud = sample_numerical_range(fam.ops(), 2000, 5);
  const auto hull = hull_via_support(fam, 360);
  EXPECT_LE(containment_violation(cloud, hull), 1e-12);
}

TEST(SampleNumericalRange, UnitVectorsAndDeterminism) {
  for (std::uint64_t i = 0; i < 50; ++i) EXPECT_NEAR(norm(random_unit_vector(7, 3, i)), 1.0, 1e-15);
  EXPECT_EQ(random_unit_vector(7, 3, 11), random_unit_vector(7, 3, 11));
  EXPECT_NE(random_unit_vector(7, 3, 11), random_unit_vector(7, 3, 12));
  EXPECT_NE(random_unit_vector(7, 3, 11), random_unit_vector(7, 4, 11));
}

TEST(SampleNumericalRange, ThreadCountDoesNotChangeSamples) {
  const auto fam = spin_pair(6);
  const auto one = sample_numerical_range(fam, 500, 9, 1);
  const auto three = sample_numerical_range(fam, 500, 9, 3);
  EXPECT_EQ(one.points(), three.points());
}

TEST(Sigma, SpinPairSmallLevel) {
  // m = 1: ||alpha_x X + alpha_z Z|| = |alpha| / 3 for every direction
  const auto s = sigma_region(spin_pair(1), 360);
  for (double v : s.values) EXPECT_NEAR(v, 1.0 / 3.0, 1e-14);
  const auto cloud = sample_numerical_range(spin_pair(1), 1000, 2);
  for (const auto& p : cloud.points()) EXPECT_LE(std::hypot(p[0], p[1]), 1.0 / 3.0 + 1e-14);
}

TEST(Sigma, SpinPairIsRotationInvariantDisk) {
  const int m = 4;
  const auto s = sigma_region(spin_pair(m), 360);
  const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
  EXPECT_NEAR(*lo, 4.0 / 6.0, 1e-12);
  EXPECT_LE(*hi - *lo, 1e-10);
  const auto disk = unit_disk_region().sample(s.directions);
  for (int mm : {2, 8, 16}) EXPECT_NEAR(hausdorff_convex(sigma_region(spin_pair(mm), 360), disk), 2.0 / (mm + 2), 1e-12);
}

TEST(Sigma, EqualsJointSpectrumHullForCommutingFamily) {
  const auto fam = coupled_momenta(1, 2, 4);
  const auto dirs = unit_directions(2, 720);
  const auto a = sigma_region(fam.ops(), dirs);
  const auto b = sample_support(joint_spectrum(fam), dirs);
  EXPECT_LE(hausdorff_convex(a, b), 1e-9);
  for (std::size_t k = 0; k < dirs.size(); k += 90) EXPECT_DOUBLE_EQ(a.values[k], sigma_support(fam.ops(), dirs[k]));
  EXPECT_THROW(sigma_support(fam.ops(), std::vector<double>{1.0}), DimensionError);
}

TEST(Sigma, ContainsPureAndMixedSamples) {
  const auto fam = spin_pair(5);
  const auto sigma = sigma_region(fam, 720);
  const auto pure = sample_numerical_range(fam, 3000, 13);
  EXPECT_LE(containment_violation(pure, sigma), 1e-12);
  // mixed states land in the hull of pure samples drawn from their own vectors
  const auto u = random_unit_vector(6, 1, 0);
  std::vector<double> v(6, 0.0);
  v[0] = -u[1];
  v[1] = u[0];
  const double r = norm(v);
  for (auto& x : v) x /= r;
  const MixedState q({0.3, 0.7}, {u, v});
  const auto p = expectation(fam, q);
  const auto pu = expectation(fam, MixedState::pure(u));
  const auto pv = expectation(fam, MixedState::pure(v));
  for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(p[j], 0.3 * pu[j] + 0.7 * pv[j], 1e-15);
  SpectrumCloud mixed(2);
  mixed.add(p);
  EXPECT_LE(containment_violation(mixed, sigma), 1e-12);
}

TEST(Sigma, MaximallyMixedIsTraceAverage) {
  const auto fam = spin_pair(3);
  const auto p = expectation(fam, MixedState::maximally_mixed(4));
  EXPECT_NEAR(p[0], 0.0, 1e-16);
  EXPECT_NEAR(p[1], 0.0, 1e-16);
}

TEST(ContainmentViolation, DetectsOutsidePoint) {
  const auto disk = unit_disk_region().sample(unit_directions(2, 360));
  SpectrumCloud c(2);
  c.add({0.5, 0.0});
  EXPECT_NEAR(containment_violation(c, disk), -0.5, 1e-15);
  c.add({0.0, 1.25});
  EXPECT_NEAR(containment_violation(c, disk), 0.25, 1e-15);
  EXPECT_TRUE(unit_disk_region().contains(Point{0.6, 0.8}));
  EXPECT_FALSE(unit_disk_region().contains(Point{0.6, 0.81}));
}
