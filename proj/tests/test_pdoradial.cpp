#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "speclim/pdoradial.hpp"
#include "speclim/random.hpp"

using namespace speclim;

namespace {

// max over a fine r grid; independent of the golden-section search
double g_on_grid(const RadialPotential& pot, double z, double r_max, int n) {
  double best = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double r = r_max * i / n;
    best = std::max(best, r * z - r * pot.V(r));
  }
  return best;
}

double ground_state(const RadialPotential& pot, double hbar, int l, const RadialGrid& grid) {
  auto t = radial_tridiagonal(pot, hbar, l, grid);
  return eigvalsh_tridiagonal(std::move(t.diag), t.sub).front();
}

}  // namespace

TEST(LegendreG, ClosedForms) {
  const auto lin = RadialPotential::linear();
  EXPECT_NEAR(legendre_g(lin, 2.0), 1.0, 1e-12);
  EXPECT_EQ(legendre_g(lin, 0.0), 0.0);
  const auto quad = RadialPotential::quadratic();
  EXPECT_NEAR(legendre_g(quad, 3.0), 2.0, 1e-12);
  for (double z : {0.1, 0.7, 2.5, 9.0}) {
    EXPECT_NEAR(legendre_g(lin, z), (*lin.g_exact)(z), 1e-12 * std::max(1.0, z * z));
    EXPECT_NEAR(legendre_g(quad, z), (*quad.g_exact)(z), 1e-12 * std::max(1.0, z * z));
  }
  EXPECT_THROW(legendre_g(lin, -1.0), DomainError);
}

TEST(LegendreG, MatchesGridMaximum) {
  const auto lq = RadialPotential::linear_quadratic();
  for (double z : {0.5, 1.0, 2.0, 4.0}) EXPECT_NEAR(legendre_g(lq, z), g_on_grid(lq, z, 2.0, 200000), 1e-9);
}

TEST(LegendreG, ConvexWithConcaveRoot) {
  SplitMix64 rng(21);
  for (const auto& pot : {RadialPotential::linear(), RadialPotential::quadratic(), RadialPotential::linear_quadratic()}) {
    for (int i = 0; i < 1000; ++i) {
      const double a = rng.uniform(0, 6);
      const double b = rng.uniform(0, 6);
      const double ga = legendre_g(pot, a);
      const double gb = legendre_g(pot, b);
      const double gm = legendre_g(pot, 0.5 * (a + b));
      EXPECT_LE(gm, 0.5 * (ga + gb) + 1e-12);
      EXPECT_GE(std::sqrt(gm), 0.5 * (std::sqrt(ga) + std::sqrt(gb)) - 1e-9);
    }
  }
}

TEST(RadialPotential, AdmissibilityAndNames) {
  EXPECT_TRUE(RadialPotential::linear().admissible());
  EXPECT_TRUE(RadialPotential::quadratic().admissible());
  EXPECT_TRUE(RadialPotential::linear_quadratic().admissible());
  RadialPotential shifted{"1+r", [](double r) { return 1.0 + r; }, [](double) { return 1.0; }, std::nullopt};
  EXPECT_FALSE(shifted.admissible());
  RadialPotential concave{"sqrt", [](double r) { return std::sqrt(r); },
                          [](double r) { return 0.5 / std::sqrt(r); }, std::nullopt};
  EXPECT_FALSE(concave.admissible());
  EXPECT_EQ(RadialPotential::by_name("harmonic").name, "r");
  EXPECT_EQ(RadialPotential::by_name("r+r^2").name, "r+r^2");
  EXPECT_THROW(RadialPotential::by_name("r^3"), DomainError);
}

TEST(ClassicalRegionRot, LinearPotentialCone) {
  const auto r = classical_region_rot(RadialPotential::linear(), 2.0);
  EXPECT_TRUE(r.contains(Point{0.0, 0.0}));
  EXPECT_TRUE(r.contains(Point{2.0, std::numbers::sqrt2}));
  EXPECT_FALSE(r.contains(Point{2.0, std::numbers::sqrt2 + 1e-6}));
  EXPECT_FALSE(r.contains(Point{1.0, 0.8}));
  EXPECT_TRUE(r.contains(Point{1.0, -0.7}));
  EXPECT_FALSE(r.contains(Point{2.1, 0.0}));
  EXPECT_FALSE(r.contains(Point{-0.1, 0.0}));
  const std::vector<double> left{-1.0, 0.0};
  EXPECT_NEAR(r.support(left), 0.0, 1e-12);  // the origin is a boundary point
  EXPECT_THROW(classical_region_rot(RadialPotential::linear(), 0.0), DomainError);
}

TEST(ClassicalRegionRot, MidpointConvexity) {
  const auto r = classical_region_rot(RadialPotential::linear_quadratic(), 2.0);
  SplitMix64 rng(4);
  std::vector<Point> members;
  while (members.size() < 2000) {
    Point p{rng.uniform(0, 2), rng.uniform(-1.5, 1.5)};
    if (r.contains(p)) members.push_back(p);
  }
  for (std::size_t i = 0; i < 1000; ++i) {
    const auto& p = members[2 * i];
    const auto& q = members[2 * i + 1];
    EXPECT_TRUE(r.contains(Point{(p[0] + q[0]) / 2, (p[1] + q[1]) / 2}));
  }
}

TEST(ClassicalRegionRot, SupportMatchesDenseBoundary) {
  for (const auto& pot : {RadialPotential::linear(), RadialPotential::linear_quadratic()}) {
    const auto r = classical_region_rot(pot, 2.0);
    const auto boundary = r.boundary_samples(20000);
    for (const auto& a : unit_directions(2, 90)) {
      double best = -INFINITY;
      for (const auto& p : boundary) best = std::max(best, dot(p, a));
      EXPECT_NEAR(r.support(a), best, 1e-6) << pot.name;
      EXPECT_GE(r.support(a), best - 1e-12);
    }
  }
}

TEST(RadialOperator, GroundStateAndSecondOrderConvergence) {
  const auto lin = RadialPotential::linear();
  const double hbar = 0.25;
  const double exact = std::numbers::sqrt2 * hbar;
  EXPECT_NEAR(ground_state(lin, hbar, 0, {12.0, 2400}), exact, 1e-4);
  std::vector<double> errs;
  for (std::size_t n : {200u, 400u, 800u}) errs.push_back(std::abs(ground_state(lin, hbar, 0, {8.0, n}) - exact));
  for (std::size_t i = 1; i < errs.size(); ++i) {
    EXPECT_GT(errs[i - 1] / errs[i], 3.0);
    EXPECT_LT(errs[i - 1] / errs[i], 5.0);
  }
}

TEST(RadialOperator, SectorSymmetryAndGuards) {
  const auto pot = RadialPotential::linear_quadratic();
  const RadialGrid grid{6.0, 300};
  EXPECT_EQ(radial_hamiltonian(pot, 0.3, 2, grid), radial_hamiltonian(pot, 0.3, -2, grid));
  EXPECT_THROW(radial_hamiltonian(pot, 0.3, 0, {6.0, 15}), DomainError);
  EXPECT_THROW(radial_hamiltonian(pot, 0.0, 0, grid), DomainError);
  const auto t = radial_tridiagonal(pot, 0.3, 1, grid);
  EXPECT_EQ(t.sub.size(), 299u);
  for (double s : t.sub) EXPECT_LT(s, 0.0);
}

TEST(JointSpectrumRot, HarmonicOscillatorOracle) {
  const double hbar = 0.25;
  const double e_max = 2.0;
  const auto cloud = joint_spectrum_rot(RadialPotential::linear(), hbar, e_max, {12.0, 2400});
  const auto oracle = harmonic_oracle(hbar, e_max);
  ASSERT_EQ(cloud.size(), oracle.size());
  // both are ordered by l, then E
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    EXPECT_NEAR(cloud.points()[i][0], oracle.points()[i][0], 1e-4);
    EXPECT_DOUBLE_EQ(cloud.points()[i][1], oracle.points()[i][1]);
  }
}

TEST(JointSpectrumRot, PointsLieInRegionUpToHbar) {
  for (double hbar : {0.4, 0.2}) {
    const auto pot = RadialPotential::linear_quadratic();
    const auto cloud = joint_spectrum_rot(pot, hbar, 2.0, {12.0, 1200});
    ASSERT_FALSE(cloud.empty());
    for (const auto& p : cloud.points()) {
      EXPECT_LE(p[0], 2.0);
      EXPECT_LE(std::abs(p[1]), std::sqrt(2.0 * legendre_g(pot, p[0])) + 2.0 * hbar);
    }
  }
}

TEST(JointSpectrumRot, EmptyWindowAndWall) {
  const auto lin = RadialPotential::linear();
  EXPECT_TRUE(joint_spectrum_rot(lin, 0.5, 0.5, {12.0, 400}).empty());  // ground state sqrt2/2 > 0.5
  EXPECT_THROW(joint_spectrum_rot(lin, 0.5, 200.0, {12.0, 400}), DomainError);
  EXPECT_THROW(windowed_hausdorff(SpectrumCloud(2), lin, 1.0, unit_directions(2, 8)), DomainError);
}

TEST(HarmonicOracle, Counts) {
  const double hbar = 0.1;
  for (int n_top : {0, 3, 9}) {
    // E_max just above the level n_top
    const double e_max = std::numbers::sqrt2 * hbar * (n_top + 1.5);
    EXPECT_EQ(harmonic_oracle(hbar, e_max).size(), static_cast<std::size_t>((n_top + 1) * (n_top + 2) / 2));
  }
  EXPECT_THROW(harmonic_oracle(0.0, 1.0), DomainError);
}

TEST(WindowedHausdorff, HalvesWithHbar) {
  const auto dirs = unit_directions(2, 720);
  for (const auto& pot : {RadialPotential::linear(), RadialPotential::linear_quadratic()}) {
    std::vector<double> d;
    for (double hbar : {0.4, 0.2, 0.1})
      d.push_back(windowed_hausdorff(joint_spectrum_rot(pot, hbar, 2.0, {12.0, 2400}), pot, 2.0, dirs));
    for (std::size_t i = 1; i < d.size(); ++i) {
      EXPECT_GE(d[i] / d[i - 1], 0.35) << pot.name;
      EXPECT_LE(d[i] / d[i - 1], 0.65) << pot.name;
    }
  }
}
