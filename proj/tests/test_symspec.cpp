#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "speclim/btsphere.hpp"
#include "speclim/random.hpp"
#include "speclim/symspec.hpp"

using namespace speclim;

namespace {

SymmetricMatrix random_symmetric(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a.set(i, j, rng.uniform(-1.0, 1.0));
  return a;
}

std::vector<double> random_unit(std::size_t n, SplitMix64& rng) {
  std::vector<double> u(n);
  double r = 0.0;
  for (auto& v : u) {
    v = rng.gaussian();
    r += v * v;
  }
  for (auto& v : u) v /= std::sqrt(r);
  return u;
}

double residual(const SymmetricMatrix& a, const EigenDecomposition& e, std::size_t k) {
  const auto v = e.vectors.column(k);
  const auto av = speclim::apply(a, v);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += (av[i] - e.values[k] * v[i]) * (av[i] - e.values[k] * v[i]);
  return std::sqrt(s);
}

}  // namespace

TEST(SymmetricMatrix, RejectsAsymmetricEntriesAndEmptyDimension) {
  const std::vector<double> bad{1.0, 2.0, 2.0000001, 1.0};
  EXPECT_THROW(SymmetricMatrix::from_entries(2, bad), DomainError);
  EXPECT_THROW(SymmetricMatrix(0), DimensionError);
  const std::vector<double> good{1.0, 2.0, 2.0, 1.0};
  EXPECT_EQ(SymmetricMatrix::from_entries(2, good)(1, 0), 2.0);
}

TEST(Eigh, DiagonalInput) {
  const std::vector<double> d{3.0, 1.0, 2.0};
  const auto e = eigh(SymmetricMatrix::diagonal(d));
  EXPECT_EQ(e.values, (std::vector<double>{1.0, 2.0, 3.0}));
}

TEST(Eigh, SwapMatrix) {
  const std::vector<double> s{0.0, 1.0, 1.0, 0.0};
  const auto e = eigh(SymmetricMatrix::from_entries(2, s));
  EXPECT_NEAR(e.values[0], -1.0, 1e-15);
  EXPECT_NEAR(e.values[1], 1.0, 1e-15);
}

TEST(Eigh, RandomResidualsAndOrthogonality) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto a = random_symmetric(8, seed);
    const auto e = eigh(a);
    const double scale = operator_norm(a);
    for (std::size_t k = 0; k < 8; ++k) EXPECT_LE(residual(a, e, k), 1e-10 * scale);
    const Matrix qtq = multiply(e.vectors.transposed(), e.vectors);
    Matrix id = Matrix::identity(8);
    id -= qtq;
    EXPECT_LE(id.max_abs(), 1e-12);
    EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
  }
}

TEST(Eigh, LargerMatrixResidualBound) {
  const std::size_t n = 60;
  const auto a = random_symmetric(n, 99);
  const auto e = eigh(a);
  const double scale = operator_norm(a);
  for (std::size_t k = 0; k < n; ++k) EXPECT_LE(residual(a, e, k), 1e-10 * scale * n);
}

TEST(Eigh, SignNormalizationAndDeterminism) {
  const auto a = random_symmetric(12, 5);
  const auto e1 = eigh(a);
  const auto e2 = eigh(a);
  EXPECT_EQ(e1.values, e2.values);
  for (std::size_t k = 0; k < 12; ++k) {
    const auto v = e1.vectors.column(k);
    const auto lead = std::find_if(v.begin(), v.end(), [](double x) { return std::abs(x) > 1e-12; });
    ASSERT_NE(lead, v.end());
    EXPECT_GT(*lead, 0.0);
    EXPECT_EQ(v, e2.vectors.column(k));
  }
}

TEST(Eigh, ReducibleMatrixMatchesPermutedDenseSolve) {
  // two interleaved blocks {0,2,4} and {1,3}
  SymmetricMatrix a(5);
  a.set(0, 0, 2.0);
  a.set(0, 2, 1.0);
  a.set(2, 4, -0.5);
  a.set(4, 4, 1.0);
  a.set(1, 1, -1.0);
  a.set(1, 3, 3.0);
  a.set(3, 3, 0.5);
  EXPECT_EQ(connected_blocks(a).size(), 2u);
  const auto e = eigh(a);
  // eigenvalues of the 2x2 block by the quadratic formula
  const double tr = -0.5;
  const double det = -0.5 - 9.0;
  const double disc = std::sqrt(tr * tr - 4.0 * det);
  std::vector<double> expected{(tr - disc) / 2.0, (tr + disc) / 2.0};
  // 3x3 block: check through the characteristic polynomial
  for (double v : e.values) {
    const double p3 = (2.0 - v) * ((0.0 - v) * (1.0 - v) - 0.25) - 1.0 * (1.0 * (1.0 - v));
    const double p2 = (-1.0 - v) * (0.5 - v) - 9.0;
    EXPECT_LE(std::min(std::abs(p3), std::abs(p2)), 1e-12);
  }
  EXPECT_NEAR(e.values.front(), expected[0], 1e-12);
}

TEST(Eigh, ConvergenceErrorCarriesBlockIndex) {
  std::vector<double> d{1.0, 2.0, 3.0};
  std::vector<double> e{0.0, 1.0, 1.0};
  std::vector<double> z;
  try {
    detail::implicit_ql(d, e, z, 3, false, kDefaultDeflation, 0, 7);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& err) {
    EXPECT_EQ(err.block(), 7u);
  }
}

TEST(Eigh, RejectsNonpositiveTolerance) {
  EXPECT_THROW(eigh(SymmetricMatrix::identity(2), 0.0), DomainError);
}

TEST(Eigh, TridiagonalValuesMatchDenseSolve) {
  std::vector<double> diag{1.0, -2.0, 0.5, 3.0, 0.0};
  std::vector<double> sub{0.3, -1.0, 2.0, 0.7};
  SymmetricMatrix a(5);
  for (std::size_t i = 0; i < 5; ++i) {
    a.set(i, i, diag[i]);
    if (i < 4) a.set(i, i + 1, sub[i]);
  }
  const auto dense = eigh(a).values;
  const auto tri = eigvalsh_tridiagonal(diag, sub);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(dense[i], tri[i], 1e-13);
}

TEST(LambdaExtremes, DiagonalAndToeplitzZ) {
  const std::vector<double> d{0.5, 0.0, -0.5};
  const auto ex = lambda_extremes(SymmetricMatrix::diagonal(d));
  EXPECT_EQ(ex.min, -0.5);
  EXPECT_EQ(ex.max, 0.5);
  // T_4(z) from the rational integral oracle, not the spin formula
  const auto oracle = toeplitz_oracle(4, parse_polynomial("z")).to_double();
  EXPECT_NEAR(lambda_max(oracle.re), 2.0 / 3.0, 1e-15);
}

TEST(LambdaExtremes, RayleighBoundAndAttainment) {
  const auto a = random_symmetric(10, 3);
  const auto e = eigh(a);
  SplitMix64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    const auto u = random_unit(10, rng);
    const double q = rayleigh_quotient(a, u);
    EXPECT_LE(q, e.values.back() + 1e-12);
    EXPECT_GE(q, e.values.front() - 1e-12);
  }
  EXPECT_NEAR(rayleigh_quotient(a, e.vectors.column(9)), e.values.back(), 1e-10);
  EXPECT_NEAR(rayleigh_quotient(a, e.vectors.column(0)), e.values.front(), 1e-10);
}

TEST(OperatorNorm, Examples) {
  EXPECT_EQ(operator_norm(SymmetricMatrix(4)), 0.0);
  const std::vector<double> d{-3.0, 2.0};
  EXPECT_EQ(operator_norm(SymmetricMatrix::diagonal(d)), 3.0);
  const auto oracle = toeplitz_oracle(10, parse_polynomial("z")).to_double();
  EXPECT_NEAR(operator_norm(oracle.re), 10.0 / 12.0, 1e-15);
}

TEST(OperatorNorm, SampledRayleighNeverExceedsNorm) {
  const auto a = random_symmetric(6, 17);
  const double nrm = operator_norm(a);
  const auto ex = lambda_extremes(a);
  EXPECT_EQ(nrm, std::max(std::abs(ex.min), std::abs(ex.max)));
  SplitMix64 rng(4);
  double best = 0.0;
  for (int t = 0; t < 20000; ++t) best = std::max(best, std::abs(rayleigh_quotient(a, random_unit(6, rng))));
  EXPECT_LE(best, nrm + 1e-12);
  EXPECT_GT(best, 0.9 * nrm);
}

TEST(Trace, SumOfEigenvalues) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto a = random_symmetric(15, seed);
    const auto v = eigvalsh(a);
    double s = 0.0;
    for (double x : v) s += x;
    EXPECT_NEAR(s, a.trace(), 1e-10 * 15 * operator_norm(a));
  }
}

TEST(CommutatorNorm, Examples) {
  const std::vector<double> d1{1.0, 2.0, 3.0};
  const std::vector<double> d2{-1.0, 0.0, 5.0};
  EXPECT_EQ(commutator_norm(SymmetricMatrix::diagonal(d1), SymmetricMatrix::diagonal(d2)), 0.0);
  const auto a = random_symmetric(7, 2);
  EXPECT_EQ(commutator_norm(a, a), 0.0);
  EXPECT_THROW(commutator_norm(a, SymmetricMatrix(3)), DimensionError);
  const auto fam = coupled_momenta(1, 2, 4);
  EXPECT_LE(commutator_norm(fam.op(0), fam.op(1)), 1e-12 * operator_norm(fam.op(1)));
}

TEST(CommutatorNorm, PauliPair) {
  // [sx, sz] = -2i sy, norm 2
  const std::vector<double> x{0.0, 1.0, 1.0, 0.0};
  const std::vector<double> z{1.0, 0.0, 0.0, -1.0};
  EXPECT_NEAR(commutator_norm(SymmetricMatrix::from_entries(2, x), SymmetricMatrix::from_entries(2, z)), 2.0,
              1e-15);
}

TEST(HermitianEmbed, RealInputDuplicatesSpectrum) {
  const auto a = random_symmetric(5, 8);
  const auto v = eigvalsh(a);
  const auto w = eigvalsh(hermitian_embed(a, AntisymmetricMatrix(5)));
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(w[2 * i], v[i], 1e-13);
    EXPECT_NEAR(w[2 * i + 1], v[i], 1e-13);
  }
}

TEST(HermitianEmbed, PauliY) {
  AntisymmetricMatrix im(2);
  im.set(0, 1, -1.0);  // [[0, -i], [i, 0]]
  const auto w = eigvalsh(hermitian_embed(SymmetricMatrix(2), im));
  const std::vector<double> expected{-1.0, -1.0, 1.0, 1.0};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(w[i], expected[i], 1e-15);
}

TEST(HermitianEmbed, SpinY) {
  const auto y = toeplitz_coordinate(2, Axis::y);
  const auto w = eigvalsh(y.realified());
  const std::vector<double> expected{-0.5, -0.5, 0.0, 0.0, 0.5, 0.5};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(w[i], expected[i], 1e-15);
}

TEST(HermitianEmbed, DoublesEveryMultiplicity) {
  SplitMix64 rng(21);
  SymmetricMatrix re(6);
  AntisymmetricMatrix im(6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i; j < 6; ++j) {
      re.set(i, j, rng.uniform(-1, 1));
      if (j > i) im.set(i, j, rng.uniform(-1, 1));
    }
  const auto w = eigvalsh(hermitian_embed(re, im));
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(w[2 * i], w[2 * i + 1], 1e-12);
  EXPECT_THROW(hermitian_embed(re, AntisymmetricMatrix(3)), DimensionError);
}

TEST(AntisymmetricMatrix, RejectsDiagonal) {
  AntisymmetricMatrix a(3);
  EXPECT_THROW(a.set(1, 1, 1.0), DomainError);
  a.set(0, 2, 4.0);
  EXPECT_EQ(a(2, 0), -4.0);
}
