#pragma once

// Berezin-Toeplitz quantization of the round sphere and of products of spheres.
//
// The Hilbert space at level m is the (m+1)-dimensional space of
// holomorphic sections of O(m) on CP^1, with orthonormal basis built from
// the monomials W^k, k = 0..m, in the affine coordinate W. The sphere point
// attached to W is
//   (2 Re W, 2 Im W, 1 - |W|^2) / (1 + |W|^2),
// so W = 0 is the north pole and z decreases along the basis index.
//
// Two independent constructions are provided:
//   * spin matrices (closed form, fast): T_m(coordinate) = 2 S / (m + 2) up
//     to the orientation of the y axis fixed by the complex structure;
//   * an exact oracle reducing every matrix element of a polynomial symbol
//     to integrals  int_0^inf t^p (1 + t)^-q dt = p! (q-p-2)! / (q-1)!.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "speclim/error.hpp"
#include "speclim/fit.hpp"
#include "speclim/jointspec.hpp"
#include "speclim/polynomial.hpp"
#include "speclim/region.hpp"
#include "speclim/symspec.hpp"

namespace speclim {

enum class Axis { x = 0, y = 1, z = 2 };

inline const char* axis_name(Axis a) {
  switch (a) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
  }
  return "?";
}

/// Complex Hermitian matrix re + i*im.
struct HermitianMatrix {
  SymmetricMatrix re;
  AntisymmetricMatrix im;

  explicit HermitianMatrix(std::size_t n) : re(n), im(n) {}
  HermitianMatrix(SymmetricMatrix r, AntisymmetricMatrix i) : re(std::move(r)), im(std::move(i)) {
    if (re.size() != im.size()) throw DimensionError("HermitianMatrix: parts differ in size");
  }

  std::size_t size() const noexcept { return re.size(); }
  bool is_real() const { return im.is_zero(); }

  /// The 2n x 2n real symmetric form; same spectrum, multiplicities doubled.
  SymmetricMatrix realified() const { return hermitian_embed(re, im); }

  /// Eigenvalues (each once), ascending.
  std::vector<double> eigenvalues() const {
    if (is_real()) return eigvalsh(re);
    const auto doubled = eigvalsh(realified());
    std::vector<double> v;
    for (std::size_t k = 0; k < doubled.size(); k += 2) v.push_back(0.5 * (doubled[k] + doubled[k + 1]));
    return v;
  }

  double norm() const {
    const auto v = is_real() ? eigvalsh(re) : eigvalsh(realified());
    return std::max(std::abs(v.front()), std::abs(v.back()));
  }
};

/// Quantization level and amplitude of a sphere factor (S^2, a*sigma).
/// 2*a*m must be a positive integer; it is the matrix dimension minus one.
struct ToeplitzParams {
  int m;
  double a;

  int level() const {
    const double n = 2.0 * a * m;
    const double r = std::round(n);
    if (m < 1 || !(a > 0.0) || std::abs(n - r) > 1e-9 || r < 1.0)
      throw DomainError("ToeplitzParams: 2*a*m must be a positive integer (a=" + std::to_string(a) +
                        ", m=" + std::to_string(m) + ")");
    return static_cast<int>(r);
  }
};

/// factor * (2 S_axis) for spin n/2 in the basis above: diagonal (n - 2k)
/// for z, off-diagonal sqrt((k+1)(n-k)) for x, and for y the imaginary
/// part +sqrt((k+1)(n-k)) at (k, k+1).
inline HermitianMatrix spin_coordinate(int n, Axis axis, double factor) {
  if (n < 1) throw DomainError("spin_coordinate: level must be at least 1");
  const auto dim = static_cast<std::size_t>(n) + 1;
  HermitianMatrix h(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    if (axis == Axis::z) h.re.set(k, k, factor * static_cast<double>(n - 2 * static_cast<int>(k)));
    if (k + 1 < dim) {
      const double c = factor * std::sqrt(static_cast<double>((k + 1) * (static_cast<std::size_t>(n) - k)));
      if (axis == Axis::x) h.re.set(k, k + 1, c);
      if (axis == Axis::y) h.im.set(k, k + 1, c);
    }
  }
  return h;
}

/// Toeplitz matrix of a coordinate function on (S^2, sigma/2) at level m.
inline HermitianMatrix toeplitz_coordinate(int m, Axis axis) {
  if (m < 1) throw DomainError("toeplitz_coordinate: m must be at least 1");
  return spin_coordinate(m, axis, 1.0 / static_cast<double>(m + 2));
}

/// Quantization of (S^2, a*sigma) at level m, which is level 2am of the base sphere.
inline HermitianMatrix scaled_quantization(double a, int m, Axis axis) {
  return toeplitz_coordinate(ToeplitzParams{m, a}.level(), axis);
}

// ---------------------------------------------------------------------------
// Exact oracle

namespace detail {

// Calls visit(P, Q, r, deg, re, im) for every expanded term
//   coef * W^P * conj(W)^Q * t^r / (1 + t)^deg,   t = |W|^2,
// of the polynomial f written in the affine coordinate.
template <class Visit>
void expand_in_affine_coordinate(const Polynomial& f, Visit&& visit) {
  auto binom = [](int n, int k) {
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  for (const auto& [mono, kappa] : f.terms()) {
    const int a = mono[0];
    const int b = mono[1];
    const int c = mono[2];
    // (-i)^b
    static constexpr int unit_re[4] = {1, 0, -1, 0};
    static constexpr int unit_im[4] = {0, -1, 0, 1};
    const int ur = unit_re[b % 4];
    const int ui = unit_im[b % 4];
    for (int p1 = 0; p1 <= a; ++p1) {
      for (int p2 = 0; p2 <= b; ++p2) {
        for (int r = 0; r <= c; ++r) {
          Rational w = kappa * Rational(binom(a, p1) * binom(b, p2) * binom(c, r));
          if ((b - p2 + r) % 2 != 0) w = -w;
          const int hol = p1 + p2;
          visit(hol, a + b - hol, r, a + b + c, w * ur, w * ui);
        }
      }
    }
  }
}

}  // namespace detail

/// Exact Toeplitz matrix of a polynomial symbol in the monomial basis:
/// A(k, j) = <f W^j, W^k> (Gaussian rationals, common factor pi dropped)
/// and the Gram diagonal g_j = <W^j, W^j>. The orthonormal-basis matrix is
/// A(k, j) / sqrt(g_j g_k).
struct ExactToeplitz {
  int m = 0;
  std::vector<Rational> gram;
  std::vector<Rational> re;  // row-major (m+1)^2
  std::vector<Rational> im;

  std::size_t dim() const { return static_cast<std::size_t>(m) + 1; }
  const Rational& a_re(std::size_t k, std::size_t j) const { return re[k * dim() + j]; }
  const Rational& a_im(std::size_t k, std::size_t j) const { return im[k * dim() + j]; }

  /// |M(k, j)|^2 in the orthonormal basis; always rational.
  Rational squared_modulus(std::size_t k, std::size_t j) const {
    return (a_re(k, j) * a_re(k, j) + a_im(k, j) * a_im(k, j)) / (gram[j] * gram[k]);
  }

  /// Diagonal entry in the orthonormal basis; rational.
  Rational diagonal(std::size_t j) const { return a_re(j, j) / gram[j]; }

  HermitianMatrix to_double() const {
    const std::size_t n = dim();
    HermitianMatrix h(n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = k; j < n; ++j) {
        const double s = std::sqrt(static_cast<double>(gram[j]) * static_cast<double>(gram[k]));
        h.re.set(k, j, static_cast<double>(a_re(k, j)) / s);
        if (j != k) h.im.set(k, j, static_cast<double>(a_im(k, j)) / s);
      }
    }
    return h;
  }
};

inline constexpr int kOracleMaxDegree = 4;

/// Exact rational Toeplitz matrix of f (degree <= 4) at level m.
inline ExactToeplitz toeplitz_oracle(int m, const Polynomial& f) {
  if (m < 1) throw DomainError("toeplitz_oracle: m must be at least 1");
  if (f.degree() > kOracleMaxDegree)
    throw DomainError("toeplitz_oracle: symbol degree " + std::to_string(f.degree()) + " exceeds the supported 4");
  std::vector<BigInt> fact(static_cast<std::size_t>(m) + 2 * kOracleMaxDegree + 8, 1);
  for (std::size_t i = 1; i < fact.size(); ++i) fact[i] = fact[i - 1] * static_cast<unsigned>(i);
  auto integral = [&](int p, int q) {
    return Rational(fact[static_cast<std::size_t>(p)] * fact[static_cast<std::size_t>(q - p - 2)],
                    fact[static_cast<std::size_t>(q - 1)]);
  };
  ExactToeplitz out;
  out.m = m;
  const std::size_t n = out.dim();
  out.gram.resize(n);
  out.re.assign(n * n, Rational(0));
  out.im.assign(n * n, Rational(0));
  for (int j = 0; j <= m; ++j) out.gram[static_cast<std::size_t>(j)] = integral(j, m + 2);
  detail::expand_in_affine_coordinate(f, [&](int hol, int antihol, int r, int deg, const Rational& wr,
                                             const Rational& wi) {
    for (int j = 0; j <= m; ++j) {
      const int k = hol + j - antihol;
      if (k < 0 || k > m) continue;
      const Rational v = integral(hol + j + r, m + 2 + deg);
      const auto idx = static_cast<std::size_t>(k) * n + static_cast<std::size_t>(j);
      if (wr != 0) out.re[idx] += wr * v;
      if (wi != 0) out.im[idx] += wi * v;
    }
  });
  return out;
}

/// Floating-point evaluation of the same integrals through log-gamma, for
/// levels beyond the reach of exact arithmetic. T(1) is the identity exactly.
inline HermitianMatrix toeplitz_polynomial(int m, const Polynomial& f) {
  if (m < 1) throw DomainError("toeplitz_polynomial: m must be at least 1");
  if (f.degree() > kOracleMaxDegree)
    throw DomainError("toeplitz_polynomial: symbol degree " + std::to_string(f.degree()) + " exceeds the supported 4");
  const std::size_t n = static_cast<std::size_t>(m) + 1;
  auto log_integral = [](int p, int q) {
    return std::lgamma(p + 1.0) + std::lgamma(q - p - 1.0) - std::lgamma(static_cast<double>(q));
  };
  std::vector<double> log_gram(n);
  for (int j = 0; j <= m; ++j) log_gram[static_cast<std::size_t>(j)] = log_integral(j, m + 2);
  std::vector<double> re(n * n, 0.0);
  std::vector<double> im(n * n, 0.0);
  detail::expand_in_affine_coordinate(f, [&](int hol, int antihol, int r, int deg, const Rational& wr,
                                             const Rational& wi) {
    const double dr = static_cast<double>(wr);
    const double di = static_cast<double>(wi);
    for (int j = 0; j <= m; ++j) {
      const int k = hol + j - antihol;
      if (k < 0 || k > m) continue;
      const auto jj = static_cast<std::size_t>(j);
      const auto kk = static_cast<std::size_t>(k);
      const double v = std::exp(log_integral(hol + j + r, m + 2 + deg) - 0.5 * (log_gram[jj] + log_gram[kk]));
      re[kk * n + jj] += dr * v;
      im[kk * n + jj] += di * v;
    }
  });
  HermitianMatrix h(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = k; j < n; ++j) {
      h.re.set(k, j, 0.5 * (re[k * n + j] + re[j * n + k]));
      if (j != k) h.im.set(k, j, 0.5 * (im[k * n + j] - im[j * n + k]));
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Tensor products

inline constexpr std::size_t kMaxTensorDimension = 1'000'000;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > kMaxTensorDimension || cols > kMaxTensorDimension)
    throw DomainError("tensor_product: dimension " + std::to_string(rows) + " exceeds 10^6");
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double v = a(i, j);
      if (v == 0.0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = v * b(k, l);
    }
  return out;
}

namespace detail {

inline SymmetricMatrix symmetric_part(const Matrix& m) {
  SymmetricMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) s.set(i, j, i == j ? m(i, i) : 0.5 * (m(i, j) + m(j, i)));
  return s;
}

inline AntisymmetricMatrix antisymmetric_part(const Matrix& m) {
  AntisymmetricMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) s.set(i, j, 0.5 * (m(i, j) - m(j, i)));
  return s;
}

}  // namespace detail

/// Kronecker product A (x) B.
inline SymmetricMatrix tensor_product(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  return detail::symmetric_part(kron(a.to_matrix(), b.to_matrix()));
}

/// (R1 + i I1) (x) (R2 + i I2) = R1(x)R2 - I1(x)I2 + i (R1(x)I2 + I1(x)R2).
inline HermitianMatrix tensor_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  Matrix re = kron(a.re.to_matrix(), b.re.to_matrix());
  Matrix im(re.rows(), re.cols());
  const bool a_imag = !a.is_real();
  const bool b_imag = !b.is_real();
  if (a_imag && b_imag) re -= kron(a.im.to_matrix(), b.im.to_matrix());
  if (b_imag) im = kron(a.re.to_matrix(), b.im.to_matrix());
  if (a_imag) im += kron(a.im.to_matrix(), b.re.to_matrix());
  return {detail::symmetric_part(re), detail::antisymmetric_part(im)};
}

// ---------------------------------------------------------------------------
// Coupled angular momenta on S^2 x S^2

inline constexpr std::size_t kCoupledDimensionCap = 5000;

/// (F, H) = (a1 Z1 (x) Id + Id (x) a2 Z2,  X1(x)X2 + Y1(x)Y2 + Z1(x)Z2) with
/// every coordinate scaled by gamma_j = 1 + 1/(a_j m); the scaled factor
/// 2/(2 a_j m) is formed directly, so each Z_j has top eigenvalue exactly 1.
inline CommutingFamily coupled_momenta(double a1, double a2, int m, double commute_tol = 1e-12) {
  const int n1 = ToeplitzParams{m, a1}.level();
  const int n2 = ToeplitzParams{m, a2}.level();
  const std::size_t dim = static_cast<std::size_t>(n1 + 1) * static_cast<std::size_t>(n2 + 1);
  if (dim > kCoupledDimensionCap)
    throw DomainError("coupled_momenta: dimension " + std::to_string(dim) + " exceeds the cap " +
                      std::to_string(kCoupledDimensionCap));
  const double s1 = 1.0 / n1;
  const double s2 = 1.0 / n2;
  const auto x1 = spin_coordinate(n1, Axis::x, s1);
  const auto y1 = spin_coordinate(n1, Axis::y, s1);
  const auto z1 = spin_coordinate(n1, Axis::z, s1);
  const auto x2 = spin_coordinate(n2, Axis::x, s2);
  const auto y2 = spin_coordinate(n2, Axis::y, s2);
  const auto z2 = spin_coordinate(n2, Axis::z, s2);
  const auto id1 = SymmetricMatrix::identity(static_cast<std::size_t>(n1) + 1);
  const auto id2 = SymmetricMatrix::identity(static_cast<std::size_t>(n2) + 1);

  SymmetricMatrix f = a1 * tensor_product(z1.re, id2);
  f += a2 * tensor_product(id1, z2.re);

  SymmetricMatrix h = tensor_product(x1.re, x2.re);
  const auto yy = tensor_product(y1, y2);  // purely real: (i K1) (x) (i K2) = -K1 (x) K2
  h += yy.re;
  h += tensor_product(z1.re, z2.re);
  return CommutingFamily({std::move(f), std::move(h)}, commute_tol, {"F", "H"});
}

/// Image of (F, H) for a1 = 1, a2 = a >= 1:
///   F^2 <= 1 + a^2 + 2 a H,  -1 <= H <= 1,
/// in the (F, H) plane. The general (a1, a2) case rescales F by min(a1, a2)
/// with a = max/min.
inline ClassicalRegion classical_region_coupled(double a1, double a2) {
  if (!(a1 > 0.0) || !(a2 > 0.0)) throw DomainError("classical_region_coupled: amplitudes must be positive");
  const double lo = std::min(a1, a2);
  const double a = std::max(a1, a2) / lo;
  ClassicalRegion r;
  r.name = "coupled";
  r.dim = 2;
  r.contains = [a, lo](std::span<const double> p) {
    const double f = p[0] / lo;
    const double h = p[1];
    const double eps = 1e-12;
    return h >= -1.0 - eps && h <= 1.0 + eps && f * f <= 1.0 + a * a + 2.0 * a * h + eps;
  };
  r.support = [a, lo](std::span<const double> alpha) {
    // on the sphere |Psi| = rho, H = (rho^2 - 1 - a^2) / (2a) and |F| <= lo * rho
    const double af = lo * std::abs(alpha[0]);
    const double ah = alpha[1];
    auto value = [&](double rho) { return ah * (rho * rho - 1.0 - a * a) / (2.0 * a) + af * rho; };
    double best = std::max(value(a - 1.0), value(a + 1.0));
    if (ah < 0.0) {
      const double rho = std::clamp(-af * a / ah, a - 1.0, a + 1.0);
      best = std::max(best, value(rho));
    }
    return best;
  };
  r.boundary_samples = [a, lo](std::size_t n) {
    const std::size_t half = std::max<std::size_t>(n / 2, 2);
    std::vector<Point> pts;
    pts.reserve(2 * half);
    for (std::size_t i = 0; i < half; ++i) {
      const double h = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(half - 1);
      pts.push_back({lo * std::sqrt(std::max(0.0, 1.0 + a * a + 2.0 * a * h)), h});
    }
    for (std::size_t i = 0; i < half; ++i) {
      const double h = 1.0 - 2.0 * static_cast<double>(i) / static_cast<double>(half - 1);
      pts.push_back({-lo * std::sqrt(std::max(0.0, 1.0 + a * a + 2.0 * a * h)), h});
    }
    return pts;
  };
  return r;
}

inline ClassicalRegion classical_region_coupled(double a) {
  if (a < 1.0) throw DomainError("classical_region_coupled: a must be at least 1");
  return classical_region_coupled(1.0, a);
}

// ---------------------------------------------------------------------------
// Toric products of spheres

struct ToricSystem {
  CommutingFamily family;
  ClassicalRegion region;
};

inline constexpr std::size_t kMaxToricFactors = 4;

/// Image of the cube [-1, 1]^n under the k x n weight matrix (a zonotope).
inline ClassicalRegion zonotope_region(const std::vector<std::vector<int>>& weights) {
  const std::size_t k = weights.size();
  const std::size_t n = weights.front().size();
  // vertices of the image of the cube
  std::vector<Point> corners;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Point p(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = (mask >> i) & 1U ? 1.0 : -1.0;
      for (std::size_t j = 0; j < k; ++j) p[j] += weights[j][i] * s;
    }
    corners.push_back(std::move(p));
  }
  auto support = [weights, k, n](std::span<const double> alpha) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0;
      for (std::size_t j = 0; j < k; ++j) c += weights[j][i] * alpha[j];
      s += std::abs(c);
    }
    return s;
  };
  ClassicalRegion r;
  r.name = "zonotope";
  r.dim = k;
  r.support = support;
  if (k == 2) {
    std::vector<Point2> pts;
    for (const auto& c : corners) pts.push_back({c[0], c[1]});
    const ConvexPolygon poly = hull2d(pts);
    r.contains = [poly, support](std::span<const double> p) {
      if (poly.vertices.size() >= 3) return poly.max_edge_excess({p[0], p[1]}) <= 1e-12;
      // degenerate zonotope: check against all directions of a fine set
      for (const auto& a : unit_directions(2, 720))
        if (p[0] * a[0] + p[1] * a[1] > support(a) + 1e-12) return false;
      return true;
    };
    r.boundary_samples = [poly](std::size_t count) {
      std::vector<Point> pts;
      const std::size_t nv = poly.vertices.size();
      const std::size_t per = std::max<std::size_t>(1, count / std::max<std::size_t>(nv, 1));
      for (std::size_t v = 0; v < nv; ++v) {
        const auto& p = poly.vertices[v];
        const auto& q = poly.vertices[(v + 1) % nv];
        for (std::size_t s = 0; s < per; ++s) {
          const double t = static_cast<double>(s) / static_cast<double>(per);
          pts.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
        }
      }
      return pts;
    };
  } else {
    // halfspace test on a dense direction set (exact for k = 1)
    const auto dirs = unit_directions(k, k == 1 ? 2 : 4000);
    r.contains = [dirs, support](std::span<const double> p) {
      for (const auto& a : dirs)
        if (dot(p, a) > support(a) + 1e-12) return false;
      return true;
    };
    r.boundary_samples = [corners](std::size_t) { return corners; };
  }
  return r;
}

/// Diagonal family sum_i w_ji * (Id (x) ... (x) T_m(z_i) (x) ... (x) Id),
/// j = 1..k, on the product of n <= 4 spheres.
inline ToricSystem toric_product_family(int m, const std::vector<std::vector<int>>& weights) {
  if (weights.empty() || weights.front().empty()) throw DomainError("toric_product_family: empty weight matrix");
  const std::size_t k = weights.size();
  const std::size_t n = weights.front().size();
  for (const auto& row : weights)
    if (row.size() != n) throw DimensionError("toric_product_family: ragged weight matrix");
  if (n > kMaxToricFactors)
    throw DomainError("toric_product_family: at most 4 sphere factors supported, got " + std::to_string(n));
  if (m < 1) throw DomainError("toric_product_family: m must be at least 1");
  const std::size_t f = static_cast<std::size_t>(m) + 1;
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) dim *= f;
  if (dim > kCoupledDimensionCap)
    throw DomainError("toric_product_family: dimension " + std::to_string(dim) + " exceeds the cap");

  // z value of factor i at product index idx
  auto factor_z = [&](std::size_t idx, std::size_t i) {
    std::size_t stride = 1;
    for (std::size_t t = i + 1; t < n; ++t) stride *= f;
    const std::size_t ki = (idx / stride) % f;
    return static_cast<double>(m - 2 * static_cast<int>(ki)) / static_cast<double>(m + 2);
  };
  std::vector<SymmetricMatrix> ops;
  std::vector<std::string> names;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> diag(dim, 0.0);
    for (std::size_t idx = 0; idx < dim; ++idx)
      for (std::size_t i = 0; i < n; ++i) diag[idx] += weights[j][i] * factor_z(idx, i);
    ops.push_back(SymmetricMatrix::diagonal(diag));
    names.push_back("J" + std::to_string(j + 1));
  }
  return {CommutingFamily(std::move(ops), 1e-12, std::move(names)), zonotope_region(weights)};
}

// ---------------------------------------------------------------------------
// Quantization axioms

struct AxiomRow {
  int m = 0;
  double normalization = 0.0;        // ||T(1) - Id||
  double positivity_min = 0.0;       // lambda_min(T(f_pos))
  double product_error = 0.0;        // ||T(f) T(g) - T(fg)||
  double symbol_norm = 0.0;          // ||T(f)||
  double symbol_sup = 0.0;           // sup |f|
  double norm_gap = 0.0;             // sup |f| - ||T(f)||
};

struct AxiomReport {
  Polynomial f;
  Polynomial g;
  Polynomial f_pos;
  std::vector<AxiomRow> rows;
  double product_exponent = 0.0;  // fitted decay exponent of product_error
  double norm_exponent = 0.0;     // fitted decay exponent of norm_gap (0 if any gap is nonpositive)
};

namespace detail {

// Spectral norm of the complex matrix (R + iI), via its real 2n x 2n form.
inline double complex_spectral_norm(const Matrix& re, const Matrix& im) {
  const std::size_t n = re.rows();
  Matrix big(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      big(i, j) = re(i, j);
      big(n + i, n + j) = re(i, j);
      big(i, n + j) = -im(i, j);
      big(n + i, j) = im(i, j);
    }
  return spectral_norm(big);
}

}  // namespace detail

/// Normalization, quasi-positivity, non-degeneracy and product-formula
/// measurements of the sphere quantization over a list of levels.
inline AxiomReport axiom_battery(const std::vector<int>& levels, const Polynomial& f, const Polynomial& g,
                                 const Polynomial& f_pos = parse_polynomial("1 + z")) {
  if ((f * g).degree() > kOracleMaxDegree || f_pos.degree() > kOracleMaxDegree)
    throw DomainError("axiom_battery: symbols exceed the oracle degree");
  AxiomReport rep{f, g, f_pos, {}, 0.0, 0.0};
  const double sup_f = f.sup_abs_on_sphere();
  for (int m : levels) {
    AxiomRow row;
    row.m = m;
    const auto one = toeplitz_polynomial(m, Polynomial::constant(1));
    const auto id = SymmetricMatrix::identity(one.size());
    row.normalization = HermitianMatrix(one.re - id, one.im).norm();
    row.positivity_min = toeplitz_polynomial(m, f_pos).eigenvalues().front();

    const auto tf = toeplitz_polynomial(m, f);
    const auto tg = toeplitz_polynomial(m, g);
    const auto tfg = toeplitz_polynomial(m, f * g);
    // (Rf + i If)(Rg + i Ig) - (Rfg + i Ifg)
    const Matrix rf = tf.re.to_matrix(), fi = tf.im.to_matrix();
    const Matrix rg = tg.re.to_matrix(), gi = tg.im.to_matrix();
    Matrix pr = multiply(rf, rg);
    pr -= multiply(fi, gi);
    pr -= tfg.re.to_matrix();
    Matrix pi = multiply(rf, gi);
    pi += multiply(fi, rg);
    pi -= tfg.im.to_matrix();
    row.product_error = detail::complex_spectral_norm(pr, pi);

    row.symbol_norm = tf.norm();
    row.symbol_sup = sup_f;
    row.norm_gap = sup_f - row.symbol_norm;
    rep.rows.push_back(row);
  }
  if (rep.rows.size() >= 2) {
    std::vector<double> ms, errs, gaps;
    bool gaps_positive = true;
    for (const auto& r : rep.rows) {
      ms.push_back(r.m);
      errs.push_back(r.product_error);
      gaps.push_back(r.norm_gap);
      gaps_positive = gaps_positive && r.norm_gap > 0.0;
    }
    bool errs_positive = std::all_of(errs.begin(), errs.end(), [](double e) { return e > 0.0; });
    rep.product_exponent = errs_positive ? -loglog_slope(ms, errs) : 0.0;
    rep.norm_exponent = gaps_positive ? -loglog_slope(ms, gaps) : 0.0;
  }
  return rep;
}

}  // namespace speclim
