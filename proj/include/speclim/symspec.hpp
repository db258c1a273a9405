#pragma once

// Dense real symmetric spectral kernel.
//
// Householder tridiagonalization followed by implicit-shift QL. Exactly
// reducible matrices (no nonzero entry couples two index sets) are split
// into connected blocks first, each block solved on its own; already
// tridiagonal blocks skip the Householder stage.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "speclim/error.hpp"

namespace speclim {

/// General dense row-major matrix; used for eigenvector bases and
/// intermediate (non-symmetric) products.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return a_; }

  std::vector<double> column(std::size_t j) const {
    std::vector<double> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionError("Matrix +=: shape mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }

  Matrix& operator-=(const Matrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionError("Matrix -=: shape mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }

  /// Largest absolute entry.
  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

/// Dense product; rows of the left factor are scanned for exact zeros, so
/// structured sparse operands (Kronecker products, tridiagonals) stay cheap.
inline Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

/// Dense real symmetric matrix. Symmetry is exact: every write updates
/// both triangles, and construction from raw entries rejects asymmetry.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {
    if (n == 0) throw DimensionError("SymmetricMatrix: dimension must be at least 1");
  }

  /// Row-major entries; throws DomainError unless entries[i][j] == entries[j][i] exactly.
  static SymmetricMatrix from_entries(std::size_t n, std::span<const double> entries) {
    if (entries.size() != n * n) throw DimensionError("SymmetricMatrix: entry count is not n*n");
    SymmetricMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (entries[i * n + j] != entries[j * n + i])
          throw DomainError("SymmetricMatrix: entries are not symmetric at (" + std::to_string(i) +
                            "," + std::to_string(j) + ")");
        s.a_[i * n + j] = entries[i * n + j];
      }
    }
    return s;
  }

  static SymmetricMatrix identity(std::size_t n) {
    SymmetricMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) s.a_[i * n + i] = 1.0;
    return s;
  }

  static SymmetricMatrix diagonal(std::span<const double> d) {
    SymmetricMatrix s(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) s.a_[i * d.size() + i] = d[i];
    return s;
  }

  std::size_t size() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }

  std::span<const double> data() const noexcept { return a_; }

  Matrix to_matrix() const {
    Matrix m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m(i, j) = a_[i * n_ + j];
    return m;
  }

  SymmetricMatrix& operator+=(const SymmetricMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  SymmetricMatrix& operator-=(const SymmetricMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  SymmetricMatrix& operator*=(double s) {
    for (double& v : a_) v *= s;
    return *this;
  }
  /// this += s * o
  SymmetricMatrix& add_scaled(double s, const SymmetricMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += s * o.a_[k];
    return *this;
  }

  friend SymmetricMatrix operator+(SymmetricMatrix a, const SymmetricMatrix& b) { return a += b; }
  friend SymmetricMatrix operator-(SymmetricMatrix a, const SymmetricMatrix& b) { return a -= b; }
  friend SymmetricMatrix operator*(double s, SymmetricMatrix a) { return a *= s; }
  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += a_[i * n_ + i];
    return t;
  }

  /// Upper bound on the spectral radius from Gershgorin discs.
  double gershgorin_bound() const {
    double b = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n_; ++j) row += std::abs(a_[i * n_ + j]);
      b = std::max(b, row);
    }
    return b;
  }

 private:
  void check_same(const SymmetricMatrix& o) const {
    if (o.n_ != n_) throw DimensionError("SymmetricMatrix: dimension mismatch");
  }

  std::size_t n_;
  std::vector<double> a_;
};

/// Real antisymmetric matrix; the imaginary part of a complex Hermitian matrix.
class AntisymmetricMatrix {
 public:
  explicit AntisymmetricMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {
    if (n == 0) throw DimensionError("AntisymmetricMatrix: dimension must be at least 1");
  }

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  /// Sets (i,j) to v and (j,i) to -v; i == j requires v == 0.
  void set(std::size_t i, std::size_t j, double v) {
    if (i == j && v != 0.0) throw DomainError("AntisymmetricMatrix: nonzero diagonal");
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = -v;
  }

  AntisymmetricMatrix& operator*=(double s) {
    for (double& v : a_) v *= s;
    return *this;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](double v) { return v == 0.0; });
  }

  Matrix to_matrix() const {
    Matrix m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m(i, j) = a_[i * n_ + j];
    return m;
  }

 private:
  std::size_t n_;
  std::vector<double> a_;
};

inline std::vector<double> apply(const SymmetricMatrix& a, std::span<const double> u) {
  const std::size_t n = a.size();
  if (u.size() != n) throw DimensionError("apply: vector length differs from dimension");
  std::vector<double> r(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += a(i, j) * u[j];
    r[i] = s;
  }
  return r;
}

/// <Au,u>/<u,u>.
inline double rayleigh_quotient(const SymmetricMatrix& a, std::span<const double> u) {
  const auto au = apply(a, u);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    num += au[i] * u[i];
    den += u[i] * u[i];
  }
  if (den == 0.0) throw DomainError("rayleigh_quotient: zero vector");
  return num / den;
}

/// Index sets of the connected components of the nonzero pattern, each
/// sorted ascending; components are ordered by their smallest index.
inline std::vector<std::vector<std::size_t>> connected_blocks(const SymmetricMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a(i, j) == 0.0) continue;
      const std::size_t ri = find(i);
      const std::size_t rj = find(j);
      if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
    }
  }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == n) {
      slot[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(i);
  }
  return blocks;
}

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]
};

namespace detail {

// Householder reduction of the k x k row-major block z to tridiagonal form.
// On return d holds the diagonal, e the subdiagonal in e[1..k-1] (e[0] = 0),
// and, if vecs, z holds the accumulated orthogonal transform.
inline void householder_tridiagonalize(std::vector<double>& z, std::size_t k, std::vector<double>& d,
                                       std::vector<double>& e, bool vecs) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return z[i * k + j]; };
  d.assign(k, 0.0);
  e.assign(k, 0.0);
  for (std::size_t i = k - 1; i > 0; --i) {
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t c = 0; c < i; ++c) scale += std::abs(at(i, c));
      if (scale == 0.0) {
        e[i] = at(i, l);
      } else {
        for (std::size_t c = 0; c < i; ++c) {
          at(i, c) /= scale;
          h += at(i, c) * at(i, c);
        }
        double f = at(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        at(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
          if (vecs) at(j, i) = at(i, j) / h;
          g = 0.0;
          for (std::size_t c = 0; c <= j; ++c) g += at(j, c) * at(i, c);
          for (std::size_t c = j + 1; c < i; ++c) g += at(c, j) * at(i, c);
          e[j] = g / h;
          f += e[j] * at(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j < i; ++j) {
          f = at(i, j);
          e[j] = g = e[j] - hh * f;
          for (std::size_t c = 0; c <= j; ++c) at(j, c) -= (f * e[c] + g * at(i, c));
        }
      }
    } else {
      e[i] = at(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (vecs) {
      if (d[i] != 0.0) {
        for (std::size_t j = 0; j < i; ++j) {
          double g = 0.0;
          for (std::size_t c = 0; c < i; ++c) g += at(i, c) * at(c, j);
          for (std::size_t c = 0; c < i; ++c) at(c, j) -= g * at(c, i);
        }
      }
      d[i] = at(i, i);
      at(i, i) = 1.0;
      for (std::size_t j = 0; j < i; ++j) at(j, i) = at(i, j) = 0.0;
    } else {
      d[i] = at(i, i);
    }
  }
}

// Implicit-shift QL on the tridiagonal (d, e) produced above. z (k x k,
// row-major) is rotated along when vecs. Throws after cap total sweeps.
inline void implicit_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z,
                        std::size_t k, bool vecs, double deflation, std::size_t cap,
                        std::size_t block_index) {
  for (std::size_t i = 1; i < k; ++i) e[i - 1] = e[i];
  e[k - 1] = 0.0;
  std::size_t sweeps = 0;
  for (std::size_t l = 0; l < k; ++l) {
    std::size_t m;
    do {
      for (m = l; m + 1 < k; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= deflation * dd) break;
      }
      if (m != l) {
        if (++sweeps > cap)
          throw ConvergenceError("eigh: QL iteration did not converge in block " +
                                     std::to_string(block_index) + " at row " + std::to_string(l),
                                 block_index);
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t ii = m; ii-- > l;) {
          double f = s * e[ii];
          const double b = c * e[ii];
          e[ii + 1] = (r = std::hypot(f, g));
          if (r == 0.0) {
            d[ii + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[ii + 1] - p;
          r = (d[ii] - g) * s + 2.0 * c * b;
          d[ii + 1] = g + (p = s * r);
          g = c * r - b;
          if (vecs) {
            for (std::size_t row = 0; row < k; ++row) {
              f = z[row * k + ii + 1];
              z[row * k + ii + 1] = s * z[row * k + ii] + c * f;
              z[row * k + ii] = c * z[row * k + ii] - s * f;
            }
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

struct BlockResult {
  std::vector<double> values;
  std::vector<double> vectors;  // k x k row-major, columns are eigenvectors
};

inline BlockResult solve_block(const SymmetricMatrix& a, const std::vector<std::size_t>& idx,
                               bool vecs, double deflation, std::size_t block_index) {
  const std::size_t k = idx.size();
  BlockResult out;
  std::vector<double> z(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) z[i * k + j] = a(idx[i], idx[j]);
  std::vector<double> d;
  std::vector<double> e;
  bool tridiagonal = true;
  for (std::size_t i = 0; i < k && tridiagonal; ++i)
    for (std::size_t j = i + 2; j < k; ++j)
      if (z[i * k + j] != 0.0) {
        tridiagonal = false;
        break;
      }
  if (tridiagonal) {
    d.resize(k);
    e.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) d[i] = z[i * k + i];
    for (std::size_t i = 1; i < k; ++i) e[i] = z[i * k + i - 1];
    if (vecs) {
      std::fill(z.begin(), z.end(), 0.0);
      for (std::size_t i = 0; i < k; ++i) z[i * k + i] = 1.0;
    }
  } else {
    householder_tridiagonalize(z, k, d, e, vecs);
  }
  implicit_ql(d, e, z, k, vecs, deflation, 50 * k, block_index);
  out.values = std::move(d);
  if (vecs) out.vectors = std::move(z);
  return out;
}

inline void check_tol(double tol) {
  if (!(tol > 0.0)) throw DomainError("eigh: tolerance must be positive");
}

}  // namespace detail

/// Machine-precision QL deflation threshold.
inline constexpr double kDefaultDeflation = std::numeric_limits<double>::epsilon();

/// Full symmetric eigendecomposition. tol is the relative deflation
/// threshold of the QL sweeps. Eigenvalues ascend; each eigenvector has its
/// first component above 1e-12 in magnitude made positive, and exactly tied
/// eigenvalues are ordered by that component's index.
inline EigenDecomposition eigh(const SymmetricMatrix& a, double tol = kDefaultDeflation) {
  detail::check_tol(tol);
  const std::size_t n = a.size();
  const auto blocks = connected_blocks(a);

  struct Pair {
    double value;
    std::size_t lead;
    std::vector<double> v;
  };
  std::vector<Pair> pairs;
  pairs.reserve(n);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& idx = blocks[b];
    const std::size_t k = idx.size();
    auto res = detail::solve_block(a, idx, true, tol, b);
    for (std::size_t c = 0; c < k; ++c) {
      Pair p{res.values[c], n, std::vector<double>(n, 0.0)};
      for (std::size_t r = 0; r < k; ++r) p.v[idx[r]] = res.vectors[r * k + c];
      for (std::size_t r = 0; r < n; ++r) {
        if (std::abs(p.v[r]) > 1e-12) {
          p.lead = r;
          if (p.v[r] < 0.0)
            for (double& x : p.v) x = -x;
          break;
        }
      }
      pairs.push_back(std::move(p));
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (x.value != y.value) return x.value < y.value;
    return x.lead < y.lead;
  });
  EigenDecomposition out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = pairs[c].value;
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = pairs[c].v[r];
  }
  return out;
}

/// Eigenvalues only, ascending.
inline std::vector<double> eigvalsh(const SymmetricMatrix& a, double tol = kDefaultDeflation) {
  detail::check_tol(tol);
  const auto blocks = connected_blocks(a);
  std::vector<double> values;
  values.reserve(a.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    auto res = detail::solve_block(a, blocks[b], false, tol, b);
    values.insert(values.end(), res.values.begin(), res.values.end());
  }
  std::sort(values.begin(), values.end());
  return values;
}

/// Eigenvalues of a symmetric tridiagonal matrix given by its diagonal and
/// subdiagonal, ascending.
inline std::vector<double> eigvalsh_tridiagonal(std::vector<double> diag, std::span<const double> sub,
                                                double tol = kDefaultDeflation) {
  detail::check_tol(tol);
  const std::size_t k = diag.size();
  if (k == 0) throw DimensionError("eigvalsh_tridiagonal: empty matrix");
  if (sub.size() + 1 != k) throw DimensionError("eigvalsh_tridiagonal: subdiagonal length must be n-1");
  std::vector<double> e(k, 0.0);
  for (std::size_t i = 1; i < k; ++i) e[i] = sub[i - 1];
  std::vector<double> unused;
  detail::implicit_ql(diag, e, unused, k, false, tol, 50 * k, 0);
  std::sort(diag.begin(), diag.end());
  return diag;
}

struct Extremes {
  double min;
  double max;
};

inline Extremes lambda_extremes(const SymmetricMatrix& a) {
  const auto v = eigvalsh(a);
  return {v.front(), v.back()};
}

inline double lambda_max(const SymmetricMatrix& a) { return eigvalsh(a).back(); }

inline double operator_norm(const SymmetricMatrix& a) {
  const auto e = lambda_extremes(a);
  return std::max(std::abs(e.min), std::abs(e.max));
}

/// Spectral norm of a general matrix through the symmetric square.
inline double spectral_norm(const Matrix& m) {
  const Matrix g = multiply(m.transposed(), m);
  SymmetricMatrix s(g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = i; j < g.cols(); ++j) s.set(i, j, 0.5 * (g(i, j) + g(j, i)));
  return std::sqrt(std::max(0.0, lambda_max(s)));
}

/// AB - BA, antisymmetric for symmetric A, B.
inline AntisymmetricMatrix commutator(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.size() != b.size()) throw DimensionError("commutator: dimension mismatch");
  const Matrix am = a.to_matrix();
  const Matrix bm = b.to_matrix();
  Matrix c = multiply(am, bm);
  c -= multiply(bm, am);
  AntisymmetricMatrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) out.set(i, j, 0.5 * (c(i, j) - c(j, i)));
  return out;
}

/// ||i(AB - BA)||, the square root of the top eigenvalue of -C^2 = C^T C.
inline double commutator_norm(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  return spectral_norm(commutator(a, b).to_matrix());
}

/// Realification [[re, -im], [im, re]] of the Hermitian matrix re + i*im.
/// Its spectrum is that of the Hermitian matrix with every multiplicity doubled.
inline SymmetricMatrix hermitian_embed(const SymmetricMatrix& re, const AntisymmetricMatrix& im) {
  const std::size_t n = re.size();
  if (im.size() != n) throw DimensionError("hermitian_embed: real and imaginary parts differ in size");
  SymmetricMatrix out(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      out.set(i, j, re(i, j));
      out.set(n + i, n + j, re(i, j));
    }
    for (std::size_t j = 0; j < n; ++j) out.set(n + i, j, im(i, j));
  }
  return out;
}

}  // namespace speclim
