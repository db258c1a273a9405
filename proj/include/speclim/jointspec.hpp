#pragma once

// Joint spectra of commuting symmetric families.
//
// Two independent routes to the convex hull of the joint spectrum:
//   1. simultaneous diagonalization, then the support function of the
//      resulting point cloud;
//   2. the top eigenvalue of the linear combination sum_j alpha_j T_j for
//      each direction alpha.
// For a commuting family the two agree for every alpha.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "speclim/convexgeom.hpp"
#include "speclim/error.hpp"
#include "speclim/parallel.hpp"
#include "speclim/random.hpp"
#include "speclim/symspec.hpp"

namespace speclim {

/// Joint invariant block structure of a list of symmetric matrices: the
/// connected components of the union of their nonzero patterns, with each
/// operator restricted to every block. Any linear combination of the
/// operators is block diagonal in this decomposition.
class BlockedFamily {
 public:
  explicit BlockedFamily(const std::vector<SymmetricMatrix>& ops) {
    if (ops.empty()) throw DimensionError("BlockedFamily: empty operator list");
    n_ = ops.front().size();
    SymmetricMatrix pattern(n_);
    for (const auto& t : ops) {
      if (t.size() != n_) throw DimensionError("BlockedFamily: operators differ in dimension");
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
          if (t(i, j) != 0.0) pattern.set(i, j, 1.0);
    }
    index_ = connected_blocks(pattern);
    restricted_.resize(index_.size());
    for (std::size_t b = 0; b < index_.size(); ++b) {
      const auto& idx = index_[b];
      for (const auto& t : ops) {
        SymmetricMatrix r(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
          for (std::size_t j = i; j < idx.size(); ++j) r.set(i, j, t(idx[i], idx[j]));
        restricted_[b].push_back(std::move(r));
      }
    }
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t count() const noexcept { return restricted_.empty() ? 0 : restricted_.front().size(); }
  std::size_t block_count() const noexcept { return index_.size(); }
  const std::vector<std::size_t>& block_indices(std::size_t b) const { return index_[b]; }
  const std::vector<SymmetricMatrix>& block_ops(std::size_t b) const { return restricted_[b]; }

  SymmetricMatrix combination(std::size_t b, std::span<const double> coef) const {
    if (coef.size() != count()) throw DimensionError("BlockedFamily: coefficient count differs from family size");
    SymmetricMatrix m(index_[b].size());
    for (std::size_t j = 0; j < coef.size(); ++j) m.add_scaled(coef[j], restricted_[b][j]);
    return m;
  }

  /// Top eigenvalue of sum_j coef_j T_j.
  double lambda_max(std::span<const double> coef) const {
    double best = -INFINITY;
    for (std::size_t b = 0; b < index_.size(); ++b) best = std::max(best, eigvalsh(combination(b, coef)).back());
    return best;
  }

  /// All eigenvalues of sum_j coef_j T_j, ascending.
  std::vector<double> eigenvalues(std::span<const double> coef) const {
    std::vector<double> all;
    for (std::size_t b = 0; b < index_.size(); ++b) {
      const auto v = eigvalsh(combination(b, coef));
      all.insert(all.end(), v.begin(), v.end());
    }
    std::sort(all.begin(), all.end());
    return all;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<std::size_t>> index_;
  std::vector<std::vector<SymmetricMatrix>> restricted_;
};

/// Ordered list (T_1, ..., T_d) of pairwise commuting symmetric matrices.
/// Tuple components of every derived point follow this declaration order.
class CommutingFamily {
 public:
  CommutingFamily(std::vector<SymmetricMatrix> ops, double commute_tol, std::vector<std::string> names = {})
      : ops_(std::move(ops)), commute_tol_(commute_tol), names_(std::move(names)) {
    if (ops_.empty()) throw DimensionError("CommutingFamily: at least one operator required");
    if (!(commute_tol_ >= 0.0)) throw DomainError("CommutingFamily: commutator tolerance must be nonnegative");
    for (const auto& t : ops_)
      if (t.size() != ops_.front().size()) throw DimensionError("CommutingFamily: operators differ in dimension");
    if (names_.empty())
      for (std::size_t j = 0; j < ops_.size(); ++j) names_.push_back("T" + std::to_string(j + 1));
    if (names_.size() != ops_.size()) throw DimensionError("CommutingFamily: one name per operator required");
    for (const auto& t : ops_) norms_.push_back(operator_norm(t));

    double worst = -1.0;
    std::size_t wi = 0;
    std::size_t wj = 0;
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      for (std::size_t j = i + 1; j < ops_.size(); ++j) {
        const double c = commutator_norm(ops_[i], ops_[j]);
        const double bound = commute_tol_ * std::max(norms_[i], norms_[j]);
        const double excess = c - bound;
        if (excess > 0.0 && excess > worst) {
          worst = excess;
          wi = i;
          wj = j;
        }
      }
    }
    if (worst > 0.0)
      throw CommutationError("CommutingFamily: operators " + names_[wi] + " and " + names_[wj] +
                                 " do not commute within tolerance",
                             wi, wj);
  }

  std::size_t count() const noexcept { return ops_.size(); }
  std::size_t size() const noexcept { return ops_.front().size(); }
  const std::vector<SymmetricMatrix>& ops() const noexcept { return ops_; }
  const SymmetricMatrix& op(std::size_t j) const { return ops_.at(j); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<double>& norms() const noexcept { return norms_; }
  double commute_tol() const noexcept { return commute_tol_; }

  /// max_j ||T_j||, or 1 for the zero family.
  double scale() const {
    const double s = *std::max_element(norms_.begin(), norms_.end());
    return s > 0.0 ? s : 1.0;
  }

 private:
  std::vector<SymmetricMatrix> ops_;
  double commute_tol_;
  std::vector<std::string> names_;
  std::vector<double> norms_;
};

/// Orthonormal basis diagonalizing every operator of a family, with the
/// diagonal values (the joint eigenvalue labels) for each basis column.
struct JointEigenbasis {
  Matrix basis;
  std::vector<Point> labels;
};

struct JointSpectrumOptions {
  double tol = 1e-9;           // off-diagonal residual accepted in a cluster, relative to ||T_j||
  std::uint64_t seed = 1;      // generic combination coefficients
  double gap_factor = 1e-8;    // cluster gap threshold = gap_factor * ||combination|| * n
  double merge_factor = 1e-7;  // multiplicity merge radius = merge_factor * scale
};

namespace detail {

// Columns [begin, end) of sorted eigenvalues split wherever consecutive values differ by more than gap.
inline std::vector<std::pair<std::size_t, std::size_t>> split_clusters(const std::vector<double>& values,
                                                                       double gap) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= values.size(); ++i) {
    if (i == values.size() || values[i] - values[i - 1] > gap) {
      out.emplace_back(start, i);
      start = i;
    }
  }
  return out;
}

// Refines an orthonormal set of columns q (k x c, k = block size) spanning
// a joint invariant subspace until every operator is diagonal on it.
inline void refine_cluster(const std::vector<SymmetricMatrix>& ops, const std::vector<double>& norms,
                           const Matrix& q, std::size_t level, std::size_t n_total, const JointSpectrumOptions& opt,
                           std::vector<std::vector<double>>& out_vectors, std::vector<Point>& out_labels) {
  const std::size_t k = q.rows();
  const std::size_t c = q.cols();
  const std::size_t d = ops.size();
  std::vector<SymmetricMatrix> restricted;
  std::vector<Matrix> images;
  restricted.reserve(d);
  images.reserve(d);
  bool diagonal = true;
  for (std::size_t j = 0; j < d; ++j) {
    images.push_back(multiply(ops[j].to_matrix(), q));
    const Matrix& tq = images.back();
    SymmetricMatrix r(c);
    double off = 0.0;
    for (std::size_t a = 0; a < c; ++a) {
      for (std::size_t b = a; b < c; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i) s += q(i, a) * tq(i, b);
        r.set(a, b, s);
        if (a != b) off += 2.0 * s * s;
      }
    }
    if (std::sqrt(off) > opt.tol * std::max(norms[j], 1e-300)) diagonal = false;
    restricted.push_back(std::move(r));
  }
  if (diagonal) {
    // a diagonal restriction is not enough: the span must also be invariant
    const double residual_tol = std::sqrt(opt.tol);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t a = 0; a < c; ++a) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
          const double e = images[j](i, a) - restricted[j](a, a) * q(i, a);
          r2 += e * e;
        }
        if (std::sqrt(r2) > residual_tol * std::max(norms[j], 1e-300))
          throw Error("joint_spectrum: eigenvector residual " + std::to_string(std::sqrt(r2)) +
                      "; the family is not simultaneously diagonalizable within tolerance");
      }
    for (std::size_t a = 0; a < c; ++a) {
      out_vectors.push_back(q.column(a));
      Point label(d);
      for (std::size_t j = 0; j < d; ++j) label[j] = restricted[j](a, a);
      out_labels.push_back(std::move(label));
    }
    return;
  }
  if (level >= d)
    throw Error("joint_spectrum: cluster refinement exceeded depth " + std::to_string(d) +
                "; the family is not simultaneously diagonalizable within tolerance");
  const auto eig = eigh(restricted[level]);
  const Matrix rotated = multiply(q, eig.vectors);
  const double gap = opt.gap_factor * std::max(norms[level], 1e-300) * static_cast<double>(n_total);
  for (const auto& [b0, b1] : split_clusters(eig.values, gap)) {
    Matrix sub(k, b1 - b0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t a = b0; a < b1; ++a) sub(i, a - b0) = rotated(i, a);
    refine_cluster(ops, norms, sub, level + 1, n_total, opt, out_vectors, out_labels);
  }
}

}  // namespace detail

/// Coefficients of the generic combination: uniform on [1, 2]^d, normalized.
inline std::vector<double> generic_coefficients(std::size_t d, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> c(d);
  for (auto& v : c) v = rng.uniform(1.0, 2.0);
  const double r = norm(c);
  for (auto& v : c) v /= r;
  return c;
}

/// Simultaneous diagonalization. Each invariant block is diagonalized
/// through a seeded generic combination; eigenvalue clusters that the
/// combination leaves degenerate are refined operator by operator.
inline JointEigenbasis joint_eigenbasis(const CommutingFamily& fam, const JointSpectrumOptions& opt = {}) {
  const std::size_t n = fam.size();
  const std::size_t d = fam.count();
  const BlockedFamily blocks(fam.ops());
  const auto coef = generic_coefficients(d, opt.seed);

  const auto comb_values = blocks.eigenvalues(coef);
  double comb_norm = std::max(std::abs(comb_values.front()), std::abs(comb_values.back()));
  if (comb_norm == 0.0) comb_norm = 1.0;
  const double gap = opt.gap_factor * comb_norm * static_cast<double>(n);

  JointEigenbasis out{Matrix(n, n), {}};
  out.labels.reserve(n);
  std::size_t col = 0;
  for (std::size_t b = 0; b < blocks.block_count(); ++b) {
    const auto& idx = blocks.block_indices(b);
    const std::size_t k = idx.size();
    const auto eig = eigh(blocks.combination(b, coef));
    std::vector<std::vector<double>> vecs;
    std::vector<Point> labels;
    for (const auto& [c0, c1] : detail::split_clusters(eig.values, gap)) {
      Matrix q(k, c1 - c0);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t a = c0; a < c1; ++a) q(i, a - c0) = eig.vectors(i, a);
      detail::refine_cluster(blocks.block_ops(b), fam.norms(), q, 0, n, opt, vecs, labels);
    }
    for (std::size_t a = 0; a < vecs.size(); ++a, ++col) {
      for (std::size_t i = 0; i < k; ++i) out.basis(idx[i], col) = vecs[a][i];
      out.labels.push_back(std::move(labels[a]));
    }
  }
  return out;
}

/// Merges points closer than radius (Euclidean) into one point carrying the
/// summed multiplicity; the merged point is the multiplicity-weighted mean.
/// Output is sorted lexicographically.
inline SpectrumCloud merge_points(std::size_t d, std::vector<Point> pts, double radius) {
  std::sort(pts.begin(), pts.end());
  struct Group {
    Point sum;
    Point first;
    std::size_t count;
  };
  std::vector<Group> groups;
  for (auto& p : pts) {
    bool placed = false;
    for (std::size_t g = groups.size(); g-- > 0;) {
      if (p[0] - groups[g].first[0] > radius) break;
      double dist = 0.0;
      for (std::size_t k = 0; k < d; ++k) dist += (p[k] - groups[g].first[k]) * (p[k] - groups[g].first[k]);
      if (std::sqrt(dist) <= radius) {
        for (std::size_t k = 0; k < d; ++k) groups[g].sum[k] += p[k];
        ++groups[g].count;
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({p, p, 1});
  }
  std::vector<std::pair<Point, std::size_t>> merged;
  for (auto& g : groups) {
    for (auto& v : g.sum) v /= static_cast<double>(g.count);
    merged.emplace_back(std::move(g.sum), g.count);
  }
  std::sort(merged.begin(), merged.end());
  SpectrumCloud cloud(d);
  for (auto& [p, m] : merged) cloud.add(std::move(p), m);
  return cloud;
}

/// Joint spectrum as a point multiset in R^d.
inline SpectrumCloud joint_spectrum(const CommutingFamily& fam, const JointSpectrumOptions& opt = {}) {
  auto basis = joint_eigenbasis(fam, opt);
  return merge_points(fam.count(), std::move(basis.labels), opt.merge_factor * fam.scale());
}

inline SpectrumCloud joint_spectrum(const CommutingFamily& fam, double tol, std::uint64_t seed) {
  JointSpectrumOptions opt;
  opt.tol = tol;
  opt.seed = seed;
  return joint_spectrum(fam, opt);
}

/// lambda_max(sum_j alpha_j T_j): the support function of the joint spectrum at alpha.
inline double support_via_lambda(const CommutingFamily& fam, std::span<const double> alpha) {
  if (alpha.size() != fam.count()) throw DimensionError("support_via_lambda: direction has wrong dimension");
  SymmetricMatrix m(fam.size());
  for (std::size_t j = 0; j < alpha.size(); ++j) m.add_scaled(alpha[j], fam.op(j));
  return lambda_max(m);
}

/// Support samples of sum_j alpha_j T_j over a direction set, evaluated
/// blockwise and in parallel over directions.
inline SupportSamples support_samples_via_lambda(const std::vector<SymmetricMatrix>& ops,
                                                 const std::vector<Point>& dirs, std::size_t threads = 1) {
  const BlockedFamily blocks(ops);
  SupportSamples s;
  s.dim = ops.size();
  s.directions = dirs;
  s.values.assign(dirs.size(), 0.0);
  parallel_for(dirs.size(), threads, [&](std::size_t i) {
    if (dirs[i].size() != ops.size()) throw DimensionError("support samples: direction has wrong dimension");
    s.values[i] = blocks.lambda_max(dirs[i]);
  });
  double c = 0.0;
  for (const auto& t : ops) {
    const double nt = operator_norm(t);
    c += nt * nt;
  }
  s.lipschitz_bound = std::sqrt(c);
  return s;
}

/// Hull of the joint spectrum through its support function.
inline SupportSamples hull_via_support(const CommutingFamily& fam, std::size_t n_dirs, std::size_t threads = 1) {
  return support_samples_via_lambda(fam.ops(), unit_directions(fam.count(), n_dirs), threads);
}

inline SupportSamples hull_via_support(const CommutingFamily& fam, const std::vector<Point>& dirs,
                                       std::size_t threads = 1) {
  return support_samples_via_lambda(fam.ops(), dirs, threads);
}

}  // namespace speclim
