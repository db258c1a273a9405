#pragma once

// Expectation map, joint numerical range and its convex hull Sigma for
// families that need not commute.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "speclim/convexgeom.hpp"
#include "speclim/error.hpp"
#include "speclim/jointspec.hpp"
#include "speclim/parallel.hpp"
#include "speclim/random.hpp"
#include "speclim/region.hpp"
#include "speclim/symspec.hpp"

namespace speclim {

/// Density matrix sum_k w_k v_k v_k^T with orthonormal v_k.
class MixedState {
 public:
  MixedState(std::vector<double> weights, std::vector<std::vector<double>> vectors)
      : weights_(std::move(weights)), vectors_(std::move(vectors)) {
    if (weights_.empty() || weights_.size() != vectors_.size())
      throw DimensionError("MixedState: one weight per vector required");
    n_ = vectors_.front().size();
    double total = 0.0;
    for (double w : weights_) {
      if (!(w >= 0.0)) throw DomainError("MixedState: weights must be nonnegative");
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("MixedState: weights must sum to 1");
    for (std::size_t a = 0; a < vectors_.size(); ++a) {
      if (vectors_[a].size() != n_) throw DimensionError("MixedState: vectors differ in length");
      for (std::size_t b = a; b < vectors_.size(); ++b) {
        const double g = dot(vectors_[a], vectors_[b]);
        if (std::abs(g - (a == b ? 1.0 : 0.0)) > 1e-10) throw DomainError("MixedState: vectors are not orthonormal");
      }
    }
  }

  static MixedState pure(std::vector<double> v) { return MixedState({1.0}, {std::move(v)}); }

  /// Id / n.
  static MixedState maximally_mixed(std::size_t n) {
    std::vector<std::vector<double>> e(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) e[i][i] = 1.0;
    return MixedState(std::vector<double>(n, 1.0 / static_cast<double>(n)), std::move(e));
  }

  std::size_t dim() const noexcept { return n_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<std::vector<double>>& vectors() const noexcept { return vectors_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> weights_;
  std::vector<std::vector<double>> vectors_;
};

/// (trace(T_1 Q), ..., trace(T_d Q)).
inline Point expectation(const std::vector<SymmetricMatrix>& fam, const MixedState& q) {
  Point out;
  out.reserve(fam.size());
  for (const auto& t : fam) {
    if (t.size() != q.dim()) throw DimensionError("expectation: state and operator dimensions differ");
    double s = 0.0;
    for (std::size_t k = 0; k < q.weights().size(); ++k) s += q.weights()[k] * rayleigh_quotient(t, q.vectors()[k]);
    out.push_back(s);
  }
  return out;
}

/// Uniformly distributed unit vector for sample `index` of a run.
inline std::vector<double> random_unit_vector(std::size_t n, std::uint64_t seed, std::uint64_t index) {
  auto rng = stream_for(seed, index);
  std::vector<double> u(n);
  double r = 0.0;
  while (r == 0.0) {
    for (auto& v : u) v = rng.gaussian();
    r = norm(u);
  }
  for (auto& v : u) v /= r;
  return u;
}

/// N pure-state expectation points. Sample i draws from its own stream, so
/// the output does not depend on the thread count.
inline SpectrumCloud sample_numerical_range(const std::vector<SymmetricMatrix>& fam, std::size_t N,
                                            std::uint64_t seed, std::size_t threads = 1) {
  if (fam.empty()) throw DimensionError("sample_numerical_range: empty family");
  if (N < 1) throw DomainError("sample_numerical_range: N must be at least 1");
  const std::size_t n = fam.front().size();
  std::vector<Point> pts(N);
  parallel_for(N, threads, [&](std::size_t i) {
    const auto u = random_unit_vector(n, seed, i);
    Point p(fam.size());
    for (std::size_t j = 0; j < fam.size(); ++j) p[j] = rayleigh_quotient(fam[j], u);
    pts[i] = std::move(p);
  });
  SpectrumCloud cloud(fam.size());
  for (auto& p : pts) cloud.add(std::move(p));
  return cloud;
}

/// lambda_max(sum alpha_j T_j), the support function of Sigma(T_1, ..., T_d).
inline double sigma_support(const std::vector<SymmetricMatrix>& fam, std::span<const double> alpha) {
  if (alpha.size() != fam.size()) throw DimensionError("sigma_support: direction has wrong dimension");
  SymmetricMatrix m(fam.front().size());
  for (std::size_t j = 0; j < fam.size(); ++j) m.add_scaled(alpha[j], fam[j]);
  return lambda_max(m);
}

inline SupportSamples sigma_region(const std::vector<SymmetricMatrix>& fam, const std::vector<Point>& dirs,
                                   std::size_t threads = 1) {
  return support_samples_via_lambda(fam, dirs, threads);
}

inline SupportSamples sigma_region(const std::vector<SymmetricMatrix>& fam, std::size_t n_dirs,
                                   std::size_t threads = 1) {
  return sigma_region(fam, unit_directions(fam.size(), n_dirs), threads);
}

/// Unit disk: the image of the sphere under two of its coordinates.
inline ClassicalRegion unit_disk_region() {
  ClassicalRegion r;
  r.name = "unit disk";
  r.dim = 2;
  r.contains = [](std::span<const double> p) { return p[0] * p[0] + p[1] * p[1] <= 1.0 + 1e-12; };
  r.support = [](std::span<const double> a) { return norm(a); };
  r.boundary_samples = [](std::size_t n) {
    std::vector<Point> pts;
    for (std::size_t k = 0; k < n; ++k) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      pts.push_back({std::cos(t), std::sin(t)});
    }
    return pts;
  };
  return r;
}

/// Largest violation of the halfspaces <x, alpha> <= Phi(alpha) by the cloud.
inline double containment_violation(const SpectrumCloud& cloud, const SupportSamples& s) {
  double worst = -INFINITY;
  for (std::size_t k = 0; k < s.directions.size(); ++k)
    worst = std::max(worst, support_value(cloud, s.directions[k]) - s.values[k]);
  return worst;
}

}  // namespace speclim
