#pragma once

// Support functions, planar hulls, halfplane reconstruction and Hausdorff
// distances. Convex sets in any dimension are carried by sampled support
// functions; the plane additionally gets exact polygons.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "speclim/error.hpp"

namespace speclim {

using Point = std::vector<double>;
using Point2 = std::array<double, 2>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// Finite multiset of points in R^d.
class SpectrumCloud {
 public:
  explicit SpectrumCloud(std::size_t d) : d_(d) {
    if (d == 0) throw DimensionError("SpectrumCloud: dimension must be positive");
  }

  void add(Point p, std::size_t multiplicity = 1) {
    if (p.size() != d_) throw DimensionError("SpectrumCloud: point has wrong dimension");
    if (multiplicity == 0) throw DomainError("SpectrumCloud: multiplicity must be positive");
    points_.push_back(std::move(p));
    mult_.push_back(multiplicity);
  }

  std::size_t dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const std::vector<Point>& points() const noexcept { return points_; }
  const std::vector<std::size_t>& multiplicities() const noexcept { return mult_; }

  /// Sum of multiplicities.
  std::size_t total_count() const {
    std::size_t t = 0;
    for (auto m : mult_) t += m;
    return t;
  }

  double max_norm() const {
    double c = 0.0;
    for (const auto& p : points_) c = std::max(c, norm(p));
    return c;
  }

 private:
  std::size_t d_;
  std::vector<Point> points_;
  std::vector<std::size_t> mult_;
};

/// Support function sampled on a direction set. lipschitz_bound < 0 marks
/// an unknown constant.
struct SupportSamples {
  std::size_t dim = 0;
  std::vector<Point> directions;
  std::vector<double> values;
  double lipschitz_bound = -1.0;

  /// Largest |phi(a) - phi(b)| / |a - b| violation of the Lipschitz bound
  /// over all sampled pairs; <= 0 when the bound holds.
  double lipschitz_excess() const {
    double worst = -INFINITY;
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (std::size_t j = i + 1; j < values.size(); ++j) {
        double dist = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
          const double t = directions[i][k] - directions[j][k];
          dist += t * t;
        }
        worst = std::max(worst, std::abs(values[i] - values[j]) - lipschitz_bound * std::sqrt(dist));
      }
    }
    return worst;
  }
};

/// Counterclockwise vertex list; 1 vertex for a point, 2 for a segment.
struct ConvexPolygon {
  std::vector<Point2> vertices;

  double signed_area() const {
    double a = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& p = vertices[i];
      const auto& q = vertices[(i + 1) % n];
      a += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * a;
  }

  double support(std::span<const double> alpha) const {
    if (vertices.empty()) throw DomainError("ConvexPolygon::support: empty polygon");
    double s = -INFINITY;
    for (const auto& v : vertices) s = std::max(s, v[0] * alpha[0] + v[1] * alpha[1]);
    return s;
  }

  /// Signed distance-like test: max over edges of the outward halfplane
  /// excess of p. Nonpositive means inside (for proper polygons).
  double max_edge_excess(const Point2& p) const {
    const std::size_t n = vertices.size();
    if (n < 3) return INFINITY;
    double worst = -INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = vertices[i];
      const auto& b = vertices[(i + 1) % n];
      const double ex = b[0] - a[0];
      const double ey = b[1] - a[1];
      const double len = std::hypot(ex, ey);
      // outward normal of a counterclockwise edge
      const double nx = ey / len;
      const double ny = -ex / len;
      worst = std::max(worst, (p[0] - a[0]) * nx + (p[1] - a[1]) * ny);
    }
    return worst;
  }
};

inline double support_value(const SpectrumCloud& cloud, std::span<const double> alpha) {
  if (cloud.empty()) throw DomainError("support_value: empty cloud");
  if (alpha.size() != cloud.dim()) throw DimensionError("support_value: direction has wrong dimension");
  double s = -INFINITY;
  for (const auto& p : cloud.points()) s = std::max(s, dot(p, alpha));
  return s;
}

namespace detail {

inline double radical_inverse(std::size_t i, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

inline unsigned nth_prime(std::size_t k) {
  unsigned p = 1;
  for (std::size_t found = 0; found <= k;) {
    ++p;
    bool prime = true;
    for (unsigned q = 2; q * q <= p; ++q)
      if (p % q == 0) {
        prime = false;
        break;
      }
    if (prime) ++found;
  }
  return p;
}

}  // namespace detail

/// Deterministic direction set on S^{d-1}: the pair {+1, -1} for d = 1,
/// equally spaced angles 2*pi*k/n for d = 2, and for d >= 3 a Halton
/// sequence pushed through the Gaussian quantile and normalized.
inline std::vector<Point> unit_directions(std::size_t d, std::size_t n) {
  if (d == 0) throw DimensionError("unit_directions: dimension must be positive");
  std::vector<Point> dirs;
  if (d == 1) {
    dirs.push_back({1.0});
    dirs.push_back({-1.0});
    return dirs;
  }
  if (n < 3) throw DomainError("unit_directions: need at least 3 directions");
  dirs.reserve(n);
  if (d == 2) {
    for (std::size_t k = 0; k < n; ++k) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      dirs.push_back({std::cos(t), std::sin(t)});
    }
    return dirs;
  }
  std::vector<unsigned> bases(d);
  for (std::size_t k = 0; k < d; ++k) bases[k] = detail::nth_prime(k);
  for (std::size_t i = 1; dirs.size() < n; ++i) {
    Point g(d);
    for (std::size_t k = 0; k < d; ++k) {
      const double u = detail::radical_inverse(i, bases[k]);
      g[k] = std::sqrt(2.0) * boost::math::erf_inv(2.0 * u - 1.0);
    }
    const double r = norm(g);
    if (r < 1e-12) continue;
    for (double& x : g) x /= r;
    dirs.push_back(std::move(g));
  }
  return dirs;
}

inline SupportSamples sample_support(const SpectrumCloud& cloud, const std::vector<Point>& dirs) {
  if (cloud.empty()) throw DomainError("sample_support: empty cloud");
  SupportSamples s;
  s.dim = cloud.dim();
  s.directions = dirs;
  s.values.reserve(dirs.size());
  for (const auto& a : dirs) s.values.push_back(support_value(cloud, a));
  s.lipschitz_bound = cloud.max_norm();
  return s;
}

inline SupportSamples sample_support(const SpectrumCloud& cloud, std::size_t n_dirs) {
  if (n_dirs < 3) throw DomainError("sample_support: need at least 3 directions");
  return sample_support(cloud, unit_directions(cloud.dim(), n_dirs));
}

inline double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Andrew's monotone chain; collinear boundary points are dropped.
inline ConvexPolygon hull2d(std::vector<Point2> pts) {
  if (pts.empty()) throw DomainError("hull2d: empty input");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return {pts};
  std::vector<Point2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0.0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return {h};
}

inline ConvexPolygon hull2d(const SpectrumCloud& cloud) {
  if (cloud.dim() != 2) throw DimensionError("hull2d: cloud must be planar");
  std::vector<Point2> pts;
  pts.reserve(cloud.size());
  for (const auto& p : cloud.points()) pts.push_back({p[0], p[1]});
  return hull2d(std::move(pts));
}

inline SpectrumCloud to_cloud(const ConvexPolygon& poly) {
  SpectrumCloud c(2);
  for (const auto& v : poly.vertices) c.add({v[0], v[1]});
  return c;
}

/// Intersection of the halfplanes <x, alpha_k> <= phi_k.
inline ConvexPolygon reconstruct_from_support(const SupportSamples& s) {
  if (s.dim != 2) throw DimensionError("reconstruct_from_support: planar samples required");
  if (s.directions.size() < 3) throw DomainError("reconstruct_from_support: need at least 3 directions");

  std::vector<double> angles;
  for (const auto& a : s.directions) angles.push_back(std::atan2(a[1], a[0]));
  std::sort(angles.begin(), angles.end());
  double gap = angles.front() + 2.0 * std::numbers::pi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
  if (gap >= std::numbers::pi - 1e-12)
    throw DomainError("reconstruct_from_support: directions do not span the circle, intersection unbounded");

  double phi_max = 0.0;
  for (double v : s.values) phi_max = std::max(phi_max, std::abs(v));
  // every point of the intersection lies within phi_max / cos(gap / 2)
  const double box = 2.0 * phi_max / std::cos(0.5 * gap) + 1.0;
  std::vector<Point2> poly{{-box, -box}, {box, -box}, {box, box}, {-box, box}};

  for (std::size_t k = 0; k < s.values.size() && !poly.empty(); ++k) {
    const double ax = s.directions[k][0];
    const double ay = s.directions[k][1];
    const double c = s.values[k];
    std::vector<Point2> next;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2& p = poly[i];
      const Point2& q = poly[(i + 1) % n];
      const double fp = ax * p[0] + ay * p[1] - c;
      const double fq = ax * q[0] + ay * q[1] - c;
      if (fp <= 0.0) next.push_back(p);
      if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
        const double t = fp / (fp - fq);
        next.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
      }
    }
    poly = std::move(next);
  }
  if (poly.empty()) throw DomainError("reconstruct_from_support: empty intersection (inconsistent support values)");

  // collapse near-duplicate and collinear vertices left by the clipping
  const double eps = 1e-12 * std::max(1.0, phi_max);
  std::vector<Point2> clean;
  for (const auto& p : poly) {
    if (clean.empty() || std::hypot(p[0] - clean.back()[0], p[1] - clean.back()[1]) > eps) clean.push_back(p);
  }
  while (clean.size() > 1 &&
         std::hypot(clean.front()[0] - clean.back()[0], clean.front()[1] - clean.back()[1]) <= eps)
    clean.pop_back();
  bool changed = true;
  while (changed && clean.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < clean.size(); ++i) {
      const auto& a = clean[(i + clean.size() - 1) % clean.size()];
      const auto& b = clean[i];
      const auto& c = clean[(i + 1) % clean.size()];
      const double len = std::hypot(c[0] - a[0], c[1] - a[1]);
      if (std::abs(cross(a, b, c)) <= eps * std::max(len, eps)) {
        clean.erase(clean.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return {clean};
}

inline bool same_directions(const SupportSamples& a, const SupportSamples& b) {
  if (a.dim != b.dim || a.directions.size() != b.directions.size()) return false;
  for (std::size_t i = 0; i < a.directions.size(); ++i)
    for (std::size_t k = 0; k < a.dim; ++k)
      if (std::abs(a.directions[i][k] - b.directions[i][k]) > 1e-12) return false;
  return true;
}

/// max_alpha |phi_a(alpha) - phi_b(alpha)|; the Hausdorff distance of the
/// two convex hulls up to the angular-mesh error.
inline double hausdorff_convex(const SupportSamples& a, const SupportSamples& b) {
  if (!same_directions(a, b)) throw DimensionError("hausdorff_convex: direction sets differ");
  double d = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

/// Exact two-sided Hausdorff distance between finite point sets.
inline double hausdorff_points(const SpectrumCloud& a, const SpectrumCloud& b) {
  if (a.empty() || b.empty()) throw DomainError("hausdorff_points: empty input");
  if (a.dim() != b.dim()) throw DimensionError("hausdorff_points: dimension mismatch");
  auto one_sided = [](const SpectrumCloud& x, const SpectrumCloud& y) {
    double worst = 0.0;
    for (const auto& p : x.points()) {
      double best = INFINITY;
      for (const auto& q : y.points()) {
        double s = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) s += (p[k] - q[k]) * (p[k] - q[k]);
        best = std::min(best, s);
      }
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

/// Angular mesh width of a planar direction set (largest gap between consecutive angles).
inline double angular_mesh(const std::vector<Point>& dirs) {
  std::vector<double> angles;
  for (const auto& a : dirs) angles.push_back(std::atan2(a[1], a[0]));
  std::sort(angles.begin(), angles.end());
  double gap = angles.front() + 2.0 * std::numbers::pi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
  return gap;
}

}  // namespace speclim
