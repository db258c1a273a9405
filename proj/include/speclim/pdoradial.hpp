#pragma once

// Rotationally symmetric Schroedinger operator -(hbar^2/2) Lap + V(|x|^2) on
// the plane, commuting with the angular momentum. Each angular sector l
// reduces to a radial problem; the joint spectrum is {(E, hbar*l)}.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "speclim/convexgeom.hpp"
#include "speclim/error.hpp"
#include "speclim/region.hpp"
#include "speclim/symspec.hpp"

namespace speclim {

/// V as a function of r = x1^2 + x2^2, with V' and, when known, the
/// closed form of g(z) = max_r (r z - r V(r)).
struct RadialPotential {
  std::string name;
  std::function<double(double)> V;
  std::function<double(double)> V_prime;
  std::optional<std::function<double(double)>> g_exact;

  /// V(0) = 0, V > 0, V' > 0 and V'' >= 0, checked on a sample of (0, 100].
  bool admissible() const {
    if (!V || !V_prime) return false;
    if (V(0.0) != 0.0) return false;
    double prev_slope = -INFINITY;
    for (int i = 1; i <= 2000; ++i) {
      const double r = 0.05 * i;
      if (!(V(r) > 0.0) || !(V_prime(r) > 0.0)) return false;
      const double slope = V_prime(r);
      if (slope < prev_slope - 1e-9 * std::max(1.0, std::abs(slope))) return false;
      prev_slope = slope;
    }
    return true;
  }

  static RadialPotential linear() {
    return {"r", [](double r) { return r; }, [](double) { return 1.0; },
            std::function<double(double)>([](double z) { return 0.25 * z * z; })};
  }
  static RadialPotential quadratic() {
    return {"r^2", [](double r) { return r * r; }, [](double r) { return 2.0 * r; },
            std::function<double(double)>([](double z) { return 2.0 * std::pow(z / 3.0, 1.5); })};
  }
  /// V(r) = r + r^2; g has no convenient closed form.
  static RadialPotential linear_quadratic() {
    return {"r+r^2", [](double r) { return r + r * r; }, [](double r) { return 1.0 + 2.0 * r; }, std::nullopt};
  }

  static RadialPotential by_name(const std::string& id) {
    if (id == "r" || id == "linear" || id == "harmonic") return linear();
    if (id == "r^2" || id == "quadratic") return quadratic();
    if (id == "r+r^2" || id == "linear_quadratic") return linear_quadratic();
    throw DomainError("unknown potential '" + id + "' (expected r, r^2 or r+r^2)");
  }
};

/// Half-line [0, R] with N interior cells of width h = R/(N+1).
struct RadialGrid {
  double R = 12.0;
  std::size_t N = 2400;

  double h() const { return R / static_cast<double>(N + 1); }
  void validate() const {
    if (!(R > 0.0)) throw DomainError("RadialGrid: R must be positive");
    if (N < 16) throw DomainError("RadialGrid: grid too coarse (N < 16)");
  }
};

namespace detail {

// Maximizer of a concave function on [lo, hi] by golden-section search.
inline double golden_max(const std::function<double(double)>& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

/// g(z) = max over r >= 0 of (r z - r V(r)); concave objective since rV is convex.
inline double legendre_g(const RadialPotential& pot, double z) {
  if (!(z >= 0.0)) throw DomainError("legendre_g: z must be nonnegative");
  if (!pot.V || !pot.V_prime) throw DomainError("legendre_g: potential is not admissible");
  if (z == 0.0) return 0.0;
  // derivative z - V(r) - r V'(r) is positive at 0; expand until it turns negative
  auto slope = [&](double r) { return z - pot.V(r) - r * pot.V_prime(r); };
  double hi = 1.0;
  for (int k = 0; slope(hi) > 0.0; ++k) {
    if (k > 200) throw DomainError("legendre_g: objective is unbounded for this potential");
    hi *= 2.0;
  }
  auto objective = [&](double r) { return r * z - r * pot.V(r); };
  const double r = detail::golden_max(objective, 0.0, hi);
  return std::max(0.0, objective(r));
}

/// {(H, F) : 0 <= H <= H_max, |F| <= sqrt(2 g(H))}.
inline ClassicalRegion classical_region_rot(const RadialPotential& pot, double H_max) {
  if (!(H_max > 0.0)) throw DomainError("classical_region_rot: H_max must be positive");
  auto width = [pot](double h) {
    const double g = pot.g_exact ? (*pot.g_exact)(h) : legendre_g(pot, h);
    return std::sqrt(2.0 * std::max(0.0, g));
  };
  ClassicalRegion r;
  r.name = "rotational(" + pot.name + ")";
  r.dim = 2;
  r.contains = [width, H_max](std::span<const double> p) {
    const double eps = 1e-12;
    return p[0] >= -eps && p[0] <= H_max + eps && std::abs(p[1]) <= width(std::clamp(p[0], 0.0, H_max)) + eps;
  };
  r.support = [width, H_max](std::span<const double> a) {
    const double ah = a[0];
    const double af = std::abs(a[1]);
    std::function<double(double)> obj = [&](double h) { return ah * h + af * width(h); };
    const double h = detail::golden_max(obj, 0.0, H_max);
    return std::max({obj(0.0), obj(H_max), obj(h)});
  };
  r.boundary_samples = [width, H_max](std::size_t n) {
    const std::size_t half = std::max<std::size_t>(n / 2, 2);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < half; ++i) {
      const double h = H_max * static_cast<double>(i) / static_cast<double>(half - 1);
      pts.push_back({h, -width(h)});
    }
    for (std::size_t i = half; i-- > 0;) {
      const double h = H_max * static_cast<double>(i) / static_cast<double>(half - 1);
      pts.push_back({h, width(h)});
    }
    return pts;
  };
  return r;
}

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> sub;
};

/// Finite-volume discretization of the sector-l radial operator
///   -(hbar^2/2)(v'' + v'/rho - l^2 v / rho^2) + V(rho^2) v
/// on cell centers rho_i = (i + 1/2) h with Dirichlet walls, symmetrized by
/// u = sqrt(rho) v. The flux form stays regular at the origin for l = 0.
inline Tridiagonal radial_tridiagonal(const RadialPotential& pot, double hbar, int l, const RadialGrid& grid) {
  grid.validate();
  if (!(hbar > 0.0)) throw DomainError("radial_hamiltonian: hbar must be positive");
  const std::size_t n = grid.N;
  const double h = grid.h();
  const double k = 0.5 * hbar * hbar;
  const double l2 = static_cast<double>(l) * static_cast<double>(l);
  Tridiagonal t{std::vector<double>(n), std::vector<double>(n - 1)};
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (static_cast<double>(i) + 0.5) * h;
    const double rp = r + 0.5 * h;
    const double rm = r - 0.5 * h;
    t.diag[i] = k * ((rp + rm) / (r * h * h) + l2 / (r * r)) + pot.V(r * r);
    if (i + 1 < n) {
      const double rn = r + h;
      t.sub[i] = -k * rp / (h * h * std::sqrt(r * rn));
    }
  }
  return t;
}

inline SymmetricMatrix radial_hamiltonian(const RadialPotential& pot, double hbar, int l, const RadialGrid& grid) {
  const auto t = radial_tridiagonal(pot, hbar, l, grid);
  SymmetricMatrix m(t.diag.size());
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    m.set(i, i, t.diag[i]);
    if (i + 1 < t.diag.size()) m.set(i, i + 1, t.sub[i]);
  }
  return m;
}

/// Points (E, hbar*l) for every sector eigenvalue E <= E_max, ordered by l
/// then E. Sectors are scanned outward until the sector ground state
/// exceeds E_max.
inline SpectrumCloud joint_spectrum_rot(const RadialPotential& pot, double hbar, double E_max,
                                        const RadialGrid& grid) {
  grid.validate();
  if (!(E_max < pot.V(grid.R * grid.R)))
    throw DomainError("joint_spectrum_rot: E_max must lie below the wall energy V(R^2) = " +
                      std::to_string(pot.V(grid.R * grid.R)) + "; truncation is unreliable");
  std::vector<std::vector<double>> sectors;  // sectors[l] for l >= 0
  for (int l = 0;; ++l) {
    auto t = radial_tridiagonal(pot, hbar, l, grid);
    const auto values = eigvalsh_tridiagonal(std::move(t.diag), t.sub);
    if (values.front() > E_max) break;
    std::vector<double> keep;
    for (double e : values)
      if (e <= E_max) keep.push_back(e);
    sectors.push_back(std::move(keep));
  }
  SpectrumCloud cloud(2);
  const int L = static_cast<int>(sectors.size()) - 1;
  for (int l = -L; l <= L; ++l)
    for (double e : sectors[static_cast<std::size_t>(std::abs(l))]) cloud.add({e, hbar * l});
  return cloud;
}

/// Exact joint spectrum for V(r) = r (the isotropic oscillator with
/// frequency sqrt 2): E = sqrt2 hbar (n + 1), F = hbar q, |q| <= n, q = n mod 2.
inline SpectrumCloud harmonic_oracle(double hbar, double E_max) {
  if (!(hbar > 0.0) || !(E_max > 0.0)) throw DomainError("harmonic_oracle: hbar and E_max must be positive");
  SpectrumCloud cloud(2);
  std::vector<Point> pts;
  for (int n = 0; std::numbers::sqrt2 * hbar * (n + 1) <= E_max; ++n)
    for (int q = -n; q <= n; q += 2) pts.push_back({std::numbers::sqrt2 * hbar * (n + 1), hbar * q});
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a[1] != b[1] ? a[1] < b[1] : a[0] < b[0];
  });
  for (auto& p : pts) cloud.add(std::move(p));
  return cloud;
}

/// Hausdorff distance between the hull of the joint points and the
/// classical region truncated at the window H <= E_max, via support functions.
inline double windowed_hausdorff(const SpectrumCloud& cloud, const RadialPotential& pot, double E_max,
                                 const std::vector<Point>& dirs) {
  if (cloud.empty()) throw DomainError("windowed_hausdorff: no joint spectrum points below E_max");
  const auto region = classical_region_rot(pot, E_max);
  double d = 0.0;
  for (const auto& a : dirs) d = std::max(d, std::abs(support_value(cloud, a) - region.support(a)));
  return d;
}

}  // namespace speclim
