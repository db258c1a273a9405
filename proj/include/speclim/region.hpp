#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "speclim/convexgeom.hpp"

namespace speclim {

/// Analytic description of a classical spectrum: membership, boundary
/// parameterization and support function.
struct ClassicalRegion {
  std::string name;
  std::size_t dim = 0;
  std::function<bool(std::span<const double>)> contains;
  std::function<std::vector<Point>(std::size_t)> boundary_samples;
  std::function<double(std::span<const double>)> support;

  SupportSamples sample(const std::vector<Point>& dirs) const {
    SupportSamples s;
    s.dim = dim;
    s.directions = dirs;
    s.values.reserve(dirs.size());
    for (const auto& a : dirs) s.values.push_back(support(a));
    return s;
  }
};

}  // namespace speclim
