#pragma once

#include <cstdint>
#include <vector>

#include "horodepth/manifold/euclidean.hpp"

namespace horodepth {

/// k / n as an exact pair.
struct TukeyDepth {
  std::uint64_t k = 0;
  std::uint64_t n = 0;
  double value() const { return n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n); }
};

/// Exact halfspace depth of z in the plane: the minimum over unit u of
/// #{x_i : <u, x_i> <= <u, z>}. The count is piecewise constant in the angle of
/// u and only changes where u is orthogonal to x_i - z, so it is evaluated at
/// the midpoint of every arc between consecutive critical angles.
TukeyDepth exact_tukey_depth_2d(const EuclideanPoint& z, const std::vector<EuclideanPoint>& pts);

}  // namespace horodepth
