#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "horodepth/depth/profile.hpp"
#include "horodepth/depth/region.hpp"
#include "horodepth/manifold/manifold.hpp"
#include "horodepth/util/parallel.hpp"

namespace horodepth {

/// Regular nx x ny lattice on [x0, x1] x [y0, y1]. For the SPD cone (p = 2) the
/// lattice parametrizes the slice [[u, offset], [offset, v]].
struct GridSpec {
  double x0 = -1.0;
  double x1 = 1.0;
  double y0 = -1.0;
  double y1 = 1.0;
  std::size_t nx = 50;
  std::size_t ny = 50;
  double offset = 0.0;

  void validate() const {
    if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs at least 2 x 2 nodes");
    if (!(x1 > x0) || !(y1 > y0)) throw std::invalid_argument("grid extent must be nonempty");
  }
  double x(std::size_t i) const { return x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(nx - 1); }
  double y(std::size_t j) const { return y0 + (y1 - y0) * static_cast<double>(j) / static_cast<double>(ny - 1); }
  std::size_t size() const { return nx * ny; }
};

/// Values on a GridSpec, row-major in x (index j * nx + i); NaN marks masked nodes.
struct ScalarField {
  GridSpec grid;
  std::vector<double> values;
  double at(std::size_t i, std::size_t j) const { return values[j * grid.nx + i]; }
};

using Polyline = std::vector<std::array<double, 2>>;

/// Marching squares for the level set {f = level}, with linear interpolation
/// along cell edges. Cells touching a masked node are skipped. Segments are
/// joined into polylines; closed curves repeat their first vertex at the end.
std::vector<Polyline> trace_contour(const ScalarField& field, double level);

/// Manifold point at lattice node (u, v), or nothing where the node lies
/// outside the model domain (ball: |x| <= 1 - 1e-6; SPD slice: u > 0 and
/// det >= 1e-9).
template <Manifold M>
std::optional<typename M::Point> grid_point(const M& m, const GridSpec& g, double u, double v) {
  if constexpr (std::is_same_v<M, PoincareBall>) {
    if (m.ambient_dim() != 2) throw DimensionError("contours need a two-dimensional ball");
    if (std::hypot(u, v) > 1.0 - 1e-6) return std::nullopt;
    return m.make_point(Eigen::Vector2d(u, v));
  } else if constexpr (std::is_same_v<M, Euclidean>) {
    if (m.ambient_dim() != 2) throw DimensionError("contours need two-dimensional Euclidean space");
    return m.make_point(Eigen::Vector2d(u, v));
  } else {
    if (m.matrix_size() != 2) throw DimensionError("contours on the SPD cone need p = 2");
    if (!(u > 0.0) || u * v - g.offset * g.offset < 1e-9) return std::nullopt;
    Eigen::MatrixXd x(2, 2);
    x << u, g.offset, g.offset, v;
    return m.make_point(x);
  }
}

/// All unmasked lattice points, in lattice order.
template <Manifold M>
std::vector<typename M::Point> grid_points(const M& m, const GridSpec& g) {
  g.validate();
  std::vector<typename M::Point> out;
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      if (auto p = grid_point(m, g, g.x(i), g.y(j))) out.push_back(std::move(*p));
    }
  }
  return out;
}

/// f evaluated at every unmasked node.
template <Manifold M, class F>
ScalarField sample_field(const M& m, const GridSpec& g, F&& f) {
  g.validate();
  ScalarField field{g, std::vector<double>(g.size(), std::numeric_limits<double>::quiet_NaN())};
  parallel_for(g.size(), [&](std::size_t k) {
    const std::size_t i = k % g.nx;
    const std::size_t j = k / g.nx;
    if (auto p = grid_point(m, g, g.x(i), g.y(j))) field.values[k] = f(*p);
  }, 64);
  return field;
}

/// Membership functional F of a region on the grid.
template <Manifold M>
ScalarField region_field(const M& m, const DepthRegion<M>& region, const GridSpec& g) {
  return sample_field(m, g, [&](const typename M::Point& z) { return region_membership(m, region, z).F; });
}

template <Manifold M>
ScalarField depth_field(const DepthProfile<M>& profile, const GridSpec& g) {
  return sample_field(profile.manifold(), g, [&](const typename M::Point& z) { return profile.depth(z).value; });
}

/// Boundary of a region as polylines (level 0 of F). An empty region has none.
template <Manifold M>
std::vector<Polyline> region_contour(const M& m, const DepthRegion<M>& region, const GridSpec& g) {
  if (region.empty) return {};
  ScalarField f = region_field(m, region, g);
  for (double& v : f.values) {
    if (std::isinf(v)) v = v > 0 ? 1e300 : -1e300;
  }
  return trace_contour(f, 0.0);
}

}  // namespace horodepth
