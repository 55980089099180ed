#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "horodepth/common.hpp"
#include "horodepth/manifold/sphere.hpp"

namespace horodepth {

/// A point of the Poincare ball. Besides the coordinates it stores the radial
/// gap 1 - |x| and the unit radial direction, both carried to full relative
/// precision. Far from the origin the coordinates alone cannot resolve
/// distances to the boundary sphere; the gap can.
class BallPoint {
 public:
  BallPoint() = default;

  const Eigen::VectorXd& coords() const { return x_; }
  /// 1 - |x|, accurate even when |x| rounds to 1.
  double gap() const { return gap_; }
  double radius() const { return 1.0 - gap_; }
  /// 1 - |x|^2
  double deficit() const { return gap_ * (2.0 - gap_); }
  /// x / |x|, or the zero vector at the origin.
  const Eigen::VectorXd& unit() const { return u_; }
  Eigen::Index dim() const { return x_.size(); }

 private:
  friend class PoincareBall;
  Eigen::VectorXd x_;
  Eigen::VectorXd u_;
  double gap_ = 1.0;
};

/// Hyperbolic space H^d in the Poincare ball model, curvature -1.
/// B_xi(x) = log |x - xi|^2 - log(1 - |x|^2).
class PoincareBall {
 public:
  using Point = BallPoint;
  using Direction = SphereDirection;
  using Tangent = Eigen::VectorXd;  // ball coordinates; metric (2 / (1 - |x|^2))^2 <.,.>

  explicit PoincareBall(int d, GeometryTolerances tol = {});

  static constexpr std::string_view name() { return "ball"; }
  int ambient_dim() const { return d_; }
  int dimension() const { return d_; }
  const GeometryTolerances& tolerances() const { return tol_; }

  Point base_point() const;
  /// Validates |x| < 1; inputs within the margin of the sphere are pulled inward.
  Point make_point(Eigen::VectorXd x) const;
  /// Point at radius 1 - gap along a unit vector.
  Point from_polar(const Eigen::VectorXd& unit, double gap) const;
  Direction make_direction(Eigen::VectorXd v) const;

  double busemann(const Direction& xi, const Point& x) const;
  double distance(const Point& x, const Point& y) const;
  Point geodesic_point(const Point& x, const Point& y, double s) const;
  Point exp_map(const Point& base, const Tangent& v) const;
  Tangent log_map(const Point& base, const Point& x) const;
  double tangent_norm(const Point& base, const Tangent& v) const;
  double tangent_inner(const Point& base, const Tangent& a, const Tangent& b) const;
  Tangent zero_tangent(const Point&) const { return Tangent::Zero(d_); }
  std::vector<Tangent> tangent_basis(const Point& base) const;
  /// Unit-speed ray from base toward xi; B_xi decreases by exactly t along it.
  Point ray_point(const Point& base, const Direction& xi, double t) const;
  /// Largest t for which ray_point stays representable (1 - |x|^2 > 0 in doubles).
  double max_ray_parameter(const Point& base, const Direction& xi) const;

  std::vector<Direction> sample_directions(std::size_t m, std::uint64_t seed) const;
  std::vector<Direction> grid_directions(std::size_t m) const;
  const Eigen::VectorXd& direction_coords(const Direction& u) const { return u.coords(); }
  std::vector<Eigen::VectorXd> direction_tangent_basis(const Direction& u) const;

  Point apply_isometry(const OrthogonalMap& q, const Point& x) const;
  Direction boundary_action(const OrthogonalMap& q, const Direction& u) const;

  std::size_t row_width() const { return static_cast<std::size_t>(d_); }
  std::vector<double> to_row(const Point& x) const;
  Point from_row(std::span<const double> row) const;

  /// |x - xi|^2 evaluated from the gap representation.
  double boundary_sq_distance(const Direction& xi, const Point& x) const;

 private:
  struct Hyperboloid {
    double y0;
    Eigen::VectorXd ys;
  };
  Hyperboloid lift(const Point& x) const;
  Point project(const Hyperboloid& y) const;
  Point from_coords_and_deficit(Eigen::VectorXd x, double deficit) const;
  /// Mobius addition; the deficit of the sum is formed multiplicatively.
  Point mobius_add(const Eigen::VectorXd& x, double dx, const Eigen::VectorXd& y, double dy) const;
  void check(const Point& x) const;

  int d_;
  GeometryTolerances tol_;
};

}  // namespace horodepth
