#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "horodepth/common.hpp"
#include "horodepth/manifold/sphere.hpp"

namespace horodepth {

struct EuclideanPoint {
  Eigen::VectorXd coords;
};

using EuclideanDirection = SphereDirection;

/// Flat R^d. Busemann functions are the affine functionals x -> -<u, x>.
class Euclidean {
 public:
  using Point = EuclideanPoint;
  using Direction = SphereDirection;
  using Tangent = Eigen::VectorXd;

  explicit Euclidean(int d, GeometryTolerances tol = {});

  static constexpr std::string_view name() { return "euclidean"; }
  int ambient_dim() const { return d_; }
  int dimension() const { return d_; }
  const GeometryTolerances& tolerances() const { return tol_; }

  Point base_point() const { return {Eigen::VectorXd::Zero(d_)}; }
  Point make_point(Eigen::VectorXd x) const;
  Direction make_direction(Eigen::VectorXd v) const;

  double busemann(const Direction& u, const Point& x) const;
  double distance(const Point& x, const Point& y) const;
  Point geodesic_point(const Point& x, const Point& y, double s) const;
  Point exp_map(const Point& base, const Tangent& v) const;
  Tangent log_map(const Point& base, const Point& x) const;
  double tangent_norm(const Point& base, const Tangent& v) const;
  double tangent_inner(const Point& base, const Tangent& a, const Tangent& b) const;
  Tangent zero_tangent(const Point&) const { return Tangent::Zero(d_); }
  std::vector<Tangent> tangent_basis(const Point& base) const;
  Point ray_point(const Point& base, const Direction& u, double t) const;
  double max_ray_parameter(const Point&, const Direction&) const;

  std::vector<Direction> sample_directions(std::size_t m, std::uint64_t seed) const;
  std::vector<Direction> grid_directions(std::size_t m) const;
  const Eigen::VectorXd& direction_coords(const Direction& u) const { return u.coords(); }
  std::vector<Eigen::VectorXd> direction_tangent_basis(const Direction& u) const;

  Point apply_isometry(const OrthogonalMap& q, const Point& x) const;
  Direction boundary_action(const OrthogonalMap& q, const Direction& u) const;

  std::size_t row_width() const { return static_cast<std::size_t>(d_); }
  std::vector<double> to_row(const Point& x) const;
  Point from_row(std::span<const double> row) const;

 private:
  void check(const Point& x) const;
  int d_;
  GeometryTolerances tol_;
};

}  // namespace horodepth
