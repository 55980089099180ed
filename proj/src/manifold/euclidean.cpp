#include "horodepth/manifold/euclidean.hpp"

#include <limits>
#include <string>

namespace horodepth {

Euclidean::Euclidean(int d, GeometryTolerances tol) : d_(d), tol_(tol) {
  if (d < 1) throw DimensionError("Euclidean dimension must be at least 1");
}

void Euclidean::check(const Point& x) const {
  if (x.coords.size() != d_) {
    throw DimensionError("point has dimension " + std::to_string(x.coords.size()) + ", expected " +
                         std::to_string(d_));
  }
}

Euclidean::Point Euclidean::make_point(Eigen::VectorXd x) const {
  Point p{std::move(x)};
  check(p);
  if (!p.coords.allFinite()) throw DomainError("point has non-finite coordinates");
  return p;
}

Euclidean::Direction Euclidean::make_direction(Eigen::VectorXd v) const {
  if (v.size() != d_) throw DimensionError("direction dimension mismatch");
  return Direction(std::move(v));
}

double Euclidean::busemann(const Direction& u, const Point& x) const {
  if (u.dim() != d_ || x.coords.size() != d_) throw DimensionError("busemann: dimension mismatch");
  return -u.coords().dot(x.coords);
}

double Euclidean::distance(const Point& x, const Point& y) const {
  check(x);
  check(y);
  return (x.coords - y.coords).norm();
}

Euclidean::Point Euclidean::geodesic_point(const Point& x, const Point& y, double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("geodesic parameter must lie in [0, 1]");
  check(x);
  check(y);
  if (s == 0.0) return x;
  if (s == 1.0) return y;
  return {(1.0 - s) * x.coords + s * y.coords};
}

Euclidean::Point Euclidean::exp_map(const Point& base, const Tangent& v) const {
  check(base);
  if (v.size() != d_) throw DimensionError("tangent dimension mismatch");
  return {base.coords + v};
}

Euclidean::Tangent Euclidean::log_map(const Point& base, const Point& x) const {
  check(base);
  check(x);
  return x.coords - base.coords;
}

double Euclidean::tangent_norm(const Point&, const Tangent& v) const { return v.norm(); }

double Euclidean::tangent_inner(const Point&, const Tangent& a, const Tangent& b) const { return a.dot(b); }

std::vector<Euclidean::Tangent> Euclidean::tangent_basis(const Point&) const {
  std::vector<Tangent> out;
  for (int k = 0; k < d_; ++k) out.push_back(Tangent::Unit(d_, k));
  return out;
}

Euclidean::Point Euclidean::ray_point(const Point& base, const Direction& u, double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("ray parameter must be nonnegative");
  check(base);
  if (u.dim() != d_) throw DimensionError("direction dimension mismatch");
  // B_u(x) = -<u, x> decreases along +u
  return {base.coords + t * u.coords()};
}

double Euclidean::max_ray_parameter(const Point&, const Direction&) const {
  return std::numeric_limits<double>::max();
}

std::vector<Euclidean::Direction> Euclidean::sample_directions(std::size_t m, std::uint64_t seed) const {
  return sample_sphere_directions(d_, m, seed);
}

std::vector<Euclidean::Direction> Euclidean::grid_directions(std::size_t m) const {
  if (d_ != 2) throw DimensionError("grid directions are only defined for d = 2");
  return circle_grid_directions(m);
}

std::vector<Eigen::VectorXd> Euclidean::direction_tangent_basis(const Direction& u) const {
  return sphere_tangent_basis(u.coords());
}

Euclidean::Point Euclidean::apply_isometry(const OrthogonalMap& q, const Point& x) const {
  if (q.size() != d_) throw DimensionError("isometry dimension mismatch");
  return {q.matrix() * x.coords};
}

Euclidean::Direction Euclidean::boundary_action(const OrthogonalMap& q, const Direction& u) const {
  if (q.size() != d_) throw DimensionError("isometry dimension mismatch");
  return Direction(q.matrix() * u.coords());
}

std::vector<double> Euclidean::to_row(const Point& x) const {
  return {x.coords.data(), x.coords.data() + x.coords.size()};
}

Euclidean::Point Euclidean::from_row(std::span<const double> row) const {
  if (row.size() != row_width()) throw DimensionError("row width mismatch");
  return make_point(Eigen::Map<const Eigen::VectorXd>(row.data(), static_cast<Eigen::Index>(row.size())));
}

}  // namespace horodepth
