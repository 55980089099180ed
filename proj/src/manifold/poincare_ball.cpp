#include "horodepth/manifold/poincare_ball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace horodepth {

PoincareBall::PoincareBall(int d, GeometryTolerances tol) : d_(d), tol_(tol) {
  if (d < 1) throw DimensionError("ball dimension must be at least 1");
}

void PoincareBall::check(const Point& x) const {
  if (x.x_.size() != d_) {
    throw DimensionError("point has dimension " + std::to_string(x.x_.size()) + ", expected " +
                         std::to_string(d_));
  }
}

PoincareBall::Point PoincareBall::base_point() const {
  Point p;
  p.x_ = Eigen::VectorXd::Zero(d_);
  p.u_ = Eigen::VectorXd::Zero(d_);
  p.gap_ = 1.0;
  return p;
}

PoincareBall::Point PoincareBall::make_point(Eigen::VectorXd x) const {
  if (x.size() != d_) {
    throw DimensionError("point has dimension " + std::to_string(x.size()) + ", expected " + std::to_string(d_));
  }
  if (!x.allFinite()) throw DomainError("point has non-finite coordinates");
  const double r = x.norm();
  if (!(r < 1.0)) throw DomainError("point lies on or outside the unit sphere (|x| = " + std::to_string(r) + ")");
  if (r == 0.0) return base_point();
  Point p;
  p.u_ = x / r;
  const double rmax = 1.0 - tol_.ball_margin;
  if (r > rmax) {
    p.gap_ = tol_.ball_margin;
    p.x_ = rmax * p.u_;
  } else {
    p.gap_ = 1.0 - r;
    p.x_ = std::move(x);
  }
  return p;
}

PoincareBall::Point PoincareBall::from_polar(const Eigen::VectorXd& unit, double gap) const {
  if (unit.size() != d_) throw DimensionError("polar direction dimension mismatch");
  if (!(gap > 0.0 && gap <= 1.0)) throw DomainError("radial gap must lie in (0, 1]");
  if (gap == 1.0) return base_point();
  Point p;
  p.u_ = unit / unit.norm();
  p.gap_ = gap;
  p.x_ = (1.0 - gap) * p.u_;
  return p;
}

PoincareBall::Point PoincareBall::from_coords_and_deficit(Eigen::VectorXd x, double deficit) const {
  if (!x.allFinite() || !(deficit > 0.0)) {
    throw DomainError("point left the representable ball (1 - |x|^2 underflowed)");
  }
  const double r = x.norm();
  if (r == 0.0) return base_point();
  // away from the sphere the coordinates fix 1 - |x|^2 to full relative
  // precision; the propagated deficit can be much worse after cancellation
  const double from_coords = (1.0 - r) * (1.0 + r);
  if (from_coords > 1e-3) deficit = from_coords;
  Point p;
  p.u_ = x / r;
  p.gap_ = std::min(1.0, deficit / (1.0 + std::min(r, 1.0)));
  p.x_ = std::move(x);
  return p;
}

PoincareBall::Direction PoincareBall::make_direction(Eigen::VectorXd v) const {
  if (v.size() != d_) throw DimensionError("direction dimension mismatch");
  return Direction(std::move(v));
}

double PoincareBall::boundary_sq_distance(const Direction& xi, const Point& x) const {
  const double g = x.gap_;
  if (g >= 1.0) return 1.0;
  const auto& u = x.u_;
  const auto& e = xi.coords();
  double du = 0.0;
  for (Eigen::Index i = 0; i < d_; ++i) {
    const double t = u[i] - e[i];
    du += t * t;
  }
  // |x - xi|^2 = (1 - r)^2 + r |u - xi|^2 with r = |x|
  return g * g + (1.0 - g) * du;
}

double PoincareBall::busemann(const Direction& xi, const Point& x) const {
  if (xi.dim() != d_ || x.x_.size() != d_) throw DimensionError("busemann: dimension mismatch");
  const double g = x.gap_;
  if (g >= 1.0) return 0.0;
  return std::log(boundary_sq_distance(xi, x)) - std::log(g * (2.0 - g));
}

double PoincareBall::distance(const Point& x, const Point& y) const {
  check(x);
  check(y);
  double sq = 0.0;
  for (Eigen::Index i = 0; i < d_; ++i) {
    const double t = x.x_[i] - y.x_[i];
    sq += t * t;
  }
  if (sq == 0.0) return 0.0;
  // cosh d = 1 + 2 s, s = |x-y|^2 / (Dx Dy)  =>  d = 2 asinh(sqrt(s))
  return 2.0 * std::asinh(std::sqrt(sq / (x.deficit() * y.deficit())));
}

PoincareBall::Hyperboloid PoincareBall::lift(const Point& x) const {
  const double D = x.deficit();
  return {2.0 / D - 1.0, (2.0 / D) * x.x_};
}

PoincareBall::Point PoincareBall::project(const Hyperboloid& y) const {
  const double n = y.ys.norm();
  if (!std::isfinite(y.y0) || !std::isfinite(n)) throw DomainError("hyperboloid coordinates overflowed");
  if (n == 0.0) return base_point();
  const double denom = 1.0 + y.y0;
  Point p;
  const double D = 2.0 / denom;  // 1 - |x|^2
  const double r = n / denom;
  if (!(D > 0.0)) throw DomainError("point left the representable ball (1 - |x|^2 underflowed)");
  p.u_ = y.ys / n;
  p.gap_ = std::min(1.0, D / (1.0 + r));
  p.x_ = y.ys / denom;
  return p;
}

PoincareBall::Point PoincareBall::geodesic_point(const Point& x, const Point& y, double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("geodesic parameter must lie in [0, 1]");
  check(x);
  check(y);
  if (s == 0.0) return x;
  if (s == 1.0) return y;
  const double d = distance(x, y);
  if (d < 1e-12) return make_point((1.0 - s) * x.x_ + s * y.x_);
  const Hyperboloid a = lift(x);
  const Hyperboloid b = lift(y);
  const double sd = std::sinh(d);
  const double ca = std::sinh((1.0 - s) * d) / sd;
  const double cb = std::sinh(s * d) / sd;
  return project({ca * a.y0 + cb * b.y0, ca * a.ys + cb * b.ys});
}

PoincareBall::Point PoincareBall::mobius_add(const Eigen::VectorXd& x, double dx, const Eigen::VectorXd& y,
                                             double dy) const {
  // 1 + 2<x,y> + |x|^2|y|^2 = |x+y|^2 + dx dy and 1 + 2<x,y> + |y|^2 = |x+y|^2 + dx;
  // the expanded forms cancel when y is close to -x near the sphere
  const double s2 = (x + y).squaredNorm();
  const double den = s2 + dx * dy;
  Eigen::VectorXd num = (s2 + dx) * x + dx * y;
  return from_coords_and_deficit(num / den, dx * dy / den);
}

PoincareBall::Point PoincareBall::exp_map(const Point& base, const Tangent& v) const {
  check(base);
  if (v.size() != d_) throw DimensionError("tangent dimension mismatch");
  const double nv = v.norm();
  if (nv == 0.0) return base;
  const double a = nv / base.deficit();  // half the Riemannian length
  if (a > 350.0) throw DomainError("exp_map: tangent vector too long (length " + std::to_string(2 * a) + ")");
  const double ch = std::cosh(a);
  const Eigen::VectorXd w = (std::tanh(a) / nv) * v;
  return mobius_add(base.x_, base.deficit(), w, 1.0 / (ch * ch));
}

PoincareBall::Tangent PoincareBall::log_map(const Point& base, const Point& x) const {
  check(base);
  check(x);
  const Point w = mobius_add(-base.x_, base.deficit(), x.x_, x.deficit());
  const double nw = w.x_.norm();
  if (nw == 0.0) return Tangent::Zero(d_);
  const double one_minus = w.deficit() / (1.0 + nw);  // 1 - |w|
  const double at = 0.5 * std::log1p(2.0 * nw / one_minus);
  return (base.deficit() * at / nw) * w.x_;
}

double PoincareBall::tangent_norm(const Point& base, const Tangent& v) const {
  return 2.0 * v.norm() / base.deficit();
}

double PoincareBall::tangent_inner(const Point& base, const Tangent& a, const Tangent& b) const {
  const double lam = 2.0 / base.deficit();
  return lam * lam * a.dot(b);
}

std::vector<PoincareBall::Tangent> PoincareBall::tangent_basis(const Point& base) const {
  std::vector<Tangent> out;
  const double scale = base.deficit() / 2.0;
  for (int k = 0; k < d_; ++k) out.push_back(scale * Tangent::Unit(d_, k));
  return out;
}

double PoincareBall::max_ray_parameter(const Point& base, const Direction& xi) const {
  return std::min(709.0, 700.0 + busemann(xi, base));
}

PoincareBall::Point PoincareBall::ray_point(const Point& base, const Direction& xi, double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("ray parameter must be nonnegative");
  check(base);
  if (xi.dim() != d_) throw DimensionError("direction dimension mismatch");
  if (t == 0.0) return base;
  const double tmax = max_ray_parameter(base, xi);
  if (t > tmax) {
    throw DomainError("ray_point: t = " + std::to_string(t) + " exceeds the maximum safe value " +
                      std::to_string(tmax));
  }
  if (base.gap_ >= 1.0) {
    // from the origin the ray is tanh(t/2) xi, gap 1 - tanh(t/2) = 2 / (e^t + 1)
    return from_polar(xi.coords(), 2.0 / (std::exp(t) + 1.0));
  }
  // On the hyperboloid the ray toward the null vector l = (1, xi) from a is
  // e^{-t} a + (sinh t / c) l with c = -<a, l> = |p - xi|^2 / (1 - |p|^2).
  const Hyperboloid a = lift(base);
  const double c = boundary_sq_distance(xi, base) / base.deficit();
  const double et = std::exp(-t);
  const double sc = std::sinh(t) / c;
  return project({et * a.y0 + sc, et * a.ys + sc * xi.coords()});
}

std::vector<PoincareBall::Direction> PoincareBall::sample_directions(std::size_t m, std::uint64_t seed) const {
  return sample_sphere_directions(d_, m, seed);
}

std::vector<PoincareBall::Direction> PoincareBall::grid_directions(std::size_t m) const {
  if (d_ != 2) throw DimensionError("grid directions are only defined for d = 2");
  return circle_grid_directions(m);
}

std::vector<Eigen::VectorXd> PoincareBall::direction_tangent_basis(const Direction& u) const {
  return sphere_tangent_basis(u.coords());
}

PoincareBall::Point PoincareBall::apply_isometry(const OrthogonalMap& q, const Point& x) const {
  if (q.size() != d_) throw DimensionError("isometry dimension mismatch");
  check(x);
  Point p;
  p.x_ = q.matrix() * x.x_;
  p.u_ = q.matrix() * x.u_;
  p.gap_ = x.gap_;
  return p;
}

PoincareBall::Direction PoincareBall::boundary_action(const OrthogonalMap& q, const Direction& u) const {
  if (q.size() != d_) throw DimensionError("isometry dimension mismatch");
  return Direction(q.matrix() * u.coords());
}

std::vector<double> PoincareBall::to_row(const Point& x) const {
  return {x.x_.data(), x.x_.data() + x.x_.size()};
}

PoincareBall::Point PoincareBall::from_row(std::span<const double> row) const {
  if (row.size() != row_width()) throw DimensionError("row width mismatch");
  return make_point(Eigen::Map<const Eigen::VectorXd>(row.data(), static_cast<Eigen::Index>(row.size())));
}

}  // namespace horodepth
