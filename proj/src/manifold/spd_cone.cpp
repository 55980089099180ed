#include "horodepth/manifold/spd_cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "horodepth/manifold/spd_linalg.hpp"

namespace horodepth {

SpdCone::SpdCone(int p, GeometryTolerances tol) : p_(p), tol_(tol) {
  if (p < 1) throw DimensionError("SPD matrix size must be at least 1");
}

void SpdCone::check(const Point& x) const {
  if (x.m_.rows() != p_ || x.m_.cols() != p_) {
    throw DimensionError("SPD point has size " + std::to_string(x.m_.rows()) + "x" + std::to_string(x.m_.cols()) +
                         ", expected " + std::to_string(p_));
  }
}

SpdCone::Point SpdCone::base_point() const {
  Point x;
  x.m_ = Eigen::MatrixXd::Identity(p_, p_);
  x.f_ = x.m_;
  return x;
}

SpdCone::Point SpdCone::wrap(Eigen::MatrixXd x) const {
  Point out;
  out.m_ = spd::symmetrize(x);
  if (!out.m_.allFinite()) throw DomainError("SPD computation produced non-finite entries");
  return out;
}

SpdCone::Point SpdCone::from_factor(Eigen::MatrixXd g) const {
  if (!g.allFinite()) throw DomainError("SPD computation produced non-finite entries");
  Point out = wrap(g * g.transpose());
  out.f_ = std::move(g);
  return out;
}

Eigen::MatrixXd SpdCone::frame_cholesky(const Eigen::MatrixXd& q, const Point& x) const {
  if (x.has_factor()) return spd::reversed_cholesky_of_factor(q.transpose() * x.f_);
  return spd::reversed_cholesky(q.transpose() * x.m_ * q);
}

SpdCone::Point SpdCone::make_point(Eigen::MatrixXd x) const {
  if (x.rows() != p_ || x.cols() != p_) throw DimensionError("SPD point must be " + std::to_string(p_) + "x" + std::to_string(p_));
  if (!x.allFinite()) throw DomainError("SPD point has non-finite entries");
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  const double asym = (x - x.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol_.symmetry * scale) {
    throw DomainError("matrix is not symmetric (max asymmetry " + std::to_string(asym) + ")");
  }
  Point out;
  out.m_ = spd::symmetrize(x);
  Eigen::LLT<Eigen::MatrixXd> llt(out.m_);
  if (llt.info() != Eigen::Success) throw FactorizationError("matrix is not positive definite");
  return out;
}

SpdCone::Direction SpdCone::make_direction(Eigen::MatrixXd h) const {
  if (h.rows() != p_ || h.cols() != p_) throw DimensionError("SPD direction must be " + std::to_string(p_) + "x" + std::to_string(p_));
  if (!h.allFinite()) throw DomainError("SPD direction has non-finite entries");
  h = spd::symmetrize(h);
  const double n = h.norm();
  if (!(n > 0.0)) throw DomainError("SPD direction is the zero matrix");
  // already-unit input is kept bit for bit so that exported directions re-import exactly
  if (std::abs(n - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) h /= n;
  const spd::SymEigen e = spd::sym_eigen(h);
  // decreasing eigenvalue order pairs with the upper-triangular reversed Cholesky factor
  Direction out;
  out.h_ = std::move(h);
  out.lambda_ = e.values.reverse();
  out.q_ = e.vectors.rowwise().reverse();
  return out;
}

double SpdCone::busemann(const Direction& h, const Point& x) const {
  if (h.size() != p_) throw DimensionError("busemann: direction size mismatch");
  check(x);
  if (x.has_factor()) {
    const Eigen::MatrixXd u = spd::reversed_cholesky_of_factor(h.q_.transpose() * x.f_);
    return -2.0 * h.lambda_.dot(u.diagonal().array().log().matrix());
  }
  const Eigen::MatrixXd xp = h.q_.transpose() * x.m_ * h.q_;
  const Eigen::VectorXd logdiag = spd::reversed_cholesky_log_diag(xp);
  return -2.0 * h.lambda_.dot(logdiag);
}

double SpdCone::distance(const Point& x, const Point& y) const {
  check(x);
  check(y);
  Eigen::LLT<Eigen::MatrixXd> llt(x.m_);
  if (llt.info() != Eigen::Success) throw FactorizationError("distance: matrix is not positive definite");
  // L^-1 Y L^-T has the eigenvalues of X^-1/2 Y X^-1/2
  const Eigen::MatrixXd ly = llt.matrixL().solve(y.m_);
  const Eigen::MatrixXd m = llt.matrixL().solve(ly.transpose());
  const spd::SymEigen e = spd::sym_eigen(spd::symmetrize(m));
  double sq = 0.0;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    const double l = std::log(std::max(e.values[i], tol_.eigen_floor));
    sq += l * l;
  }
  return std::sqrt(sq);
}

SpdCone::Point SpdCone::geodesic_point(const Point& x, const Point& y, double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("geodesic parameter must lie in [0, 1]");
  check(x);
  check(y);
  if (s == 0.0) return x;
  if (s == 1.0) return y;
  const spd::SymEigen e = spd::sym_eigen(x.m_);
  const Eigen::MatrixXd xh = spd::sym_apply(e, [](double v) { return std::sqrt(v); });
  const Eigen::MatrixXd xih = spd::sym_apply(e, [](double v) { return 1.0 / std::sqrt(v); });
  const spd::SymEigen inner = spd::sym_eigen(spd::symmetrize(xih * y.m_ * xih));
  if (inner.values.minCoeff() <= 0.0) throw DomainError("geodesic_point: matrix is not positive definite");
  const Eigen::VectorXd scale = (0.5 * s * inner.values.array().log()).exp();
  return from_factor(xh * inner.vectors * scale.asDiagonal());
}

SpdCone::Point SpdCone::exp_map(const Point& base, const Tangent& v) const {
  check(base);
  if (v.rows() != p_ || v.cols() != p_) throw DimensionError("tangent size mismatch");
  const spd::SymEigen e = spd::sym_eigen(base.m_);
  const Eigen::MatrixXd xh = spd::sym_apply(e, [](double t) { return std::sqrt(t); });
  const Eigen::MatrixXd xih = spd::sym_apply(e, [](double t) { return 1.0 / std::sqrt(t); });
  const Eigen::MatrixXd w = spd::symmetrize(xih * v * xih);
  if (w.norm() > 700.0) throw DomainError("exp_map: tangent vector too long");
  const spd::SymEigen we = spd::sym_eigen(w);
  const Eigen::VectorXd scale = (0.5 * we.values).array().exp();
  return from_factor(xh * we.vectors * scale.asDiagonal());
}

SpdCone::Tangent SpdCone::log_map(const Point& base, const Point& x) const {
  check(base);
  check(x);
  const spd::SymEigen e = spd::sym_eigen(base.m_);
  const Eigen::MatrixXd xh = spd::sym_apply(e, [](double t) { return std::sqrt(t); });
  const Eigen::MatrixXd xih = spd::sym_apply(e, [](double t) { return 1.0 / std::sqrt(t); });
  const Eigen::MatrixXd inner = spd::symmetrize(xih * x.m_ * xih);
  return spd::symmetrize(xh * spd::spd_log(inner, tol_.eigen_floor) * xh);
}

double SpdCone::tangent_norm(const Point& base, const Tangent& v) const {
  return std::sqrt(std::max(0.0, tangent_inner(base, v, v)));
}

double SpdCone::tangent_inner(const Point& base, const Tangent& a, const Tangent& b) const {
  check(base);
  Eigen::LLT<Eigen::MatrixXd> llt(base.m_);
  if (llt.info() != Eigen::Success) throw FactorizationError("tangent_inner: base is not positive definite");
  // tr(X^-1 A X^-1 B)
  const Eigen::MatrixXd xa = llt.solve(a);
  const Eigen::MatrixXd xb = llt.solve(b);
  return (xa * xb).trace();
}

std::vector<Eigen::MatrixXd> SpdCone::symmetric_basis() const {
  std::vector<Eigen::MatrixXd> out;
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < p_; ++i) {
    for (int j = i; j < p_; ++j) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(p_, p_);
      if (i == j) {
        e(i, i) = 1.0;
      } else {
        e(i, j) = r;
        e(j, i) = r;
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<SpdCone::Tangent> SpdCone::tangent_basis(const Point& base) const {
  check(base);
  const Eigen::MatrixXd xh = spd::spd_sqrt(base.m_);
  std::vector<Tangent> out;
  for (const auto& e : symmetric_basis()) out.push_back(spd::symmetrize(xh * e * xh));
  return out;
}

double SpdCone::max_ray_parameter(const Point&, const Direction& h) const {
  return 700.0 / std::max(h.lambda_.cwiseAbs().maxCoeff(), 1e-300);
}

SpdCone::Point SpdCone::ray_point(const Point& base, const Direction& h, double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("ray parameter must be nonnegative");
  check(base);
  if (h.size() != p_) throw DimensionError("direction size mismatch");
  if (t == 0.0) return base;
  const double tmax = max_ray_parameter(base, h);
  if (t > tmax) {
    throw DomainError("ray_point: t = " + std::to_string(t) + " exceeds the maximum safe value " + std::to_string(tmax));
  }
  // g = Q U Q^T lies in the parabolic subgroup fixing the boundary point of H,
  // so g exp(tH) g^T is the ray from g g^T = base toward the same point.
  const Eigen::MatrixXd u = frame_cholesky(h.q_, base);
  const Eigen::VectorXd half = (0.5 * t * h.lambda_).array().exp();
  return from_factor(h.q_ * u * half.asDiagonal());
}

std::vector<SpdCone::Direction> SpdCone::sample_directions(std::size_t m, std::uint64_t seed) const {
  if (m == 0) throw std::invalid_argument("number of directions must be at least 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Direction> out;
  out.reserve(m);
  Eigen::MatrixXd a(p_, p_);
  while (out.size() < m) {
    for (int i = 0; i < p_; ++i)
      for (int j = 0; j < p_; ++j) a(i, j) = gauss(rng);
    const Eigen::MatrixXd s = spd::symmetrize(a);
    if (s.norm() < 1e-12) continue;
    out.push_back(make_direction(s));
  }
  return out;
}

std::vector<SpdCone::Direction> SpdCone::grid_directions(std::size_t) const {
  throw DimensionError("grid directions are not defined on the SPD cone");
}

std::vector<Eigen::MatrixXd> SpdCone::direction_tangent_basis(const Direction& h) const {
  std::vector<Eigen::MatrixXd> out;
  for (Eigen::MatrixXd e : symmetric_basis()) {
    e -= (e.cwiseProduct(h.h_)).sum() * h.h_;
    for (const auto& b : out) e -= (e.cwiseProduct(b)).sum() * b;
    const double n = e.norm();
    if (n < 1e-8) continue;
    out.push_back(e / n);
    if (static_cast<int>(out.size()) == dimension() - 1) break;
  }
  return out;
}

SpdCone::Point SpdCone::apply_isometry(const OrthogonalMap& q, const Point& x) const {
  if (q.size() != p_) throw DimensionError("isometry size mismatch");
  check(x);
  if (x.has_factor()) return from_factor(q.matrix() * x.f_);
  return wrap(q.matrix() * x.m_ * q.matrix().transpose());
}

SpdCone::Direction SpdCone::boundary_action(const OrthogonalMap& q, const Direction& h) const {
  if (q.size() != p_) throw DimensionError("isometry size mismatch");
  return make_direction(q.matrix() * h.h_ * q.matrix().transpose());
}

std::vector<double> SpdCone::to_row(const Point& x) const {
  check(x);
  std::vector<double> row;
  row.reserve(row_width());
  for (int i = 0; i < p_; ++i)
    for (int j = i; j < p_; ++j) row.push_back(x.m_(i, j));
  return row;
}

SpdCone::Point SpdCone::from_row(std::span<const double> row) const {
  if (row.size() != row_width()) throw DimensionError("SPD row must have " + std::to_string(row_width()) + " entries");
  Eigen::MatrixXd m(p_, p_);
  std::size_t k = 0;
  for (int i = 0; i < p_; ++i) {
    for (int j = i; j < p_; ++j) {
      m(i, j) = row[k];
      m(j, i) = row[k];
      ++k;
    }
  }
  return make_point(std::move(m));
}

}  // namespace horodepth
