#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "horodepth/common.hpp"
#include "horodepth/manifold/sphere.hpp"

namespace horodepth {

/// Symmetric positive-definite p x p matrix.
///
/// Points produced by the exponential map, rays and geodesics also keep a factor
/// G with X = G G^T. Far along a ray X is too ill-conditioned for its small
/// eigen-directions to survive rounding; G keeps them to full relative precision
/// and the Busemann function reads them from G.
class SpdPoint {
 public:
  SpdPoint() = default;
  const Eigen::MatrixXd& matrix() const { return m_; }
  Eigen::Index size() const { return m_.rows(); }
  bool has_factor() const { return f_.size() > 0; }
  /// G with G G^T = X; empty for points built from a raw matrix.
  const Eigen::MatrixXd& factor() const { return f_; }

 private:
  friend class SpdCone;
  Eigen::MatrixXd m_;
  Eigen::MatrixXd f_;
};

/// Boundary direction of the SPD cone: a unit-Frobenius symmetric H with its
/// spectral decomposition H = Q diag(lambda) Q^T, eigenvalues sorted decreasing.
class SpdDirection {
 public:
  SpdDirection() = default;
  const Eigen::MatrixXd& matrix() const { return h_; }
  const Eigen::MatrixXd& eigenvectors() const { return q_; }
  const Eigen::VectorXd& eigenvalues() const { return lambda_; }
  Eigen::Index size() const { return h_.rows(); }

  friend bool operator==(const SpdDirection& a, const SpdDirection& b) {
    return a.h_.rows() == b.h_.rows() && a.h_ == b.h_;
  }

 private:
  friend class SpdCone;
  Eigen::MatrixXd h_;
  Eigen::MatrixXd q_;
  Eigen::VectorXd lambda_;
};

/// The SPD cone with the affine-invariant metric <A, B>_X = tr(X^-1 A X^-1 B).
/// B_H(X) = -2 <lambda, log diag U(Q^T X Q)> with U the reversed Cholesky factor.
class SpdCone {
 public:
  using Point = SpdPoint;
  using Direction = SpdDirection;
  using Tangent = Eigen::MatrixXd;  // symmetric

  explicit SpdCone(int p, GeometryTolerances tol = {});

  static constexpr std::string_view name() { return "spd"; }
  int matrix_size() const { return p_; }
  int ambient_dim() const { return p_; }
  /// Manifold dimension p (p + 1) / 2.
  int dimension() const { return p_ * (p_ + 1) / 2; }
  const GeometryTolerances& tolerances() const { return tol_; }

  Point base_point() const;
  Point make_point(Eigen::MatrixXd x) const;
  Direction make_direction(Eigen::MatrixXd h) const;

  double busemann(const Direction& h, const Point& x) const;
  double distance(const Point& x, const Point& y) const;
  Point geodesic_point(const Point& x, const Point& y, double s) const;
  Point exp_map(const Point& base, const Tangent& v) const;
  Tangent log_map(const Point& base, const Point& x) const;
  double tangent_norm(const Point& base, const Tangent& v) const;
  double tangent_inner(const Point& base, const Tangent& a, const Tangent& b) const;
  Tangent zero_tangent(const Point&) const { return Tangent::Zero(p_, p_); }
  std::vector<Tangent> tangent_basis(const Point& base) const;
  /// The ray from base asymptotic to exp(tH): Q U e^{t lambda} U^T Q^T, where
  /// U is the reversed Cholesky factor of Q^T base Q. From the identity this is exp(tH).
  Point ray_point(const Point& base, const Direction& h, double t) const;
  double max_ray_parameter(const Point& base, const Direction& h) const;

  std::vector<Direction> sample_directions(std::size_t m, std::uint64_t seed) const;
  std::vector<Direction> grid_directions(std::size_t m) const;
  const Eigen::MatrixXd& direction_coords(const Direction& h) const { return h.matrix(); }
  std::vector<Eigen::MatrixXd> direction_tangent_basis(const Direction& h) const;

  Point apply_isometry(const OrthogonalMap& q, const Point& x) const;
  Direction boundary_action(const OrthogonalMap& q, const Direction& h) const;

  /// Upper triangle, row-major: p (p + 1) / 2 entries.
  std::size_t row_width() const { return static_cast<std::size_t>(dimension()); }
  std::vector<double> to_row(const Point& x) const;
  Point from_row(std::span<const double> row) const;

  /// Frobenius-orthonormal basis of the symmetric matrices.
  std::vector<Eigen::MatrixXd> symmetric_basis() const;

 private:
  void check(const Point& x) const;
  Point wrap(Eigen::MatrixXd x) const;
  Point from_factor(Eigen::MatrixXd g) const;
  /// Reversed Cholesky factor of Q^T X Q, taken from the point's factor when it has one.
  Eigen::MatrixXd frame_cholesky(const Eigen::MatrixXd& q, const Point& x) const;

  int p_;
  GeometryTolerances tol_;
};

}  // namespace horodepth
