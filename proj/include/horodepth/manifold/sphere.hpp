#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace horodepth {

/// A point of the unit sphere S^{d-1}: the visual boundary of R^d and of the
/// Poincare ball. Always unit norm; the constructor normalizes.
class SphereDirection {
 public:
  SphereDirection() = default;
  explicit SphereDirection(Eigen::VectorXd v);

  const Eigen::VectorXd& coords() const { return u_; }
  Eigen::Index dim() const { return u_.size(); }

  friend bool operator==(const SphereDirection& a, const SphereDirection& b) {
    return a.u_.size() == b.u_.size() && a.u_ == b.u_;
  }

 private:
  Eigen::VectorXd u_;
};

/// Normalized Gaussian vectors; deterministic for a given seed.
std::vector<SphereDirection> sample_sphere_directions(int d, std::size_t m, std::uint64_t seed);

/// The regular m-gon (cos 2πj/m, sin 2πj/m), j = 0..m-1. Only defined for d = 2.
std::vector<SphereDirection> circle_grid_directions(std::size_t m);

/// Orthonormal basis of the tangent space of S^{d-1} at u (d-1 vectors).
std::vector<Eigen::VectorXd> sphere_tangent_basis(const Eigen::VectorXd& u);

/// Orthogonal matrix acting on R^d (points and boundary directions) or by
/// congruence on SPD matrices. Construction rejects |Q^T Q - I| > tol.
class OrthogonalMap {
 public:
  explicit OrthogonalMap(Eigen::MatrixXd q, double tol = 1e-8);

  static OrthogonalMap identity(Eigen::Index n) { return OrthogonalMap(Eigen::MatrixXd::Identity(n, n)); }
  /// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with sign fix).
  static OrthogonalMap random(Eigen::Index n, std::uint64_t seed);
  static OrthogonalMap rotation_2d(double angle);

  const Eigen::MatrixXd& matrix() const { return q_; }
  Eigen::Index size() const { return q_.rows(); }

 private:
  Eigen::MatrixXd q_;
};

}  // namespace horodepth
