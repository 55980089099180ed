#include "horodepth/manifold/sphere.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "horodepth/common.hpp"

namespace horodepth {

SphereDirection::SphereDirection(Eigen::VectorXd v) : u_(std::move(v)) {
  if (u_.size() == 0) throw DimensionError("direction must have positive dimension");
  if (!u_.allFinite()) throw DomainError("direction has non-finite coordinates");
  const double n = u_.norm();
  if (!(n > 0.0)) throw DomainError("direction vector is zero");
  // unit input stays bit-identical, which keeps exported regions exact on re-import
  if (std::abs(n - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) u_ /= n;
}

std::vector<SphereDirection> sample_sphere_directions(int d, std::size_t m, std::uint64_t seed) {
  if (m == 0) throw std::invalid_argument("number of directions must be at least 1");
  if (d < 1) throw DimensionError("sphere dimension must be at least 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<SphereDirection> out;
  out.reserve(m);
  Eigen::VectorXd v(d);
  while (out.size() < m) {
    for (int i = 0; i < d; ++i) v[i] = gauss(rng);
    if (v.norm() < 1e-12) continue;
    out.emplace_back(v);
  }
  return out;
}

std::vector<SphereDirection> circle_grid_directions(std::size_t m) {
  if (m == 0) throw std::invalid_argument("number of directions must be at least 1");
  std::vector<SphereDirection> out;
  out.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    // exact axis values for the quarter turns keep small grids tidy
    Eigen::Vector2d v;
    if ((4 * j) % m == 0) {
      static constexpr double axes[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      const std::size_t q = (4 * j) / m;
      v << axes[q][0], axes[q][1];
    } else {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
      v << std::cos(a), std::sin(a);
    }
    out.emplace_back(Eigen::VectorXd(v));
  }
  return out;
}

std::vector<Eigen::VectorXd> sphere_tangent_basis(const Eigen::VectorXd& u) {
  const Eigen::Index d = u.size();
  std::vector<Eigen::VectorXd> basis;
  basis.reserve(static_cast<std::size_t>(d > 0 ? d - 1 : 0));
  // Gram-Schmidt of the coordinate axes against u, skipping the most aligned axis.
  Eigen::Index skip = 0;
  u.cwiseAbs().maxCoeff(&skip);
  for (Eigen::Index k = 0; k < d; ++k) {
    if (k == skip) continue;
    Eigen::VectorXd e = Eigen::VectorXd::Unit(d, k);
    e -= u.dot(e) * u;
    for (const auto& b : basis) e -= b.dot(e) * b;
    e.normalize();
    basis.push_back(std::move(e));
  }
  return basis;
}

OrthogonalMap::OrthogonalMap(Eigen::MatrixXd q, double tol) : q_(std::move(q)) {
  if (q_.rows() != q_.cols() || q_.rows() == 0) throw DimensionError("orthogonal map must be square");
  const double dev = (q_.transpose() * q_ - Eigen::MatrixXd::Identity(q_.rows(), q_.cols())).cwiseAbs().maxCoeff();
  if (!(dev <= tol)) {
    throw DomainError("matrix is not orthogonal (max |Q^T Q - I| = " + std::to_string(dev) + ")");
  }
}

OrthogonalMap OrthogonalMap::random(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (r(j, j) < 0) q.col(j) *= -1.0;
  }
  return OrthogonalMap(std::move(q));
}

OrthogonalMap OrthogonalMap::rotation_2d(double angle) {
  Eigen::MatrixXd r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return OrthogonalMap(std::move(r));
}

}  // namespace horodepth
