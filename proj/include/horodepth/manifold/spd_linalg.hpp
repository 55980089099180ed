#pragma once

#include <Eigen/Dense>

namespace horodepth::spd {

struct SymEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};

/// Symmetric eigendecomposition; throws FactorizationError on failure.
SymEigen sym_eigen(const Eigen::MatrixXd& s);

/// V f(Λ) V^T for a symmetric matrix with decomposition e.
template <class F>
Eigen::MatrixXd sym_apply(const SymEigen& e, F&& f) {
  const Eigen::VectorXd fv = e.values.unaryExpr(std::forward<F>(f));
  return e.vectors * fv.asDiagonal() * e.vectors.transpose();
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& a);

/// Matrix logarithm of an SPD matrix. Eigenvalues below floor are clamped with
/// a diagnostic warning.
Eigen::MatrixXd spd_log(const Eigen::MatrixXd& x, double floor = 1e-300);
Eigen::MatrixXd sym_exp(const Eigen::MatrixXd& s);
Eigen::MatrixXd spd_pow(const Eigen::MatrixXd& x, double power);
Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& x);
Eigen::MatrixXd spd_inv_sqrt(const Eigen::MatrixXd& x);

/// Upper-triangular U with positive diagonal and U U^T = X, computed as
/// J L J where L L^T = J X J and J is the exchange matrix.
Eigen::MatrixXd reversed_cholesky(const Eigen::MatrixXd& x);

/// Reversed Cholesky factor of F F^T computed from F by an orthogonal
/// triangularization, so F F^T is never formed.
Eigen::MatrixXd reversed_cholesky_of_factor(const Eigen::MatrixXd& f);

/// log of the diagonal of reversed_cholesky(x), without forming U.
Eigen::VectorXd reversed_cholesky_log_diag(const Eigen::MatrixXd& x);

}  // namespace horodepth::spd
