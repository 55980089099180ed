#include "horodepth/manifold/spd_linalg.hpp"

#include <cmath>
#include <string>

#include "horodepth/common.hpp"

namespace horodepth::spd {

SymEigen sym_eigen(const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  if (es.info() != Eigen::Success) throw FactorizationError("symmetric eigendecomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& a) { return 0.5 * (a + a.transpose()); }

Eigen::MatrixXd spd_log(const Eigen::MatrixXd& x, double floor) {
  const SymEigen e = sym_eigen(x);
  if (e.values.minCoeff() < floor) {
    diagnostics::warn("spd_log: eigenvalue " + std::to_string(e.values.minCoeff()) + " clamped to " +
                      std::to_string(floor));
  }
  return sym_apply(e, [floor](double v) { return std::log(std::max(v, floor)); });
}

Eigen::MatrixXd sym_exp(const Eigen::MatrixXd& s) {
  return sym_apply(sym_eigen(s), [](double v) { return std::exp(v); });
}

Eigen::MatrixXd spd_pow(const Eigen::MatrixXd& x, double power) {
  const SymEigen e = sym_eigen(x);
  if (e.values.minCoeff() <= 0.0) throw DomainError("spd_pow: matrix is not positive definite");
  return sym_apply(e, [power](double v) { return std::pow(v, power); });
}

Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& x) { return spd_pow(x, 0.5); }

Eigen::MatrixXd spd_inv_sqrt(const Eigen::MatrixXd& x) { return spd_pow(x, -0.5); }

namespace {

Eigen::LLT<Eigen::MatrixXd> exchanged_llt(const Eigen::MatrixXd& x) {
  const Eigen::Index p = x.rows();
  if (x.cols() != p) throw DimensionError("reversed_cholesky: matrix must be square");
  // J X J reverses both index orders
  const Eigen::MatrixXd jxj = x.reverse();
  Eigen::LLT<Eigen::MatrixXd> llt(jxj);
  if (llt.info() != Eigen::Success) throw FactorizationError("reversed_cholesky: matrix is not positive definite");
  return llt;
}

}  // namespace

Eigen::MatrixXd reversed_cholesky(const Eigen::MatrixXd& x) {
  const auto llt = exchanged_llt(x);
  const Eigen::MatrixXd l = llt.matrixL();
  return l.reverse();
}

Eigen::MatrixXd reversed_cholesky_of_factor(const Eigen::MatrixXd& f) {
  const Eigen::Index p = f.rows();
  if (f.cols() != p) throw DimensionError("reversed_cholesky_of_factor: matrix must be square");
  // F^T J = O R  =>  F F^T = (J R^T J)(J R^T J)^T with J R^T J upper triangular
  const Eigen::MatrixXd a = f.transpose().rowwise().reverse();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < p; ++i) {
    if (r(i, i) == 0.0 || !std::isfinite(r(i, i))) throw FactorizationError("factor is singular");
    if (r(i, i) < 0.0) r.row(i) *= -1.0;
  }
  return r.transpose().reverse();
}

Eigen::VectorXd reversed_cholesky_log_diag(const Eigen::MatrixXd& x) {
  const auto llt = exchanged_llt(x);
  const Eigen::Index p = x.rows();
  const auto& m = llt.matrixLLT();
  Eigen::VectorXd out(p);
  for (Eigen::Index i = 0; i < p; ++i) out[i] = std::log(m(p - 1 - i, p - 1 - i));
  return out;
}

}  // namespace horodepth::spd
