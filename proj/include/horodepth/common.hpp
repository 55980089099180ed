#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace horodepth {

/// Numerical-domain violation: a point outside the model, a non-positive-definite
/// matrix, or an argument that would overflow the representable range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A matrix factorization (Cholesky, eigendecomposition) failed.
class FactorizationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Inputs whose shapes do not agree with the active manifold.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed dataset or configuration input. Carries the 1-based line number
/// when the failure is tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Tolerances shared by the geometry kernels. Defaults match the documented
/// invariants; a RunConfig may override them.
struct GeometryTolerances {
  double ball_margin = 1e-12;      // raw ball inputs are pulled to norm <= 1 - margin
  double symmetry = 1e-10;         // accepted asymmetry of SPD inputs (relative)
  double unit_norm = 1e-12;        // direction normalization check
  double orthogonality = 1e-8;     // isometry validation, |Q^T Q - I|
  double eigen_floor = 1e-300;     // eigenvalues are clamped here before log
};

/// Slack used whenever a probability mass is compared against a level alpha.
/// It absorbs the rounding of decimal levels like 0.3 * 10 and nothing else;
/// masses of distinct empirical events differ by far more.
inline constexpr double kMassSlack = 1e-12;

namespace diagnostics {

using WarningSink = std::function<void(const std::string&)>;

/// Installs the sink used for non-fatal numerical warnings (stderr by default).
/// Returns the previous sink.
WarningSink set_warning_sink(WarningSink sink);
void warn(const std::string& message);

}  // namespace diagnostics

}  // namespace horodepth
