#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "horodepth/depth/measure.hpp"
#include "horodepth/manifold/manifold.hpp"

namespace horodepth {

struct IterConfig {
  std::size_t max_iterations = 200;
  double tolerance = 1e-10;  // on the norm of the weighted tangent mean
  double step = 1.0;
  std::size_t max_backtracks = 40;  // halvings of the step when the objective does not decrease
};

template <Manifold M>
struct FrechetResult {
  typename M::Point point;
  double objective = 0.0;       // sum_i w_i d(point, x_i)^2
  double gradient_norm = 0.0;   // |sum_i w_i log_point(x_i)| at the returned point
  std::size_t iterations = 0;
  bool converged = false;
};

template <Manifold M>
double frechet_objective(const M& m, const EmpiricalMeasure<typename M::Point>& mu, const typename M::Point& z) {
  const auto w = mu.weights();
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double d = m.distance(z, mu.point(i));
    s += w[i] * d * d;
  }
  return s;
}

/// Karcher iteration x <- exp_x(step * sum_i w_i log_x(x_i)), started at the
/// heaviest atom (the first one on ties). A step that fails to lower the
/// objective is halved; far atoms in negative curvature make the unit step
/// overshoot. Near the minimum, where F no longer resolves the decrease, a
/// step is accepted when it lowers the gradient norm.
template <Manifold M>
FrechetResult<M> frechet_mean(const M& m, const EmpiricalMeasure<typename M::Point>& mu, const IterConfig& cfg = {}) {
  const auto w = mu.weights();
  std::size_t start = 0;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] > w[start]) start = i;

  FrechetResult<M> res;
  typename M::Point x = mu.point(start);
  auto tangent_mean = [&](const typename M::Point& at) {
    typename M::Tangent v = m.zero_tangent(at);
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (w[i] != 0.0) v += w[i] * m.log_map(at, mu.point(i));
    }
    return v;
  };
  double f = frechet_objective(m, mu, x);
  for (;;) {
    const auto v = tangent_mean(x);
    res.gradient_norm = m.tangent_norm(x, v);
    if (res.gradient_norm < cfg.tolerance) {
      res.converged = true;
      break;
    }
    if (res.iterations == cfg.max_iterations || !std::isfinite(res.gradient_norm)) break;
    bool moved = false;
    double step = cfg.step;
    for (std::size_t k = 0; k <= cfg.max_backtracks; ++k, step *= 0.5) {
      try {
        auto y = m.exp_map(x, step * v);
        const double fy = frechet_objective(m, mu, y);
        // once F changes at rounding level only the gradient can tell progress
        const bool flat = std::abs(fy - f) <= 1e-13 * std::abs(f);
        if (flat ? m.tangent_norm(y, tangent_mean(y)) < res.gradient_norm : fy < f) {
          x = std::move(y);
          f = fy;
          moved = true;
          break;
        }
      } catch (const DomainError&) {
      }
    }
    ++res.iterations;
    if (!moved) break;
  }
  res.point = x;
  res.objective = f;
  return res;
}

}  // namespace horodepth
