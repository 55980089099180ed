#pragma once

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <variant>

#include "horodepth/depth/depth.hpp"
#include "horodepth/depth/region.hpp"

namespace horodepth {

/// Point mass at ray_point(base, xi, t).
template <Manifold M>
struct PointMassContaminant {
  typename M::Direction xi;
  double t = 0.0;
};

template <Manifold M>
struct ContaminationSpec {
  double epsilon = 0.0;
  std::variant<PointMassContaminant<M>, EmpiricalMeasure<typename M::Point>> mode;

  void validate() const {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1)");
    if (const auto* pm = std::get_if<PointMassContaminant<M>>(&mode); pm && !(pm->t >= 0.0)) {
      throw std::invalid_argument("point-mass distance must be nonnegative");
    }
  }
};

/// (1 - eps) mu + eps Q as a two-group measure; eps = 0 returns mu itself.
template <Manifold M>
EmpiricalMeasure<typename M::Point> contaminate(const M& m, const EmpiricalMeasure<typename M::Point>& mu,
                                                const ContaminationSpec<M>& spec) {
  spec.validate();
  if (spec.epsilon == 0.0) return mu;
  if (const auto* pm = std::get_if<PointMassContaminant<M>>(&spec.mode)) {
    const auto q = EmpiricalMeasure<typename M::Point>::uniform({m.ray_point(m.base_point(), pm->xi, pm->t)});
    return EmpiricalMeasure<typename M::Point>::mixture(mu, 1.0 - spec.epsilon, q, spec.epsilon);
  }
  return EmpiricalMeasure<typename M::Point>::mixture(mu, 1.0 - spec.epsilon,
                                                      std::get<EmpiricalMeasure<typename M::Point>>(spec.mode),
                                                      spec.epsilon);
}

/// Pairs every atom with its geodesic reflection through theta at half weight;
/// atoms equal to theta keep their weight.
template <Manifold M>
EmpiricalMeasure<typename M::Point> symmetrize(const M& m, const EmpiricalMeasure<typename M::Point>& mu,
                                               const typename M::Point& theta) {
  const auto theta_row = m.to_row(theta);
  return mu.symmetrized([&](const auto& x) { return reflect(m, theta, x); },
                        [&](const auto& x) { return m.to_row(x) == theta_row; });
}

/// min{(1 - eps) P(H+_{xi,z}), (1 - eps) D_m(z; P) + eps}, the depth under
/// (1 - eps) P + eps delta_{gamma(t)} once the contaminant has escaped along xi.
/// Both terms use exactly the arithmetic of the contaminated evaluation, so
/// the settled identity is bitwise.
template <Manifold M>
double limiting_depth(const DepthProfile<M>& prof, const typename M::Point& z, double epsilon,
                      const typename M::Direction& xi) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  const double a = 1.0 - epsilon;
  const double escape = a * directional_mass(prof.manifold(), xi, z, prof.measure());
  double rest = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < prof.num_directions(); ++j) {
    rest = std::min(rest, a * prof.mass_above(j, prof.busemann(j, z)) + epsilon);
  }
  return std::min(escape, rest);
}

template <Manifold M>
double limiting_depth(const M& m, const typename M::Point& z, const EmpiricalMeasure<typename M::Point>& mu,
                      double epsilon, const typename M::Direction& xi, const DirectionSet<M>& dirs) {
  return limiting_depth(DepthProfile<M>(m, mu, dirs), z, epsilon, xi);
}

/// D^{alpha_2}(P) over dirs intersected with the horoball {B_xi <= t_xi(alpha_1)},
/// alpha_1 = alpha / (1 - eps), alpha_2 = (alpha - eps) / (1 - eps). Empty for
/// alpha > 1 - eps; the first factor is the whole space when alpha_2 <= 0.
template <Manifold M>
DepthRegion<M> limiting_region(const DepthProfile<M>& prof, double epsilon, const typename M::Direction& xi,
                               double alpha) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  DepthRegion<M> out;
  out.alpha = alpha;
  if (alpha > 1.0 - epsilon) {
    out.empty = true;
    return out;
  }
  const double a1 = alpha / (1.0 - epsilon);
  const double a2 = (alpha - epsilon) / (1.0 - epsilon);
  if (a2 > 0.0) out = region_thresholds(prof, a2);
  out.alpha = alpha;
  const DepthProfile<M> along(prof.manifold(), prof.measure(), explicit_directions<M>({xi}));
  DepthRegion<M> horoball;
  horoball.directions = {xi};
  horoball.upper = {along.upper_quantile(0, a1)};
  return out.intersect(horoball);
}

}  // namespace horodepth
