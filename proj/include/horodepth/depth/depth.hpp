#pragma once

#include <cstddef>
#include <vector>

#include "horodepth/depth/profile.hpp"

namespace horodepth {

/// P({x : B_xi(x) >= B_xi(z)}), ties counted inside.
template <Manifold M>
double directional_mass(const M& m, const typename M::Direction& xi, const typename M::Point& z,
                        const EmpiricalMeasure<typename M::Point>& mu) {
  const double bz = m.busemann(xi, z);
  std::vector<double> b(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) b[i] = m.busemann(xi, mu.point(i));
  return mu.mass_where([&](std::size_t i) { return b[i] >= bz; });
}

/// S_xi(t) = P({x : B_xi(x) >= t}).
template <Manifold M>
double survival_mass(const M& m, const typename M::Direction& xi, double t,
                     const EmpiricalMeasure<typename M::Point>& mu) {
  std::vector<double> b(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) b[i] = m.busemann(xi, mu.point(i));
  return mu.mass_where([&](std::size_t i) { return b[i] >= t; });
}

/// D_m(z) = min over the direction set. Builds a profile; reuse a DepthProfile
/// directly when evaluating many points.
template <Manifold M>
DepthValue sample_depth(const M& m, const typename M::Point& z, const EmpiricalMeasure<typename M::Point>& mu,
                        const DirectionSet<M>& dirs) {
  return DepthProfile<M>(m, mu, dirs).depth(z);
}

template <Manifold M>
double two_sided_depth(const M& m, const typename M::Point& z, const EmpiricalMeasure<typename M::Point>& mu,
                       const DirectionSet<M>& dirs) {
  return DepthProfile<M>(m, mu, dirs).two_sided_depth(z);
}

struct RefineResult {
  double mass = 0.0;
  double seed_mass = 0.0;
  std::size_t evaluations = 0;
};

/// Pattern search on the boundary sphere (or the unit sphere of symmetric
/// matrices): perturb the direction along tangent basis vectors, renormalize,
/// accept strict descent of the directional mass only, halve the step after a
/// full unsuccessful sweep. budget counts mass evaluations.
template <Manifold M>
typename M::Direction refine_direction(const M& m, const typename M::Point& z,
                                       const EmpiricalMeasure<typename M::Point>& mu,
                                       const typename M::Direction& xi0, std::size_t budget,
                                       RefineResult* info = nullptr, double initial_step = 0.5,
                                       double min_step = 1e-4) {
  if (budget == 0) throw std::invalid_argument("refine budget must be at least 1");
  typename M::Direction best = xi0;
  double best_mass = directional_mass(m, xi0, z, mu);
  const double seed_mass = best_mass;
  std::size_t used = 1;
  double step = initial_step;
  while (used < budget && step >= min_step) {
    bool improved = false;
    const auto basis = m.direction_tangent_basis(best);
    for (const auto& b : basis) {
      for (double sign : {1.0, -1.0}) {
        if (used >= budget) break;
        auto c = m.direction_coords(best);
        const auto cand = m.make_direction(c + (sign * step) * b);
        const double mass = directional_mass(m, cand, z, mu);
        ++used;
        if (mass < best_mass) {
          best_mass = mass;
          best = cand;
          improved = true;
          break;
        }
      }
      if (improved || used >= budget) break;
    }
    if (!improved) step *= 0.5;
  }
  if (info) *info = {best_mass, seed_mass, used};
  return best;
}

}  // namespace horodepth
