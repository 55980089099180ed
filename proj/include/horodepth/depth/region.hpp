#pragma once

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "horodepth/depth/profile.hpp"

namespace horodepth {

/// Intersection of horoballs {z : B_j(z) <= t_j}, optionally cut from below by
/// {z : B_j(z) >= q_j} (horospherical strips). A threshold of -inf makes the
/// region empty; `empty` marks a region known to be empty without entries.
template <Manifold M>
struct DepthRegion {
  std::vector<typename M::Direction> directions;
  std::vector<double> upper;  // t_j
  std::vector<double> lower;  // q_j; empty for one-sided regions
  double alpha = 0.0;
  std::string fingerprint;
  bool empty = false;

  std::size_t size() const { return directions.size(); }
  bool two_sided() const { return !lower.empty(); }

  /// Region with the entries of both (intersection). Fingerprints are joined.
  DepthRegion intersect(const DepthRegion& other) const {
    DepthRegion out = *this;
    if (two_sided() != other.two_sided() && !(size() == 0 || other.size() == 0)) {
      throw std::invalid_argument("cannot intersect one-sided and two-sided regions");
    }
    out.directions.insert(out.directions.end(), other.directions.begin(), other.directions.end());
    out.upper.insert(out.upper.end(), other.upper.begin(), other.upper.end());
    out.lower.insert(out.lower.end(), other.lower.begin(), other.lower.end());
    out.empty = empty || other.empty;
    if (!other.fingerprint.empty()) out.fingerprint += (out.fingerprint.empty() ? "" : "+") + other.fingerprint;
    return out;
  }
};

struct Membership {
  double F = 0.0;
  bool inside = false;
};

/// F(z) = max_j (B_j(z) - t_j), extended by q_j - B_j(z) for strips; inside iff F <= 0.
/// A region with no entries is the whole space (F = -inf) unless marked empty.
template <Manifold M>
Membership region_membership(const M& m, const DepthRegion<M>& region, const typename M::Point& z) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (region.empty) return {inf, false};
  double f = -inf;
  for (std::size_t j = 0; j < region.size(); ++j) {
    const double b = m.busemann(region.directions[j], z);
    f = std::max(f, b - region.upper[j]);
    if (region.two_sided()) f = std::max(f, region.lower[j] - b);
  }
  return {f, f <= 0.0};
}

namespace detail {
inline void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}
}  // namespace detail

/// Algorithm-1 region: t_j is the empirical upper survival quantile along xi_j,
/// which for uniform weights is the ceil(n alpha)-th largest Busemann value.
template <Manifold M>
DepthRegion<M> region_thresholds(const DepthProfile<M>& profile, double alpha) {
  detail::check_alpha(alpha);
  DepthRegion<M> r;
  r.alpha = alpha;
  r.directions = profile.directions().directions;
  r.upper.resize(profile.num_directions());
  for (std::size_t j = 0; j < profile.num_directions(); ++j) r.upper[j] = profile.upper_quantile(j, alpha);
  r.fingerprint = profile.measure().fingerprint([&](const auto& p) { return profile.manifold().to_row(p); });
  return r;
}

template <Manifold M>
DepthRegion<M> region_thresholds(const M& m, const EmpiricalMeasure<typename M::Point>& mu, double alpha,
                                 const DirectionSet<M>& dirs) {
  return region_thresholds(DepthProfile<M>(m, mu, dirs), alpha);
}

/// Two-sided region {z : two-sided depth >= alpha}: intersection of strips q_j <= B_j <= t_j.
template <Manifold M>
DepthRegion<M> strip_region(const DepthProfile<M>& profile, double alpha) {
  DepthRegion<M> r = region_thresholds(profile, alpha);
  r.lower.resize(profile.num_directions());
  for (std::size_t j = 0; j < profile.num_directions(); ++j) r.lower[j] = profile.lower_quantile(j, alpha);
  return r;
}

}  // namespace horodepth
