#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <Eigen/Dense>

#include "horodepth/depth/depth.hpp"
#include "horodepth/depth/profile.hpp"
#include "horodepth/util/numeric.hpp"

namespace horodepth {

struct SearchConfig {
  std::size_t candidate_cap = 2000;  // pairwise midpoints kept
  std::uint64_t seed = 0;            // midpoint subsampling
  double initial_step = 0.25;        // tangent norm of the first pattern
  std::size_t halvings = 6;
  std::size_t max_moves_per_level = 64;
  std::size_t refine_rounds = 0;     // rounds of direction refinement appended to the set
  std::size_t refine_budget = 48;
  std::size_t refine_seeds = 4;      // lowest-mass directions used as refinement starts

  std::string fingerprint() const {
    std::ostringstream os;
    os << "cap=" << candidate_cap << ";seed=" << seed << ";step=" << initial_step << ";halvings=" << halvings
       << ";moves=" << max_moves_per_level << ";refine=" << refine_rounds << "x" << refine_budget << "/"
       << refine_seeds;
    return os.str();
  }
};

template <Manifold M>
struct TraceEntry {
  typename M::Point point;
  double depth = 0.0;
};

template <Manifold M>
struct MedianResult {
  typename M::Point point;
  double depth = 0.0;
  std::size_t direction_index = 0;
  std::size_t candidate_index = 0;  // winner of the coarse stage
  std::size_t candidates = 0;
  DirectionSet<M> directions;       // set under which depth was evaluated
  std::vector<TraceEntry<M>> search_trace;
  std::string config_fingerprint;
};

/// Data points, then pairwise geodesic midpoints (all of them when at most
/// `cap`, otherwise a seeded subsample of `cap` pairs in increasing pair
/// order), then `extra`.
template <Manifold M>
std::vector<typename M::Point> coarse_candidates(const M& m, const EmpiricalMeasure<typename M::Point>& mu,
                                                 std::size_t cap = 2000, std::uint64_t seed = 0,
                                                 const std::vector<typename M::Point>& extra = {}) {
  const std::size_t n = mu.size();
  std::vector<typename M::Point> out(mu.points());
  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<std::size_t> picks;
  if (pairs <= cap) {
    picks.resize(pairs);
    std::iota(picks.begin(), picks.end(), std::size_t{0});
  } else {
    // Floyd's sampling without replacement
    std::mt19937_64 rng(seed);
    std::unordered_set<std::size_t> chosen;
    for (std::size_t j = pairs - cap; j < pairs; ++j) {
      const std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(rng);
      chosen.insert(chosen.count(t) ? j : t);
    }
    picks.assign(chosen.begin(), chosen.end());
    std::sort(picks.begin(), picks.end());
  }
  // rank k enumerates (0,1), (0,2), ..., (0,n-1), (1,2), ...
  std::size_t i = 0;
  std::size_t row_start = 0;
  const std::size_t first = out.size();
  out.resize(first + picks.size());
  std::vector<std::pair<std::size_t, std::size_t>> ij(picks.size());
  for (std::size_t p = 0; p < picks.size(); ++p) {
    while (picks[p] >= row_start + (n - 1 - i)) {
      row_start += n - 1 - i;
      ++i;
    }
    ij[p] = {i, i + 1 + (picks[p] - row_start)};
  }
  parallel_for(picks.size(), [&](std::size_t p) {
    out[first + p] = m.geodesic_point(mu.point(ij[p].first), mu.point(ij[p].second), 0.5);
  });
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

namespace detail {

/// Ordering key for median candidates: higher depth, then closer to the
/// weighted chart centroid, then earlier.
struct MedianKey {
  double depth = -1.0;
  double centroid_distance = std::numeric_limits<double>::infinity();
  std::size_t index = std::numeric_limits<std::size_t>::max();

  bool better_than(const MedianKey& o) const {
    if (depth != o.depth) return depth > o.depth;
    if (centroid_distance != o.centroid_distance) return centroid_distance < o.centroid_distance;
    return index < o.index;
  }
};

template <Manifold M>
Eigen::VectorXd chart_row(const M& m, const typename M::Point& x) {
  const auto r = m.to_row(x);
  return Eigen::Map<const Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size()));
}

template <Manifold M>
Eigen::VectorXd chart_centroid(const M& m, const EmpiricalMeasure<typename M::Point>& mu) {
  const auto w = mu.weights();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m.to_row(mu.point(0)).size()));
  for (std::size_t i = 0; i < mu.size(); ++i) c += w[i] * chart_row(m, mu.point(i));
  return c;
}

/// Appends refined directions started from the lowest-mass directions at z.
template <Manifold M>
DirectionSet<M> refined_set(const DepthProfile<M>& prof, const typename M::Point& z, const SearchConfig& cfg) {
  const M& m = prof.manifold();
  const auto masses = prof.masses(z);
  std::vector<std::size_t> order(masses.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return masses[a] < masses[b]; });
  DirectionSet<M> out = prof.directions();
  out.source = DirectionSource::explicit_list;
  for (std::size_t k = 0; k < std::min(cfg.refine_seeds, order.size()); ++k) {
    RefineResult info;
    auto d = refine_direction(m, z, prof.measure(), prof.directions()[order[k]], cfg.refine_budget, &info);
    if (info.mass < info.seed_mass) out.directions.push_back(std::move(d));
  }
  return out;
}

}  // namespace detail

/// Coarse-to-fine maximization of the sampled depth: best coarse candidate,
/// then pattern search in the tangent chart with step halving.
template <Manifold M>
MedianResult<M> busemann_median(const M& m, const EmpiricalMeasure<typename M::Point>& mu, const DirectionSet<M>& dirs,
                                const SearchConfig& cfg = {},
                                const std::vector<typename M::Point>& extra_candidates = {}) {
  using Point = typename M::Point;
  MedianResult<M> res;
  res.config_fingerprint = cfg.fingerprint();
  const Eigen::VectorXd centroid = detail::chart_centroid(m, mu);
  const auto key_of = [&](const Point& z, double depth, std::size_t index) {
    return detail::MedianKey{depth, (detail::chart_row(m, z) - centroid).norm(), index};
  };

  const auto cands = coarse_candidates(m, mu, cfg.candidate_cap, cfg.seed, extra_candidates);
  res.candidates = cands.size();
  DirectionSet<M> active = dirs;

  auto coarse_best = [&](const DepthProfile<M>& prof) {
    const auto depths = prof.depth_many(cands);
    detail::MedianKey best;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      // distance only matters on a depth tie
      if (depths[i].value < best.depth) continue;
      const auto k = key_of(cands[i], depths[i].value, i);
      if (k.better_than(best)) best = k;
    }
    return best;
  };

  detail::MedianKey best;
  {
    DepthProfile<M> prof(m, mu, active);
    best = coarse_best(prof);
    for (std::size_t round = 0; round < cfg.refine_rounds; ++round) {
      active = detail::refined_set(prof, cands[best.index], cfg);
      if (active.size() == prof.num_directions()) break;
      prof = DepthProfile<M>(m, mu, active);
      best = coarse_best(prof);
    }
  }
  const DepthProfile<M> prof(m, mu, active);
  res.candidate_index = best.index;
  Point x = cands[best.index];
  res.search_trace.push_back({x, best.depth});

  std::size_t visit = cands.size();
  double step = cfg.initial_step;
  for (std::size_t level = 0; level <= cfg.halvings; ++level, step *= 0.5) {
    for (std::size_t moves = 0; moves < cfg.max_moves_per_level; ++moves) {
      const auto basis = m.tangent_basis(x);
      detail::MedianKey round_best = best;
      Point round_point = x;
      for (const auto& b : basis) {
        for (double sign : {1.0, -1.0}) {
          Point y;
          try {
            y = m.exp_map(x, (sign * step) * b);
          } catch (const DomainError&) {
            continue;
          }
          const auto k = key_of(y, prof.depth(y).value, visit++);
          // a later visit only wins on depth or centroid distance
          if (k.depth > round_best.depth ||
              (k.depth == round_best.depth && k.centroid_distance < round_best.centroid_distance)) {
            round_best = k;
            round_point = y;
          }
        }
      }
      if (round_best.index == best.index) break;
      best = round_best;
      x = round_point;
      res.search_trace.push_back({x, best.depth});
    }
  }

  const auto dv = prof.depth(x);
  res.point = x;
  res.depth = dv.value;
  res.direction_index = dv.direction_index;
  res.directions = std::move(active);
  return res;
}

}  // namespace horodepth
