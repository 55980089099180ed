#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "horodepth/depth/region.hpp"
#include "horodepth/estimators/frechet.hpp"
#include "horodepth/estimators/median.hpp"
#include "horodepth/robustness/contamination.hpp"
#include "horodepth/robustness/record.hpp"

namespace horodepth {

struct HuberSettings {
  std::vector<double> eps_list{0.05, 0.1, 0.2, 0.3};
  std::vector<double> alphas{0.1, 0.2, 0.3};  // region inclusion spot checks
  json seeds = json::object();
};

struct BoundarySettings {
  double epsilon = 0.2;
  std::size_t xi_index = 20;  // escape direction, taken from the direction set
  std::vector<double> t_list{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 20, 25, 30};
  double settle_step = 0.01;
  double settle_limit = 25.0;
  double frechet_t_max = 10.0;  // drift monotonicity is checked for t <= this
  IterConfig frechet;
  json seeds = json::object();
};

struct CenterpointSettings {
  std::size_t n = 200;
  std::size_t reps = 50;
  double sigma = 0.5;
  std::uint64_t seed = 1;
  SearchConfig search;
};

struct ConsistencySettings {
  std::vector<std::size_t> n_list{100, 300, 1000};
  std::size_t reps = 20;
  double sigma = 0.5;
  std::size_t n_ref = 5000;
  std::size_t trend_required = 16;  // replicates with strictly decreasing sup-gap
  std::uint64_t seed = 7;
  SearchConfig search;
};

struct BreakdownSettings {
  std::vector<double> eps_list{0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
  std::size_t probes = 8;   // sampled directions tried per epsilon
  double distance = 50.0;   // adversary distance, clipped to the ray guard
  double slack_factor = 3.0;
  std::uint64_t seed = 11;
  SearchConfig search;
  json seeds = json::object();
};

namespace detail {

template <Manifold M>
double sup_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double g = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]));
  return g;
}

template <Manifold M>
std::vector<double> depth_values(const DepthProfile<M>& prof, const std::vector<typename M::Point>& zs) {
  const auto dv = prof.depth_many(zs);
  std::vector<double> out(dv.size());
  for (std::size_t i = 0; i < dv.size(); ++i) out[i] = dv[i].value;
  return out;
}

template <Manifold M>
double chart_norm(const M& m, const typename M::Point& x) {
  double s = 0.0;
  for (double v : m.to_row(x)) s += v * v;
  return std::sqrt(s);
}

inline std::vector<std::size_t> seeded_subset(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k >= n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return all;
  }
  std::mt19937_64 rng(seed);
  std::unordered_set<std::size_t> chosen;
  for (std::size_t j = n - k; j < n; ++j) {
    const std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(rng);
    chosen.insert(chosen.count(t) ? j : t);
  }
  std::vector<std::size_t> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// |D_m(z; (1 - eps) P + eps Q) - D_m(z; P)| <= eps on every grid point, plus
/// D^{alpha + eps}(P) inside D^alpha(P_eps).
template <Manifold M>
std::vector<ExperimentRecord> experiment_huber(const M& m, const EmpiricalMeasure<typename M::Point>& mu,
                                               const EmpiricalMeasure<typename M::Point>& q,
                                               const std::vector<typename M::Point>& grid, const DirectionSet<M>& dirs,
                                               const HuberSettings& s = {}) {
  const DepthProfile<M> clean(m, mu, dirs);
  const auto d0 = detail::depth_values(clean, grid);
  std::vector<ExperimentRecord> out;
  for (double eps : s.eps_list) {
    const auto mixed = contaminate(m, mu, ContaminationSpec<M>{eps, q});
    const DepthProfile<M> prof(m, mixed, dirs);
    const auto d1 = detail::depth_values(prof, grid);
    const double gap = detail::sup_gap<M>(d0, d1);

    ExperimentRecord r;
    r.experiment = "huber";
    r.label = "eps=" + format_double(eps);
    r.params = {{"manifold", M::name()}, {"dimension", m.dimension()}, {"epsilon", eps}, {"n", mu.size()},
                {"contaminant_n", q.size()}, {"m", dirs.size()}, {"direction_seed", dirs.seed},
                {"direction_source", to_string(dirs.source)}, {"grid_points", grid.size()}, {"seeds", s.seeds}};
    r.measured["max_gap"] = gap;
    r.verdicts["gap_within_eps"] = gap <= eps + 1e-12;
    if (eps == 0.0) r.verdicts["zero_gap"] = gap == 0.0;

    std::size_t checked = 0;
    std::size_t violations = 0;
    for (double alpha : s.alphas) {
      if (!(alpha + eps < 1.0)) continue;
      const auto outer = region_thresholds(prof, alpha);
      const auto inner = region_thresholds(clean, alpha + eps);
      for (const auto& z : grid) {
        if (!region_membership(m, inner, z).inside) continue;
        ++checked;
        if (!region_membership(m, outer, z).inside) ++violations;
      }
    }
    r.measured["inclusion_checked"] = checked;
    r.measured["inclusion_violations"] = violations;
    r.verdicts["region_inclusion"] = violations == 0;
    out.push_back(std::move(r));
  }
  return out;
}

/// Smallest t on the settle_step lattice from which, for every grid point z,
/// B_j(gamma(t)) >= B_j(z) for all directions j != xi and B_xi(gamma(t)) < B_xi(z).
/// Busemann functions are convex along the ray, so once B_j(gamma) has
/// reached max_z B_j(z) on a nondecreasing step it stays above.
template <Manifold M>
std::optional<double> settling_time(const M& m, const DirectionSet<M>& dirs, std::size_t xi_index,
                                    const std::vector<typename M::Point>& grid, double step, double t_max) {
  const std::size_t k = dirs.size();
  std::vector<double> hi(k, -std::numeric_limits<double>::infinity());
  std::vector<double> lo(k, std::numeric_limits<double>::infinity());
  for (const auto& z : grid) {
    for (std::size_t j = 0; j < k; ++j) {
      const double b = m.busemann(dirs[j], z);
      hi[j] = std::max(hi[j], b);
      lo[j] = std::min(lo[j], b);
    }
  }
  const auto& xi = dirs[xi_index];
  const auto base = m.base_point();
  std::vector<double> prev(k);
  for (std::size_t j = 0; j < k; ++j) prev[j] = m.busemann(dirs[j], base);
  for (std::size_t i = 1;; ++i) {
    const double t = static_cast<double>(i) * step;
    if (t > t_max) return std::nullopt;
    const auto g = m.ray_point(base, xi, t);
    bool ok = true;
    for (std::size_t j = 0; j < k; ++j) {
      const double b = m.busemann(dirs[j], g);
      if (j == xi_index) {
        ok = ok && b < lo[j];
      } else {
        ok = ok && b >= hi[j] && b >= prev[j];
      }
      prev[j] = b;
    }
    if (ok) return t;
  }
}

/// Point mass escaping along xi: sup-grid gap to the limiting depth for each
/// t, the settling time, and the drift of the contaminated Frechet mean.
template <Manifold M>
std::vector<ExperimentRecord> experiment_boundary(const M& m, const EmpiricalMeasure<typename M::Point>& mu,
                                                  const std::vector<typename M::Point>& grid,
                                                  const DirectionSet<M>& dirs, const BoundarySettings& s = {}) {
  if (s.xi_index >= dirs.size()) throw std::invalid_argument("escape direction index out of range");
  const auto& xi = dirs[s.xi_index];
  const double guard = m.max_ray_parameter(m.base_point(), xi);
  const DepthProfile<M> clean(m, mu, dirs);
  std::vector<double> limit(grid.size());
  if (s.epsilon == 0.0) {
    limit = detail::depth_values(clean, grid);
  } else {
    parallel_for(grid.size(), [&](std::size_t i) { limit[i] = limiting_depth(clean, grid[i], s.epsilon, xi); }, 8);
  }
  const auto settle = s.epsilon == 0.0 ? std::optional<double>(0.0)
                                       : settling_time(m, dirs, s.xi_index, grid, s.settle_step, std::min(guard, 100.0));
  std::vector<double> ts = s.t_list;
  if (settle && *settle > 0.0) ts.push_back(*settle);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  json common = {{"manifold", M::name()}, {"dimension", m.dimension()}, {"epsilon", s.epsilon}, {"n", mu.size()},
                 {"m", dirs.size()}, {"direction_seed", dirs.seed}, {"direction_source", to_string(dirs.source)},
                 {"xi_index", s.xi_index}, {"grid_points", grid.size()}, {"seeds", s.seeds}};
  std::vector<ExperimentRecord> out;
  bool exact_after = true;
  bool nonincreasing_after = true;
  double last_settled_gap = std::numeric_limits<double>::infinity();
  std::vector<double> drift_norm;
  std::vector<double> drift_busemann;
  bool truncated = false;
  for (double t : ts) {
    if (t > guard) {
      diagnostics::warn("experiment_boundary: t = " + format_double(t) + " exceeds the ray guard, sweep truncated");
      truncated = true;
      break;
    }
    const auto mixed = contaminate(m, mu, ContaminationSpec<M>{s.epsilon, PointMassContaminant<M>{xi, t}});
    const DepthProfile<M> prof(m, mixed, dirs);
    const double gap = detail::sup_gap<M>(detail::depth_values(prof, grid), limit);
    const auto fm = frechet_mean(m, mixed, s.frechet);
    const bool settled = settle && t >= *settle;

    ExperimentRecord r;
    r.experiment = "boundary";
    r.label = "t=" + format_double(t);
    r.params = common;
    r.params["t"] = t;
    r.measured = {{"sup_gap", gap},
                  {"settled", settled},
                  {"frechet_base_distance", m.distance(m.base_point(), fm.point)},
                  {"frechet_chart_norm", detail::chart_norm(m, fm.point)},
                  {"frechet_busemann_xi", m.busemann(xi, fm.point)},
                  {"frechet_iterations", fm.iterations},
                  {"frechet_converged", fm.converged}};
    if (settled) {
      exact_after = exact_after && gap == 0.0;
      nonincreasing_after = nonincreasing_after && gap <= last_settled_gap;
      last_settled_gap = gap;
    }
    if (t <= s.frechet_t_max && std::find(s.t_list.begin(), s.t_list.end(), t) != s.t_list.end()) {
      drift_norm.push_back(detail::chart_norm(m, fm.point));
      drift_busemann.push_back(m.busemann(xi, fm.point));
    }
    out.push_back(std::move(r));
  }

  ExperimentRecord sum;
  sum.experiment = "boundary";
  sum.label = "summary";
  sum.params = common;
  sum.params["t_list"] = ts;
  sum.measured["settling_time"] = settle ? json(*settle) : json(nullptr);
  sum.measured["truncated"] = truncated;
  sum.measured["frechet_chart_norms"] = drift_norm;
  sum.measured["frechet_busemann_xi"] = drift_busemann;
  bool increasing = drift_norm.size() >= 2;
  bool decreasing = drift_busemann.size() >= 2;
  for (std::size_t i = 1; i < drift_norm.size(); ++i) {
    increasing = increasing && drift_norm[i] > drift_norm[i - 1];
    decreasing = decreasing && drift_busemann[i] < drift_busemann[i - 1];
  }
  sum.verdicts["settling_time_found"] = settle.has_value() && *settle <= s.settle_limit;
  sum.verdicts["exact_after_settling"] = settle.has_value() && exact_after;
  sum.verdicts["gap_nonincreasing_after_settling"] = nonincreasing_after;
  if (s.epsilon > 0.0) {
    sum.verdicts["frechet_norm_increasing"] = increasing;
    sum.verdicts["frechet_busemann_decreasing"] = decreasing;
  }
  out.push_back(std::move(sum));
  return out;
}

/// Median depth >= 1 / (dim + 1) on wrapped-Gaussian samples about the base point.
template <Manifold M>
std::vector<ExperimentRecord> experiment_centerpoint(const M& m, const DirectionSet<M>& dirs,
                                                     const CenterpointSettings& s = {}) {
  const double threshold = 1.0 / static_cast<double>(m.dimension() + 1);
  std::vector<ExperimentRecord> out(s.reps);
  for (std::size_t rep = 0; rep < s.reps; ++rep) {
    auto rng = replicate_rng(s.seed, rep);
    const auto mu = EmpiricalMeasure<typename M::Point>::uniform(wrapped_gaussian(m, m.base_point(), s.n, s.sigma, rng));
    const auto med = busemann_median(m, mu, dirs, s.search);
    ExperimentRecord& r = out[rep];
    r.experiment = "centerpoint";
    r.label = "rep=" + std::to_string(rep);
    r.params = {{"manifold", M::name()},
                {"dimension", m.dimension()},
                {"n", s.n},
                {"sigma", s.sigma},
                {"m", dirs.size()},
                {"direction_seed", dirs.seed},
                {"seeds", {{"data", s.seed}, {"replicate", rep}, {"search", s.search.seed}}},
                {"search", med.config_fingerprint}};
    r.measured = {{"depth", med.depth}, {"threshold", threshold}, {"point", m.to_row(med.point)}};
    r.verdicts["depth_at_least_threshold"] = med.depth >= threshold;
  }
  return out;
}

/// Median error d(median_n, theta) and sup-grid |D_n - D_ref| for nested samples.
template <Manifold M>
std::vector<ExperimentRecord> experiment_consistency(const M& m, const typename M::Point& theta,
                                                     const std::vector<typename M::Point>& grid,
                                                     const DirectionSet<M>& dirs, const ConsistencySettings& s = {}) {
  if (s.n_list.empty()) throw std::invalid_argument("n_list must not be empty");
  const std::size_t n_max = *std::max_element(s.n_list.begin(), s.n_list.end());
  const std::size_t k = s.n_list.size();
  std::vector<std::vector<double>> err(k, std::vector<double>(s.reps));
  std::vector<std::vector<double>> gaps(k, std::vector<double>(s.reps));
  std::vector<ExperimentRecord> out;
  for (std::size_t rep = 0; rep < s.reps; ++rep) {
    auto rng = replicate_rng(s.seed, rep, 0);
    auto ref_rng = replicate_rng(s.seed, rep, 1);
    const auto sample = wrapped_gaussian(m, theta, n_max, s.sigma, rng);
    const auto ref = EmpiricalMeasure<typename M::Point>::uniform(wrapped_gaussian(m, theta, s.n_ref, s.sigma, ref_rng));
    const auto d_ref = detail::depth_values(DepthProfile<M>(m, ref, dirs), grid);
    for (std::size_t a = 0; a < k; ++a) {
      const std::vector<typename M::Point> head(sample.begin(), sample.begin() + static_cast<std::ptrdiff_t>(s.n_list[a]));
      const auto mu = EmpiricalMeasure<typename M::Point>::uniform(head);
      const auto med = busemann_median(m, mu, dirs, s.search);
      err[a][rep] = m.distance(med.point, theta);
      gaps[a][rep] = detail::sup_gap<M>(detail::depth_values(DepthProfile<M>(m, mu, dirs), grid), d_ref);
      ExperimentRecord r;
      r.experiment = "consistency";
      r.label = "rep=" + std::to_string(rep) + ",n=" + std::to_string(s.n_list[a]);
      r.params = {{"manifold", M::name()},
                  {"dimension", m.dimension()},
                  {"n", s.n_list[a]},
                  {"n_ref", s.n_ref},
                  {"sigma", s.sigma},
                  {"theta", m.to_row(theta)},
                  {"m", dirs.size()},
                  {"direction_seed", dirs.seed},
                  {"seeds", {{"data", s.seed}, {"replicate", rep}, {"search", s.search.seed}}}};
      r.measured = {{"median_error", err[a][rep]}, {"sup_gap", gaps[a][rep]}, {"median_depth", med.depth}};
      out.push_back(std::move(r));
    }
  }
  auto median_of = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
  };
  std::vector<double> med_err(k);
  for (std::size_t a = 0; a < k; ++a) med_err[a] = median_of(err[a]);
  std::size_t decreasing = 0;
  for (std::size_t rep = 0; rep < s.reps; ++rep) {
    bool dec = true;
    for (std::size_t a = 1; a < k; ++a) dec = dec && gaps[a][rep] < gaps[a - 1][rep];
    decreasing += dec ? 1 : 0;
  }
  ExperimentRecord sum;
  sum.experiment = "consistency";
  sum.label = "summary";
  sum.params = {{"manifold", M::name()}, {"n_list", s.n_list}, {"reps", s.reps}, {"n_ref", s.n_ref},
                {"m", dirs.size()}, {"seeds", {{"data", s.seed}, {"search", s.search.seed}}}};
  sum.measured = {{"median_error", med_err}, {"gap_decreasing_replicates", decreasing}};
  sum.verdicts["median_error_decreases"] = med_err.back() < med_err.front();
  sum.verdicts["gap_trend"] = decreasing >= s.trend_required;
  out.push_back(std::move(sum));
  return out;
}

/// Point masses pushed along a seeded subset of the sampled directions; the
/// worst median displacement per epsilon is compared with the data diameter.
template <Manifold M>
std::vector<ExperimentRecord> experiment_breakdown(const M& m, const EmpiricalMeasure<typename M::Point>& mu,
                                                   const DirectionSet<M>& dirs, const BreakdownSettings& s = {}) {
  const auto clean = busemann_median(m, mu, dirs, s.search);
  const double d_star = clean.depth;
  const double eps_bound = d_star / (1.0 + d_star);
  double diameter = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = i + 1; j < mu.size(); ++j) diameter = std::max(diameter, m.distance(mu.point(i), mu.point(j)));
  const auto probes = detail::seeded_subset(dirs.size(), s.probes, s.seed);

  std::vector<ExperimentRecord> out;
  for (double eps : s.eps_list) {
    double worst = 0.0;
    std::size_t worst_dir = 0;
    double used_distance = 0.0;
    if (eps == 0.0) {
      const auto again = busemann_median(m, contaminate(m, mu, ContaminationSpec<M>{0.0, mu}), dirs, s.search);
      worst = m.distance(again.point, clean.point);
    } else {
      for (std::size_t j : probes) {
        const double t = std::min(s.distance, m.max_ray_parameter(m.base_point(), dirs[j]));
        used_distance = t;
        const auto mixed = contaminate(m, mu, ContaminationSpec<M>{eps, PointMassContaminant<M>{dirs[j], t}});
        const auto med = busemann_median(m, mixed, dirs, s.search);
        const double disp = m.distance(med.point, clean.point);
        if (disp > worst) {
          worst = disp;
          worst_dir = j;
        }
      }
    }
    ExperimentRecord r;
    r.experiment = "breakdown";
    r.label = "eps=" + format_double(eps);
    r.params = {{"manifold", M::name()},
                {"dimension", m.dimension()},
                {"epsilon", eps},
                {"n", mu.size()},
                {"m", dirs.size()},
                {"direction_seed", dirs.seed},
                {"probes", probes},
                {"adversary_distance", used_distance},
                {"seeds", {{"probe", s.seed}, {"search", s.search.seed}, {"data", s.seeds}}}};
    r.measured = {{"displacement", worst},    {"worst_direction", worst_dir}, {"clean_depth", d_star},
                  {"eps_bound", eps_bound},   {"diameter", diameter}};
    if (eps == 0.0) r.verdicts["zero_displacement"] = worst == 0.0;
    if (eps <= eps_bound) r.verdicts["bounded"] = worst <= s.slack_factor * diameter;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace horodepth
