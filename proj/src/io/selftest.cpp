#include "horodepth/io/selftest.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "horodepth/depth/tukey2d.hpp"
#include "horodepth/io/config.hpp"
#include "horodepth/io/dataset.hpp"
#include "horodepth/io/export.hpp"
#include "horodepth/robustness/experiments.hpp"

namespace horodepth {

namespace {

template <Manifold M>
std::vector<typename M::Point> cloud(const M& m, std::size_t n, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return wrapped_gaussian(m, m.base_point(), n, sigma, rng);
}

template <Manifold M>
bool busemann_identities(const M& m) {
  for (const auto& xi : m.sample_directions(5, 3)) {
    if (std::abs(m.busemann(xi, m.base_point())) > 1e-12) return false;
    for (double t : {0.1, 1.0, 5.0}) {
      if (std::abs(m.busemann(xi, m.ray_point(m.base_point(), xi, t)) + t) > 1e-8) return false;
    }
  }
  return true;
}

template <Manifold M>
bool triangle_inequality(const M& m) {
  const auto p = cloud(m, 30, 1.0, 5);
  for (std::size_t i = 0; i + 2 < p.size(); ++i) {
    const double ab = m.distance(p[i], p[i + 1]);
    const double bc = m.distance(p[i + 1], p[i + 2]);
    const double ac = m.distance(p[i], p[i + 2]);
    if (ac > ab + bc + 1e-9 || std::abs(ab - m.distance(p[i + 1], p[i])) > 1e-9) return false;
  }
  return true;
}

template <Manifold M>
bool exp_log_roundtrip(const M& m) {
  const auto p = cloud(m, 20, 0.8, 7);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const auto y = m.exp_map(p[i], m.log_map(p[i], p[i + 1]));
    if (m.distance(y, p[i + 1]) > 1e-8) return false;
  }
  return true;
}

template <Manifold M>
bool equivariance(const M& m, int n) {
  const auto q = OrthogonalMap::random(n, 17);
  const auto pts = cloud(m, 30, 1.0, 11);
  const auto dirs = seeded_directions(m, 25, 12);
  std::vector<typename M::Point> rp;
  for (const auto& x : pts) rp.push_back(m.apply_isometry(q, x));
  std::vector<typename M::Direction> rd;
  for (const auto& d : dirs.directions) rd.push_back(m.boundary_action(q, d));
  const DepthProfile<M> a(m, EmpiricalMeasure<typename M::Point>::uniform(pts), dirs);
  const DepthProfile<M> b(m, EmpiricalMeasure<typename M::Point>::uniform(rp), explicit_directions<M>(rd));
  for (const auto& z : cloud(m, 20, 1.0, 13)) {
    if (std::abs(a.depth(z).value - b.depth(m.apply_isometry(q, z)).value) > 1e-12) return false;
  }
  return true;
}

bool tukey_oracle() {
  const Euclidean e(2);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto pts = cloud(e, 20, 1.0, 100 + s);
    const DepthProfile<Euclidean> prof(e, EmpiricalMeasure<EuclideanPoint>::uniform(pts), grid_directions(e, 720));
    for (const auto& z : cloud(e, 10, 1.0, 200 + s)) {
      const double exact = exact_tukey_depth_2d(z, pts).value();
      const double sampled = prof.depth(z).value;
      if (sampled < exact || sampled > exact + 1.0 / 20.0 + 1e-12) return false;
    }
  }
  return true;
}

bool region_nesting() {
  const PoincareBall b(2);
  const DepthProfile<PoincareBall> prof(b, EmpiricalMeasure<BallPoint>::uniform(cloud(b, 60, 0.8, 21)),
                                        grid_directions(b, 90));
  std::vector<DepthRegion<PoincareBall>> regions;
  for (double a : {0.1, 0.2, 0.3, 0.4, 0.5}) regions.push_back(region_thresholds(prof, a));
  for (const auto& z : cloud(b, 200, 1.0, 22)) {
    for (std::size_t k = 1; k < regions.size(); ++k) {
      if (region_membership(b, regions[k], z).inside && !region_membership(b, regions[k - 1], z).inside) return false;
    }
  }
  return true;
}

bool frechet_flat() {
  const Euclidean e(2);
  const auto pts = cloud(e, 25, 1.0, 31);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(2);
  for (const auto& p : pts) mean += p.coords / 25.0;
  const auto r = frechet_mean(e, EmpiricalMeasure<EuclideanPoint>::uniform(pts));
  return r.converged && (r.point.coords - mean).norm() < 1e-12;
}

bool median_centerpoint() {
  const PoincareBall b(2);
  const auto mu = EmpiricalMeasure<BallPoint>::uniform(cloud(b, 60, 0.5, 41));
  const auto med = busemann_median(b, mu, grid_directions(b, 90));
  return med.depth >= 1.0 / 3.0;
}

bool huber_gap() {
  const PoincareBall b(2);
  const auto dirs = grid_directions(b, 60);
  const auto mu = EmpiricalMeasure<BallPoint>::uniform(cloud(b, 50, 0.5, 51));
  std::mt19937_64 rng(52);
  const auto q = EmpiricalMeasure<BallPoint>::uniform(
      wrapped_gaussian(b, b.ray_point(b.base_point(), dirs[0], 1.5), 10, 0.3, rng));
  HuberSettings s;
  s.eps_list = {0.1, 0.3};
  for (const auto& r : experiment_huber(b, mu, q, grid_points(b, GridSpec{-0.6, 0.6, -0.6, 0.6, 8, 8, 0.0}), dirs, s)) {
    if (!r.passed()) return false;
  }
  return true;
}

bool settled_identity() {
  const PoincareBall b(2);
  const auto dirs = grid_directions(b, 36);
  const auto mu = EmpiricalMeasure<BallPoint>::uniform(cloud(b, 40, 0.5, 61));
  const auto& xi = dirs[5];
  const DepthProfile<PoincareBall> clean(b, mu, dirs);
  const auto mixed = contaminate(b, mu, ContaminationSpec<PoincareBall>{0.2, PointMassContaminant<PoincareBall>{xi, 25.0}});
  const DepthProfile<PoincareBall> dirty(b, mixed, dirs);
  for (const auto& z : cloud(b, 30, 0.6, 62)) {
    if (dirty.depth(z).value != limiting_depth(clean, z, 0.2, xi)) return false;
  }
  return true;
}

bool dataset_roundtrip() {
  const SpdCone c(3);
  const auto mu = EmpiricalMeasure<SpdPoint>::uniform(cloud(c, 15, 0.7, 71));
  std::stringstream ss;
  write_dataset(ss, to_dataset(c, mu, ManifoldKind::spd));
  const auto back = to_measure(c, parse_dataset(ss));
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if ((back.point(i).matrix() - mu.point(i).matrix()).cwiseAbs().maxCoeff() > 1e-12) return false;
  }
  return back.size() == mu.size();
}

bool config_roundtrip() {
  RunConfig c;
  c.manifold = "spd";
  c.theta = {1.5, 0.25, 0.75};
  c.search.seed = 99;
  const auto j = to_json(c);
  return to_json(config_from_json(json::parse(dump_json(j)))) == j;
}

bool region_reimport() {
  const PoincareBall b(2);
  const DepthProfile<PoincareBall> prof(b, EmpiricalMeasure<BallPoint>::uniform(cloud(b, 40, 0.7, 81)),
                                        seeded_directions(b, 30, 82));
  const auto r = region_thresholds(prof, 0.25);
  const auto back = region_from_json(b, json::parse(dump_json(region_to_json(b, r))));
  for (const auto& z : cloud(b, 100, 1.0, 83)) {
    if (region_membership(b, r, z).inside != region_membership(b, back, z).inside) return false;
  }
  return true;
}

}  // namespace

std::vector<SelftestCheck> selftest_checks() {
  const Euclidean e(3);
  const PoincareBall b(3);
  const SpdCone s(3);
  return {
      {"manifold", "busemann_identities_euclidean", [=] { return busemann_identities(e); }},
      {"manifold", "busemann_identities_ball", [=] { return busemann_identities(b); }},
      {"manifold", "busemann_identities_spd", [=] { return busemann_identities(s); }},
      {"manifold", "triangle_inequality_ball", [=] { return triangle_inequality(b); }},
      {"manifold", "triangle_inequality_spd", [=] { return triangle_inequality(s); }},
      {"manifold", "exp_log_roundtrip_ball", [=] { return exp_log_roundtrip(b); }},
      {"manifold", "exp_log_roundtrip_spd", [=] { return exp_log_roundtrip(s); }},
      {"depth", "tukey_oracle_2d", tukey_oracle},
      {"depth", "region_nesting", region_nesting},
      {"depth", "equivariance_ball", [=] { return equivariance(b, 3); }},
      {"depth", "equivariance_spd", [=] { return equivariance(s, 3); }},
      {"estimators", "frechet_flat_mean", frechet_flat},
      {"estimators", "median_centerpoint", median_centerpoint},
      {"robustness", "huber_gap", huber_gap},
      {"robustness", "settled_identity", settled_identity},
      {"io", "dataset_roundtrip_spd", dataset_roundtrip},
      {"io", "config_roundtrip", config_roundtrip},
      {"io", "region_reimport", region_reimport},
  };
}

int run_selftest(std::ostream& out) {
  int failures = 0;
  out << std::left << std::setw(12) << "module" << std::setw(34) << "check" << "result\n";
  for (const auto& c : selftest_checks()) {
    bool ok = false;
    std::string note;
    try {
      ok = c.run();
    } catch (const std::exception& ex) {
      note = std::string(" (") + ex.what() + ")";
    }
    if (!ok) ++failures;
    out << std::setw(12) << c.module << std::setw(34) << c.name << (ok ? "pass" : "FAIL") << note << '\n';
  }
  out << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed") << '\n';
  return failures;
}

}  // namespace horodepth
