#include <doctest.h>

#include <random>

#include "horodepth/depth/contour.hpp"
#include "horodepth/robustness/experiments.hpp"
#include "test_support.hpp"

using namespace horodepth;
using horodepth::testing::random_points;

namespace {

EuclideanPoint ep(double x, double y) { return {Eigen::Vector2d(x, y)}; }

std::vector<BallPoint> ball_grid(const PoincareBall& b, std::size_t k) {
  return grid_points(b, GridSpec{-0.68, 0.68, -0.68, 0.68, k, k, 0.0});
}

}  // namespace

TEST_CASE("contaminate examples") {
  const Euclidean e(2);
  const auto mu = EmpiricalMeasure<EuclideanPoint>::uniform({ep(0, 0), ep(1, 0), ep(0, 1), ep(1, 1)});
  const auto xi = e.make_direction(Eigen::Vector2d(1, 0));
  const auto same = contaminate(e, mu, ContaminationSpec<Euclidean>{0.0, PointMassContaminant<Euclidean>{xi, 3.0}});
  CHECK(same.size() == 4);
  CHECK(same.weights() == mu.weights());

  const auto pm = contaminate(e, mu, ContaminationSpec<Euclidean>{0.2, PointMassContaminant<Euclidean>{xi, 3.0}});
  REQUIRE(pm.size() == 5);
  for (double w : pm.weights()) CHECK(w == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(pm.point(4).coords == Eigen::Vector2d(3, 0));

  const auto q = EmpiricalMeasure<EuclideanPoint>::uniform({ep(5, 5), ep(6, 6), ep(7, 7)});
  const auto mix = contaminate(e, mu, ContaminationSpec<Euclidean>{0.3, q});
  double total = 0.0;
  for (double w : mix.weights()) total += w;
  CHECK(std::abs(total - 1.0) <= 1e-12);
  CHECK(mix.weight(5) == doctest::Approx(0.1));

  CHECK_THROWS(contaminate(e, mu, ContaminationSpec<Euclidean>{1.0, q}));
  CHECK_THROWS(contaminate(e, mu, ContaminationSpec<Euclidean>{-0.1, q}));
  CHECK_THROWS(contaminate(e, mu, ContaminationSpec<Euclidean>{0.1, PointMassContaminant<Euclidean>{xi, -1.0}}));
}

TEST_CASE("symmetrize") {
  const PoincareBall b(2);
  const auto origin = b.base_point();
  CHECK(reflect(b, origin, origin).coords().norm() == 0.0);
  const auto theta = b.make_point(Eigen::Vector2d(0.35, 0.2));
  CHECK((reflect(b, theta, theta).coords() - theta.coords()).norm() <= 1e-15);

  const auto pts = random_points(b, 10, 0.6, 3);
  const auto sym = symmetrize(b, EmpiricalMeasure<BallPoint>::uniform(pts), origin);
  REQUIRE(sym.size() == 20);
  for (std::size_t i = 0; i < 10; ++i) CHECK((sym.point(2 * i + 1).coords() + pts[i].coords()).norm() <= 1e-15);

  std::vector<BallPoint> with_theta = random_points(b, 30, 0.5, 4);
  with_theta.push_back(theta);
  const auto st = symmetrize(b, EmpiricalMeasure<BallPoint>::uniform(with_theta), theta);
  CHECK(st.size() == 61);
  CHECK(st.weight(60) == doctest::Approx(1.0 / 31.0));
  CHECK(DepthProfile<PoincareBall>(b, st, grid_directions(b, 360)).depth(theta).value >= 0.5);
  // closed under the reflection
  for (std::size_t i = 0; i + 1 < 60; i += 2) {
    CHECK((reflect(b, theta, st.point(i)).coords() - st.point(i + 1).coords()).norm() <= 1e-12);
  }
}

TEST_CASE("limiting depth algebra") {
  const Euclidean e(2);
  std::vector<EuclideanPoint> pts(3, ep(1, 1));
  pts.insert(pts.end(), 2, ep(1, -1));
  pts.insert(pts.end(), 5, ep(-1, -1));
  const auto mu = EmpiricalMeasure<EuclideanPoint>::uniform(pts);
  const auto xi = e.make_direction(Eigen::Vector2d(-1, 0));   // B = x
  const auto eta = e.make_direction(Eigen::Vector2d(0, -1));  // B = y
  const auto dirs = explicit_directions<Euclidean>({xi, eta});
  CHECK(directional_mass(e, xi, ep(0, 0), mu) == 0.5);
  CHECK(sample_depth(e, ep(0, 0), mu, dirs).value == doctest::Approx(0.3));
  CHECK(limiting_depth(e, ep(0, 0), mu, 0.2, xi, dirs) == doctest::Approx(0.4));

  const auto far = ep(5, 5);
  CHECK(sample_depth(e, far, mu, dirs).value == 0.0);
  CHECK(limiting_depth(e, far, mu, 0.2, xi, dirs) == 0.0);
  const auto left = ep(-2, -2);  // nothing to the left, mass 1 along xi
  CHECK(directional_mass(e, xi, left, mu) == 1.0);
  CHECK(limiting_depth(e, ep(-2, 2), mu, 0.2, xi, dirs) == doctest::Approx(std::min(0.8 * 1.0, 0.2)));
  CHECK_THROWS(limiting_depth(e, far, mu, 0.0, xi, dirs));
}

TEST_CASE("contaminated depth settles onto the limiting depth") {
  const PoincareBall b(2);
  const auto mu = EmpiricalMeasure<BallPoint>::uniform(random_points(b, 60, 0.6, 10));
  const auto dirs = grid_directions(b, 90);
  const auto grid = ball_grid(b, 12);
  const auto T = settling_time(b, dirs, 10, grid, 0.01, 60.0);
  REQUIRE(T.has_value());
  const DepthProfile<PoincareBall> clean(b, mu, dirs);
  for (double t : {*T, *T + 0.5, *T + 3.0, 40.0}) {
    const auto mixed = contaminate(b, mu, ContaminationSpec<PoincareBall>{0.2, PointMassContaminant<PoincareBall>{dirs[10], t}});
    const DepthProfile<PoincareBall> prof(b, mixed, dirs);
    for (const auto& z : grid) CHECK(prof.depth(z).value == limiting_depth(clean, z, 0.2, dirs[10]));
  }
}

TEST_CASE("limiting region") {
  const PoincareBall b(2);
  const auto mu = EmpiricalMeasure<BallPoint>::uniform(random_points(b, 50, 0.6, 20));
  const auto dirs = grid_directions(b, 60);
  const DepthProfile<PoincareBall> prof(b, mu, dirs);
  const auto& xi = dirs[7];
  CHECK(limiting_region(prof, 0.2, xi, 0.85).empty);
  const auto single = limiting_region(prof, 0.2, xi, 0.2);
  CHECK(single.size() == 1);
  const auto grid = ball_grid(b, 20);
  for (double alpha : {0.1, 0.2, 0.3, 0.5, 0.7, 0.8}) {
    const auto r = limiting_region(prof, 0.2, xi, alpha);
    for (const auto& z : grid) {
      CHECK(region_membership(b, r, z).inside == (limiting_depth(prof, z, 0.2, xi) >= alpha - kMassSlack));
    }
  }
  CHECK_THROWS(limiting_region(prof, 0.0, xi, 0.3));
}

TEST_CASE("huber experiment") {
  const SpdCone cone(2);
  const auto mu = EmpiricalMeasure<SpdPoint>::uniform(random_points(cone, 60, 0.5, 30));
  const auto q = EmpiricalMeasure<SpdPoint>::uniform(random_points(cone, 20, 1.5, 31));
  const auto grid = grid_points(cone, GridSpec{0.4, 2.5, 0.4, 2.5, 10, 10, 0.2});
  HuberSettings s;
  s.eps_list = {0.0, 0.1, 0.3};
  const auto recs = experiment_huber(cone, mu, q, grid, seeded_directions(cone, 60, 32), s);
  REQUIRE(recs.size() == 3);
  for (const auto& r : recs) CHECK(r.passed());
  CHECK(recs[0].measured["max_gap"].get<double>() == 0.0);
  CHECK(recs[2].measured["max_gap"].get<double>() > 0.0);
}

TEST_CASE("boundary experiment") {
  const PoincareBall b(2);
  const auto mu = EmpiricalMeasure<BallPoint>::uniform(random_points(b, 40, 0.5, 40));
  BoundarySettings s;
  s.t_list = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 30};
  const auto recs = experiment_boundary(b, mu, ball_grid(b, 10), grid_directions(b, 60), s);
  const auto& sum = recs.back();
  CHECK(sum.label == "summary");
  CHECK(sum.passed());
  CHECK(sum.measured["settling_time"].get<double>() <= 25.0);

  s.epsilon = 0.0;
  for (const auto& r : experiment_boundary(b, mu, ball_grid(b, 6), grid_directions(b, 30), s)) {
    if (r.label != "summary") CHECK(r.measured["sup_gap"].get<double>() == 0.0);
  }
}

TEST_CASE("centerpoint experiment") {
  const Euclidean line(1);
  CenterpointSettings s;
  s.reps = 3;
  s.n = 41;
  const auto recs = experiment_centerpoint(line, seeded_directions(line, 2, 1), s);
  for (const auto& r : recs) {
    CHECK(r.measured["threshold"].get<double>() == 0.5);
    CHECK(r.passed());
  }
  const SpdCone cone(2);
  s.n = 100;
  const auto spd = experiment_centerpoint(cone, seeded_directions(cone, 100, 2), s);
  for (const auto& r : spd) {
    CHECK(r.measured["threshold"].get<double>() == 0.25);
    CHECK(r.passed());
  }
}

TEST_CASE("consistency experiment") {
  const PoincareBall b(2);
  ConsistencySettings s;
  s.reps = 3;
  s.n_list = {50, 400};
  s.n_ref = 1500;
  s.trend_required = 2;
  const auto theta = b.make_point(Eigen::Vector2d(0.2, -0.1));
  const auto recs = experiment_consistency(b, theta, ball_grid(b, 8), seeded_directions(b, 60, 3), s);
  CHECK(recs.size() == 7);
  CHECK(recs.back().measured["median_error"].size() == 2);
  CHECK(detail::sup_gap<PoincareBall>({0.1, 0.2}, {0.1, 0.2}) == 0.0);
}

TEST_CASE("breakdown experiment") {
  const PoincareBall b(2);
  const auto mu = EmpiricalMeasure<BallPoint>::uniform(random_points(b, 60, 0.5, 50));
  BreakdownSettings s;
  s.eps_list = {0.0, 0.1, 0.45};
  s.probes = 3;
  const auto recs = experiment_breakdown(b, mu, seeded_directions(b, 60, 51), s);
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].measured["displacement"].get<double>() == 0.0);
  CHECK(recs[0].passed());
  CHECK(recs[1].verdicts.contains("bounded"));
  CHECK(recs[1].passed());
  CHECK_FALSE(recs[2].verdicts.contains("bounded"));
}

TEST_CASE("record serialization") {
  ExperimentRecord r;
  r.experiment = "huber";
  r.label = "x";
  r.measured["gap"] = 0.1;
  r.measured["one"] = 1.0;
  r.verdicts["ok"] = true;
  const auto line = dump_json(r.to_json());
  CHECK(line.find("\"schema\":\"horodepth.record/1\"") != std::string::npos);
  CHECK(line.find("\"gap\":0.10000000000000001") != std::string::npos);
  CHECK(line.find("\"one\":1.0") != std::string::npos);
  CHECK(line.find("\"pass\":true") != std::string::npos);
  r.verdicts["bad"] = false;
  CHECK_FALSE(r.passed());
  CHECK(summary_table({r}).find("FAIL") != std::string::npos);
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(dump_json(json{{"v", std::numeric_limits<double>::infinity()}}) == "{\"v\":null}");
}
