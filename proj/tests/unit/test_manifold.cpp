#include <doctest.h>

#include <cmath>
#include <random>

#include "horodepth/manifold/manifold.hpp"
#include "horodepth/manifold/spd_linalg.hpp"
#include "hp_oracle.hpp"
#include "test_support.hpp"

using namespace horodepth;
using horodepth::testing::random_points;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

// Shared property checks, instantiated once per geometry.
template <Manifold M>
void check_lipschitz_and_convexity(const M& m, std::uint64_t seed) {
  const auto xs = random_points(m, 200, 1.2, seed);
  const auto dirs = m.sample_directions(50, seed + 1);
  std::mt19937_64 rng(seed + 2);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst_lip = -1.0;
  double worst_cvx = -1.0;
  for (int k = 0; k < 10000; ++k) {
    const auto& x = xs[static_cast<std::size_t>(k) % xs.size()];
    const auto& y = xs[(static_cast<std::size_t>(k) * 7 + 3) % xs.size()];
    const auto& xi = dirs[static_cast<std::size_t>(k) % dirs.size()];
    const double bx = m.busemann(xi, x);
    const double by = m.busemann(xi, y);
    worst_lip = std::max(worst_lip, std::abs(bx - by) - m.distance(x, y));
    if (k % 10 == 0) {
      const double s = unif(rng);
      const double bm = m.busemann(xi, m.geodesic_point(x, y, s));
      worst_cvx = std::max(worst_cvx, bm - ((1.0 - s) * bx + s * by));
    }
  }
  CHECK(worst_lip <= 1e-9);
  CHECK(worst_cvx <= 1e-9);
}

template <Manifold M>
void check_maps(const M& m, std::uint64_t seed) {
  const auto xs = random_points(m, 60, 0.8, seed);
  for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
    const auto& a = xs[i];
    const auto& b = xs[i + 1];
    const double d = m.distance(a, b);
    CHECK(m.distance(b, a) == doctest::Approx(d).epsilon(1e-12));
    CHECK(m.distance(a, a) == doctest::Approx(0.0));
    for (double s : {0.1, 0.37, 0.5, 0.9}) {
      CHECK(std::abs(m.distance(a, m.geodesic_point(a, b, s)) - s * d) <= 1e-9);
    }
    const auto v = m.log_map(a, b);
    CHECK(std::abs(m.tangent_norm(a, v) - d) <= 1e-9);
    CHECK(m.distance(m.exp_map(a, v), b) <= 1e-8);
    const auto back = m.log_map(a, m.exp_map(a, v));
    CHECK(m.tangent_norm(a, back - v) <= 1e-8);
    if (i + 2 < xs.size()) {
      const auto& c = xs[i + 2];
      CHECK(m.distance(a, c) <= m.distance(a, b) + m.distance(b, c) + 1e-9);
    }
  }
}

template <Manifold M>
void check_base_and_rays(const M& m, std::uint64_t seed) {
  const auto dirs = m.sample_directions(25, seed);
  const auto base = m.base_point();
  for (const auto& xi : dirs) {
    CHECK(std::abs(m.busemann(xi, base)) <= 1e-12);
    for (double t : {0.1, 1.0, 5.0, 10.0, 20.0}) {
      CHECK(std::abs(m.busemann(xi, m.ray_point(base, xi, t)) + t) <= 1e-8);
    }
  }
}

template <Manifold M>
void check_isometry(const M& m, Eigen::Index n, std::uint64_t seed) {
  const auto xs = random_points(m, 30, 1.0, seed);
  const auto dirs = m.sample_directions(30, seed + 5);
  for (int k = 0; k < 10; ++k) {
    const OrthogonalMap q = OrthogonalMap::random(n, seed + 100 + static_cast<std::uint64_t>(k));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double b0 = m.busemann(dirs[i], xs[i]);
      const double b1 = m.busemann(m.boundary_action(q, dirs[i]), m.apply_isometry(q, xs[i]));
      CHECK(std::abs(b0 - b1) <= 1e-10);
    }
  }
}

}  // namespace

TEST_CASE("euclidean busemann examples") {
  const Euclidean e(2);
  CHECK(e.busemann(e.make_direction(vec({1, 0})), e.make_point(vec({0, 0}))) == 0.0);
  CHECK(e.busemann(e.make_direction(vec({1, 0})), e.make_point(vec({3, 5}))) == -3.0);
  CHECK(e.busemann(e.make_direction(vec({0, 1})), e.make_point(vec({2, -4}))) == 4.0);
  CHECK_THROWS_AS(e.busemann(e.make_direction(vec({0, 1, 0})), e.make_point(vec({2, -4}))), DimensionError);
}

TEST_CASE("ball busemann examples") {
  const PoincareBall b(2);
  const auto e1 = b.make_direction(vec({1, 0}));
  CHECK(b.busemann(e1, b.base_point()) == 0.0);
  // log((1 - tanh(t/2)) / (1 + tanh(t/2))) = -t
  CHECK(b.busemann(e1, b.make_point(vec({std::tanh(0.5), 0}))) == doctest::Approx(-1.0).epsilon(1e-14));
  const double v = b.busemann(b.make_direction(vec({0, 1})), b.make_point(vec({0, -0.5})));
  CHECK(v == doctest::Approx(std::log(2.25 / 0.75)).epsilon(1e-14));
  CHECK(v == doctest::Approx(2.0 * std::atanh(0.5)).epsilon(1e-14));
  CHECK_THROWS_AS(b.make_point(vec({0.6, 0.8})), DomainError);
  CHECK_THROWS_AS(b.make_point(vec({1.5, 0})), DomainError);
}

TEST_CASE("ball inputs within the margin are pulled inside") {
  const PoincareBall b(2);
  const auto p = b.make_point(vec({1.0 - 1e-14, 0}));
  CHECK(p.coords().norm() <= 1.0 - 1e-12 + 1e-16);
  CHECK(std::isfinite(b.busemann(b.make_direction(vec({-1, 0})), p)));
}

TEST_CASE("reversed cholesky") {
  CHECK(spd::reversed_cholesky(Eigen::MatrixXd::Identity(3, 3)).isApprox(Eigen::MatrixXd::Identity(3, 3)));
  CHECK((spd::reversed_cholesky(mat2(4, 0, 0, 9)) - mat2(2, 0, 0, 3)).norm() <= 1e-15);
  const Eigen::MatrixXd x = mat2(2, 1, 1, 2);
  const Eigen::MatrixXd u = spd::reversed_cholesky(x);
  CHECK(u(1, 0) == 0.0);
  CHECK(u(0, 0) > 0.0);
  CHECK(u(1, 1) > 0.0);
  CHECK((u * u.transpose() - x).norm() <= 1e-10);
  // by hand: u11 = sqrt(2), u01 = 1/sqrt(2), u00 = sqrt(3/2)
  CHECK(u(1, 1) == doctest::Approx(std::sqrt(2.0)));
  CHECK(u(0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(u(0, 0) == doctest::Approx(std::sqrt(1.5)));
  CHECK_THROWS_AS(spd::reversed_cholesky(mat2(1, 2, 2, 1)), FactorizationError);

  const SpdCone cone(4);
  for (const auto& p : random_points(cone, 50, 1.5, 11)) {
    const Eigen::MatrixXd r = spd::reversed_cholesky(p.matrix());
    CHECK((r * r.transpose() - p.matrix()).norm() <= 1e-10 * std::max(1.0, p.matrix().norm()));
    for (Eigen::Index i = 0; i < 4; ++i) {
      CHECK(r(i, i) > 0.0);
      for (Eigen::Index j = 0; j < i; ++j) CHECK(r(i, j) == 0.0);
    }
  }
}

TEST_CASE("spd busemann examples") {
  const SpdCone cone(2);
  for (const auto& h : cone.sample_directions(10, 3)) {
    CHECK(std::abs(cone.busemann(h, cone.base_point())) <= 1e-12);
    CHECK(std::abs(cone.busemann(h, cone.make_point(Eigen::MatrixXd::Identity(2, 2)))) <= 1e-12);
  }
  const auto h = cone.make_direction(mat2(1, 0, 0, -1) / std::sqrt(2.0));
  const auto x = cone.make_point(spd::sym_exp(2.0 * h.matrix()));
  CHECK(cone.busemann(h, x) == doctest::Approx(-2.0).epsilon(1e-13));
  // direction invariants
  for (const auto& d : cone.sample_directions(20, 8)) {
    CHECK(std::abs(d.matrix().norm() - 1.0) <= 1e-12);
    CHECK(std::abs(d.eigenvalues().squaredNorm() - 1.0) <= 1e-12);
    CHECK((d.eigenvectors() * d.eigenvalues().asDiagonal() * d.eigenvectors().transpose() - d.matrix()).norm() <=
          1e-10);
    CHECK(d.eigenvalues()[0] >= d.eigenvalues()[1]);
  }
}

TEST_CASE("spd busemann matches the defining limit") {
  // X near the identity keeps the 1/t bias of d(X, exp(tH)) - t below 1e-3 at t = 40
  for (int p : {2, 3}) {
    const SpdCone cone(p);
    std::mt19937_64 rng(400 + static_cast<std::uint64_t>(p));
    std::uniform_real_distribution<double> radius(0.0, 0.25);
    const auto hs = cone.sample_directions(20, 77 + static_cast<std::uint64_t>(p));
    const auto ks = cone.sample_directions(20, 91 + static_cast<std::uint64_t>(p));
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const auto x = cone.make_point(spd::sym_exp(radius(rng) * ks[i].matrix()));
      const double b = cone.busemann(hs[i], x);
      const auto& h = hs[i];
      const double e20 = std::abs(b - horodepth::testing::spd_limit_oracle(x.matrix(), h.eigenvectors(), h.eigenvalues(), 20.0));
      const double e40 = std::abs(b - horodepth::testing::spd_limit_oracle(x.matrix(), h.eigenvectors(), h.eigenvalues(), 40.0));
      CHECK(e40 <= 1e-3);
      CHECK(e40 <= e20);
    }
  }
}

TEST_CASE("the limit oracle agrees with a generic far-field X too") {
  // farther from I the bias is larger but still shrinks like 1/t
  const SpdCone cone(3);
  const auto xs = random_points(cone, 10, 1.0, 5);
  const auto hs = cone.sample_directions(10, 6);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& h = hs[i];
    const double b = cone.busemann(h, xs[i]);
    const double e20 = std::abs(b - horodepth::testing::spd_limit_oracle(xs[i].matrix(), h.eigenvectors(), h.eigenvalues(), 20.0));
    const double e40 = std::abs(b - horodepth::testing::spd_limit_oracle(xs[i].matrix(), h.eigenvectors(), h.eigenvalues(), 40.0));
    CHECK(e40 < e20);
    CHECK(e40 <= 0.6 * e20 + 1e-9);
  }
}

TEST_CASE("busemann_based") {
  const PoincareBall b(2);
  const auto e1 = b.make_direction(vec({1, 0}));
  const auto x = b.make_point(vec({std::tanh(0.5), 0}));
  CHECK(busemann_based(b, e1, x, x) == 0.0);
  CHECK(busemann_based(b, e1, b.base_point(), x) == doctest::Approx(-1.0));
  const auto pts = random_points(b, 30, 1.0, 9);
  const auto dirs = b.sample_directions(10, 10);
  for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
    const auto& xi = dirs[i % dirs.size()];
    const double lhs = busemann_based(b, xi, pts[i], pts[i + 1]) - busemann_based(b, xi, pts[i], pts[i + 2]);
    const double rhs = b.busemann(xi, pts[i + 1]) - b.busemann(xi, pts[i + 2]);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("distance examples") {
  const PoincareBall b(2);
  CHECK(b.distance(b.base_point(), b.make_point(vec({std::tanh(0.5), 0}))) == doctest::Approx(1.0).epsilon(1e-14));
  const SpdCone cone(2);
  const auto x = cone.make_point(mat2(std::exp(2.0), 0, 0, std::exp(-2.0)));
  CHECK(cone.distance(cone.base_point(), x) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  const Euclidean e(2);
  CHECK(e.distance(e.make_point(vec({0, 0})), e.make_point(vec({3, 4}))) == 5.0);
}

TEST_CASE("geodesic examples") {
  const SpdCone cone(2);
  const auto a = cone.make_point(mat2(3, 1, 1, 2));
  const auto ai = cone.make_point(a.matrix().inverse());
  CHECK((cone.geodesic_point(a, ai, 0.5).matrix() - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-12);
  CHECK(cone.geodesic_point(a, ai, 0.0).matrix() == a.matrix());
  CHECK(cone.geodesic_point(a, ai, 1.0).matrix() == ai.matrix());
  CHECK_THROWS(cone.geodesic_point(a, ai, 1.5));

  const PoincareBall b(2);
  const auto mid = b.geodesic_point(b.make_point(vec({0.7, 0})), b.make_point(vec({-0.7, 0})), 0.5);
  CHECK(mid.coords().norm() <= 1e-14);
}

TEST_CASE("exp and log basics") {
  const SpdCone cone(3);
  const auto h = cone.sample_directions(1, 4)[0];
  const auto x = cone.exp_map(cone.base_point(), 1.7 * h.matrix());
  CHECK((x.matrix() - spd::sym_exp(1.7 * h.matrix())).norm() <= 1e-12);
  const PoincareBall b(3);
  const auto p = random_points(b, 1, 1.0, 2)[0];
  CHECK(b.exp_map(p, b.zero_tangent(p)).coords() == p.coords());
}

TEST_CASE("ray closed forms") {
  const PoincareBall b(2);
  const auto xi = b.make_direction(vec({0.6, -0.8}));
  for (double t : {0.0, 0.3, 2.0, 9.0}) {
    const auto r = b.ray_point(b.base_point(), xi, t);
    CHECK((r.coords() - std::tanh(t / 2) * xi.coords()).norm() <= 1e-15);
  }
  const SpdCone cone(3);
  const auto h = cone.sample_directions(1, 12)[0];
  for (double t : {0.5, 3.0}) {
    const auto r = cone.ray_point(cone.base_point(), h, t);
    CHECK((r.matrix() - spd::sym_exp(t * h.matrix())).norm() <= 1e-10 * std::exp(t));
  }
  CHECK_THROWS_AS(b.ray_point(b.base_point(), xi, 1e6), DomainError);
  CHECK_THROWS_AS(cone.ray_point(cone.base_point(), h, 1e6), DomainError);
}

TEST_CASE("base point normalization and ray identity") {
  check_base_and_rays(Euclidean(2), 1);
  check_base_and_rays(Euclidean(5), 2);
  check_base_and_rays(PoincareBall(2), 3);
  check_base_and_rays(PoincareBall(4), 4);
  check_base_and_rays(SpdCone(2), 5);
  check_base_and_rays(SpdCone(3), 6);
  check_base_and_rays(SpdCone(5), 7);
}

TEST_CASE("spd identity along exp(tH)") {
  for (int p : {2, 3, 5}) {
    const SpdCone cone(p);
    for (const auto& h : cone.sample_directions(100, 50 + static_cast<std::uint64_t>(p))) {
      for (double t : {0.1, 1.0, 5.0, 10.0, 20.0}) {
        const auto x = cone.exp_map(cone.base_point(), t * h.matrix());
        CHECK((x.matrix() - spd::sym_exp(t * h.matrix())).norm() <= 1e-13 * x.matrix().norm());
        CHECK(std::abs(cone.busemann(h, x) + t) <= 1e-8);
      }
      // a raw matrix carries no factor; rounding it costs eps * cond(X) = eps * e^{t (l_max - l_min)}
      for (double t : {0.1, 1.0, 5.0}) {
        const auto x = cone.make_point(spd::sym_exp(t * h.matrix()));
        CHECK(!x.has_factor());
        CHECK(std::abs(cone.busemann(h, x) + t) <= 1e-8);
      }
    }
  }
}

TEST_CASE("rays from a general base") {
  // ball rays off the origin are formed through the hyperboloid; accuracy is
  // limited by the conditioning of 1 - |x|^2 near the sphere
  const PoincareBall b(2);
  const auto bases = random_points(b, 10, 0.7, 21);
  const auto dirs = b.sample_directions(10, 22);
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const double b0 = b.busemann(dirs[i], bases[i]);
    for (double t : {0.1, 1.0, 5.0, 10.0, 20.0}) {
      CHECK(std::abs(b.busemann(dirs[i], b.ray_point(bases[i], dirs[i], t)) - (b0 - t)) <= 1e-6);
    }
    CHECK(b.distance(bases[i], b.ray_point(bases[i], dirs[i], 3.0)) == doctest::Approx(3.0).epsilon(1e-9));
  }
  const SpdCone cone(3);
  const auto sb = random_points(cone, 10, 0.7, 23);
  const auto sd = cone.sample_directions(10, 24);
  for (std::size_t i = 0; i < sb.size(); ++i) {
    const double b0 = cone.busemann(sd[i], sb[i]);
    for (double t : {0.1, 1.0, 5.0, 10.0, 20.0}) {
      CHECK(std::abs(cone.busemann(sd[i], cone.ray_point(sb[i], sd[i], t)) - (b0 - t)) <= 1e-8);
    }
    CHECK(cone.distance(sb[i], cone.ray_point(sb[i], sd[i], 2.0)) == doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("1-Lipschitz and geodesic convexity") {
  check_lipschitz_and_convexity(Euclidean(3), 30);
  check_lipschitz_and_convexity(PoincareBall(2), 31);
  check_lipschitz_and_convexity(PoincareBall(3), 32);
  check_lipschitz_and_convexity(SpdCone(2), 33);
  check_lipschitz_and_convexity(SpdCone(3), 34);
}

TEST_CASE("strict convexity on the ball") {
  const PoincareBall b(2);
  const auto xs = random_points(b, 100, 1.0, 40);
  const auto dirs = b.sample_directions(50, 41);
  int strict = 0;
  for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
    const auto& xi = dirs[i / 2];
    const double chord = 0.5 * (b.busemann(xi, xs[i]) + b.busemann(xi, xs[i + 1]));
    const double mid = b.busemann(xi, b.geodesic_point(xs[i], xs[i + 1], 0.5));
    if (mid < chord) ++strict;
  }
  CHECK(strict == 50);
}

TEST_CASE("distances, geodesics and exp/log") {
  check_maps(Euclidean(3), 60);
  check_maps(PoincareBall(2), 61);
  check_maps(PoincareBall(5), 62);
  check_maps(SpdCone(2), 63);
  check_maps(SpdCone(4), 64);
}

TEST_CASE("exp/log round trip for tangent norms up to 5") {
  const PoincareBall b(2);
  const SpdCone cone(3);
  std::mt19937_64 rng(70);
  std::uniform_real_distribution<double> len(0.0, 5.0);
  const auto bb = random_points(b, 20, 0.5, 71);
  const auto cb = random_points(cone, 20, 0.5, 72);
  for (std::size_t i = 0; i < 20; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Random(2);
    v *= len(rng) / b.tangent_norm(bb[i], v);
    CHECK(b.tangent_norm(bb[i], b.log_map(bb[i], b.exp_map(bb[i], v)) - v) <= 1e-8);
    CHECK(std::abs(b.distance(bb[i], b.exp_map(bb[i], v)) - b.tangent_norm(bb[i], v)) <= 1e-9);
    Eigen::MatrixXd w = spd::symmetrize(Eigen::MatrixXd::Random(3, 3));
    w *= len(rng) / cone.tangent_norm(cb[i], w);
    CHECK(cone.tangent_norm(cb[i], cone.log_map(cb[i], cone.exp_map(cb[i], w)) - w) <= 1e-8);
    CHECK(std::abs(cone.distance(cb[i], cone.exp_map(cb[i], w)) - cone.tangent_norm(cb[i], w)) <= 1e-9);
  }
}

TEST_CASE("direction sampling") {
  const PoincareBall b(2);
  const auto grid = b.grid_directions(4);
  REQUIRE(grid.size() == 4);
  CHECK(grid[0].coords() == vec({1, 0}));
  CHECK(grid[1].coords() == vec({0, 1}));
  CHECK(grid[2].coords() == vec({-1, 0}));
  CHECK(grid[3].coords() == vec({0, -1}));
  const auto a = b.sample_directions(100, 5);
  const auto c = b.sample_directions(100, 5);
  CHECK(a == c);
  for (const auto& u : a) CHECK(std::abs(u.coords().norm() - 1.0) <= 1e-12);
  CHECK_THROWS(b.sample_directions(0, 1));
  CHECK_THROWS(PoincareBall(3).grid_directions(8));
  const SpdCone cone(3);
  CHECK(cone.sample_directions(7, 3) == cone.sample_directions(7, 3));
  CHECK_THROWS(cone.grid_directions(4));
}

TEST_CASE("isometries") {
  const PoincareBall b(2);
  const auto xi = b.make_direction(vec({1, 0}));
  const auto x = b.make_point(vec({0.3, 0}));
  const auto rot = OrthogonalMap::rotation_2d(M_PI / 2);
  CHECK(std::abs(b.busemann(b.boundary_action(rot, xi), b.apply_isometry(rot, x)) - b.busemann(xi, x)) <= 1e-12);
  const auto id = OrthogonalMap::identity(2);
  CHECK(b.apply_isometry(id, x).coords() == x.coords());

  const SpdCone cone(3);
  Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(3, 3);
  perm(0, 2) = perm(1, 0) = perm(2, 1) = 1.0;
  const OrthogonalMap pq(perm);
  Eigen::MatrixXd dx = Eigen::Vector3d(2.0, 0.5, 3.0).asDiagonal();
  Eigen::MatrixXd dh = Eigen::Vector3d(0.6, -0.8, 0.0).asDiagonal();
  const auto sx = cone.make_point(dx);
  const auto sh = cone.make_direction(dh);
  CHECK(std::abs(cone.busemann(cone.boundary_action(pq, sh), cone.apply_isometry(pq, sx)) - cone.busemann(sh, sx)) <=
        1e-10);

  CHECK_THROWS(OrthogonalMap(mat2(1, 0.1, 0, 1)));

  check_isometry(Euclidean(3), 3, 80);
  check_isometry(PoincareBall(2), 2, 81);
  check_isometry(PoincareBall(3), 3, 82);
  check_isometry(SpdCone(2), 2, 83);
  check_isometry(SpdCone(3), 3, 84);
}

TEST_CASE("reflection through a point") {
  const PoincareBall b(2);
  const auto x = b.make_point(vec({0.2, -0.4}));
  CHECK((reflect(b, b.base_point(), x).coords() + x.coords()).norm() <= 1e-14);
  const auto theta = b.make_point(vec({0.35, 0.2}));
  CHECK(b.distance(reflect(b, theta, theta), theta) <= 1e-12);
  CHECK(b.distance(reflect(b, theta, reflect(b, theta, x)), x) <= 1e-10);
}

TEST_CASE("rows") {
  const SpdCone cone(2);
  const std::vector<double> row{2, 1, 2};
  const auto p = cone.from_row(row);
  CHECK(p.matrix() == mat2(2, 1, 1, 2));
  CHECK(cone.to_row(p) == row);
  CHECK_THROWS_AS(cone.from_row(std::vector<double>{1, 2, 1}), FactorizationError);
  CHECK_THROWS_AS(cone.make_point(mat2(2, 1, 0, 2)), DomainError);
}

TEST_CASE("context selection") {
  CHECK(parse_manifold_kind("ball") == ManifoldKind::ball);
  CHECK_THROWS(parse_manifold_kind("sphere"));
  const auto ctx = make_context(ManifoldKind::spd, 3);
  CHECK(kind_of(ctx) == ManifoldKind::spd);
  CHECK(size_parameter(ctx) == 3);
  CHECK(std::get<SpdCone>(ctx).dimension() == 6);
}
