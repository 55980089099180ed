#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "horodepth/io/config.hpp"
#include "horodepth/io/dataset.hpp"
#include "horodepth/io/export.hpp"
#include "horodepth/io/generate.hpp"
#include "horodepth/io/scenario.hpp"
#include "horodepth/io/selftest.hpp"
#include "horodepth/manifold/spd_linalg.hpp"
#include "test_support.hpp"

using namespace horodepth;
using horodepth::testing::random_points;

namespace {

DatasetFile parse_text(const std::string& s) {
  std::istringstream in(s);
  return parse_dataset(in);
}

std::size_t error_line(const std::string& s) {
  try {
    parse_text(s);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

struct CliResult {
  int status = -1;
  std::string out;
};

CliResult cli(const std::string& args) {
  const std::string cmd = std::string(HORODEPTH_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "horodepth_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_text(const std::filesystem::path& p, const std::string& s) {
  std::ofstream(p) << s;
}

}  // namespace

TEST_CASE("dataset parsing examples") {
  CHECK_THROWS_AS(parse_text(""), ParseError);

  const auto one = parse_text("#horodepth v1 manifold=ball dim=2 weighted=false\n0.1,0.2\n");
  REQUIRE(one.rows.size() == 1);
  const PoincareBall b(2);
  const auto mu = to_measure(b, one);
  CHECK(mu.size() == 1);
  CHECK(b.to_row(mu.point(0)) == std::vector<double>{0.1, 0.2});

  const auto spd = parse_text("#horodepth v1 manifold=spd dim=2\n2,1,2\n");
  const SpdCone c(2);
  const auto x = to_measure(c, spd).point(0).matrix();
  CHECK(x(0, 0) == 2.0);
  CHECK(x(0, 1) == 1.0);
  CHECK(x(1, 0) == 1.0);
  CHECK(x(1, 1) == 2.0);
}

TEST_CASE("dataset errors carry line numbers") {
  CHECK(error_line("#horodepth v1 manifold=spd dim=2\n2,1,2\n# note\n1,2,1\n") == 4);
  CHECK(error_line("#horodepth v1 manifold=ball dim=2\n0.1,0.2\n0.6,0.8\n") == 3);
  CHECK(error_line("#horodepth v1 manifold=ball dim=2\n0.1,0.2\n1.5,0\n") == 3);
  CHECK(error_line("#horodepth v1 manifold=ball dim=2\n0.1\n") == 2);
  CHECK(error_line("#horodepth v1 manifold=ball dim=2\n0.1,abc\n") == 2);
  CHECK(error_line("#horodepth v1 manifold=ball dim=2 weighted=true\n0.1,0.2,-1\n") == 2);
  CHECK(error_line("#horodepth v2 manifold=ball dim=2\n0.1,0.2\n") == 1);
  CHECK(error_line("#horodepth v1 manifold=torus dim=2\n0.1,0.2\n") == 1);
  CHECK(error_line("0.1,0.2\n") == 1);
  CHECK_THROWS_AS(parse_text("#horodepth v1 manifold=ball dim=2\n"), ParseError);
}

TEST_CASE("weights are renormalized") {
  std::vector<std::string> warnings;
  auto previous = diagnostics::set_warning_sink([&](const std::string& w) { warnings.push_back(w); });
  const auto d = parse_text("#horodepth v1 manifold=euclidean dim=1 weighted=true\n0,1\n1,3\n");
  diagnostics::set_warning_sink(previous);
  CHECK(d.weights == std::vector<double>{0.25, 0.75});
  CHECK(warnings.size() == 1);
}

TEST_CASE("dataset round trip") {
  SUBCASE("ball, weighted") {
    const PoincareBall b(3);
    const auto pts = random_points(b, 40, 1.5, 1);
    std::vector<double> w(pts.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = (1.0 + static_cast<double>(i % 5)) / 120.0;
    const auto mu = EmpiricalMeasure<BallPoint>::weighted(pts, w);
    std::stringstream ss;
    write_dataset(ss, to_dataset(b, mu, ManifoldKind::ball));
    const auto back = to_measure(b, parse_dataset(ss));
    REQUIRE(back.size() == mu.size());
    const auto w0 = mu.weights();
    const auto w1 = back.weights();
    for (std::size_t i = 0; i < mu.size(); ++i) {
      CHECK((back.point(i).coords() - mu.point(i).coords()).norm() <= 1e-12);
      CHECK(std::abs(w1[i] - w0[i]) <= 1e-12);
    }
  }
  SUBCASE("spd") {
    const SpdCone c(3);
    const auto mu = EmpiricalMeasure<SpdPoint>::uniform(random_points(c, 25, 1.0, 2));
    std::stringstream ss;
    write_dataset(ss, to_dataset(c, mu, ManifoldKind::spd));
    const auto back = to_measure(c, parse_dataset(ss));
    for (std::size_t i = 0; i < mu.size(); ++i) {
      CHECK((back.point(i).matrix() - mu.point(i).matrix()).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("config round trip and strictness") {
  RunConfig c;
  c.manifold = "spd";
  c.dim = 2;
  c.m = 77;
  c.direction_source = "seeded";
  c.theta = {1.25, 0.1, 0.8};
  c.grid = GridSpec{0.4, 2.5, 0.4, 2.5, 20, 20, 0.2};
  c.search.refine_rounds = 2;
  c.frechet.tolerance = 1e-9;
  c.n_list = {50, 150};
  c.eps_list = {0.1, 1.0 / 3.0};
  const auto path = scratch("config.json");
  write_config(path, c);
  const RunConfig back = read_config(path);
  CHECK(to_json(back) == to_json(c));
  CHECK(back.eps_list[1] == 1.0 / 3.0);

  auto j = to_json(c);
  j["colour"] = "blue";
  CHECK_THROWS_AS(config_from_json(j), ParseError);
  j = to_json(c);
  j["m"] = "many";
  CHECK_THROWS_AS(config_from_json(j), ParseError);
  j = to_json(c);
  j["schema"] = "horodepth.config/0";
  CHECK_THROWS_AS(config_from_json(j), ParseError);
  j = to_json(c);
  j.erase("sigma");
  CHECK(config_from_json(j).sigma == RunConfig{}.sigma);
}

TEST_CASE("region JSON re-import preserves membership") {
  const PoincareBall b(2);
  const DepthProfile<PoincareBall> prof(b, EmpiricalMeasure<BallPoint>::uniform(random_points(b, 60, 0.8, 10)),
                                        seeded_directions(b, 45, 11));
  for (const auto& r : {region_thresholds(prof, 0.2), strip_region(prof, 0.2)}) {
    const auto back = region_from_json(b, json::parse(dump_json(region_to_json(b, r))));
    for (const auto& z : random_points(b, 100, 1.2, 12)) {
      const auto a = region_membership(b, r, z);
      const auto c = region_membership(b, back, z);
      CHECK(a.inside == c.inside);
      CHECK(a.F == c.F);
    }
  }

  const SpdCone s(2);
  const DepthProfile<SpdCone> sp(s, EmpiricalMeasure<SpdPoint>::uniform(random_points(s, 40, 0.6, 13)),
                                 seeded_directions(s, 30, 14));
  const auto r = region_thresholds(sp, 0.25);
  const auto back = region_from_json(s, json::parse(dump_json(region_to_json(s, r))));
  for (const auto& z : random_points(s, 100, 0.8, 15)) CHECK(region_membership(s, r, z).F == region_membership(s, back, z).F);

  CHECK_THROWS_AS(region_from_json(PoincareBall(3), region_to_json(b, region_thresholds(prof, 0.2))), ParseError);
}

TEST_CASE("generator parameters") {
  const auto p = parse_gen_params("manifold=ball,dim=2,n=11,sigma=0.4,center=0.35;0.2");
  CHECK(p.manifold == ManifoldKind::ball);
  CHECK(p.n == 11);
  CHECK(p.sigma == 0.4);
  CHECK(p.center == std::vector<double>{0.35, 0.2});
  CHECK_THROWS(parse_gen_params("n=3,colour=red"));
  CHECK_THROWS(parse_gen_params("n=x"));
  CHECK_THROWS(parse_gen_kind("uniform"));

  GenParams bad = p;
  bad.n = 0;
  CHECK_THROWS(generate(GenKind::wrapped_gaussian, bad, 1));
  bad = p;
  bad.sigma = -1.0;
  CHECK_THROWS(generate(GenKind::wrapped_gaussian, bad, 1));
  bad = p;
  bad.center = {0.1, 0.2, 0.3};
  CHECK_THROWS(generate(GenKind::wrapped_gaussian, bad, 1));
  CHECK_THROWS(generate(GenKind::spd_log_gaussian, p, 1));
}

TEST_CASE("generators are deterministic per seed") {
  const auto p = parse_gen_params("manifold=ball,dim=2,n=30,sigma=0.5");
  for (auto kind : {GenKind::wrapped_gaussian, GenKind::symmetrized}) {
    const auto a = generate(kind, p, 5);
    const auto b = generate(kind, p, 5);
    const auto c = generate(kind, p, 6);
    CHECK(a.rows == b.rows);
    CHECK(a.rows != c.rows);
    CHECK(a.rows.size() == 30);
  }
  const auto q = parse_gen_params("manifold=spd,dim=3,n=12,sigma=0.3");
  CHECK(generate(GenKind::spd_log_gaussian, q, 9).rows == generate(GenKind::spd_log_gaussian, q, 9).rows);
}

TEST_CASE("symmetrized output is closed under reflection") {
  const PoincareBall b(2);
  for (std::size_t n : {20, 21}) {
    GenParams p;
    p.n = n;
    p.sigma = 0.6;
    p.center = {0.35, 0.2};
    const auto path = scratch("sym.csv");
    write_dataset(path, generate(GenKind::symmetrized, p, 3));
    const auto data = read_dataset(path);
    CHECK(!data.weighted);
    const auto mu = to_measure(b, data);
    REQUIRE(mu.size() == n);
    const auto theta = b.make_point(Eigen::Vector2d(0.35, 0.2));
    // every atom has its mirror image among the atoms
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const auto r = reflect(b, theta, mu.point(i));
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < mu.size(); ++k) nearest = std::min(nearest, b.distance(r, mu.point(k)));
      CHECK(nearest <= 1e-9);
    }
  }
}

TEST_CASE("spd log-Gaussian centers on the requested point") {
  // log of the draws averages to log C
  const auto p = parse_gen_params("manifold=spd,dim=2,n=4000,sigma=0.2,center=2;0.5;1");
  const SpdCone c(2);
  const auto mu = to_measure(c, generate(GenKind::spd_log_gaussian, p, 4));
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(2, 2);
  for (const auto& x : mu.points()) mean += spd::spd_log(x.matrix()) / static_cast<double>(mu.size());
  Eigen::MatrixXd center(2, 2);
  center << 2, 0.5, 0.5, 1;
  CHECK((mean - spd::spd_log(center)).norm() < 0.02);
}

TEST_CASE("scenario rejects inconsistent manifolds") {
  const auto path = scratch("ball.csv");
  write_text(path, "#horodepth v1 manifold=ball dim=2\n0.1,0.2\n0.2,0.1\n");
  RunConfig c;
  c.manifold = "spd";
  c.dim = 2;
  c.data = path.string();
  c.direction_source = "seeded";
  CHECK_THROWS_AS(run_experiment("breakdown", c), UsageError);
  c.manifold = "ball";
  CHECK_THROWS_AS(run_experiment("sideways", c), UsageError);
  c.direction_source = "spiral";
  CHECK_THROWS_AS(run_experiment("huber", c), UsageError);
}

TEST_CASE("selftest passes") {
  std::ostringstream out;
  CHECK(run_selftest(out) == 0);
  CHECK(out.str().find("FAIL") == std::string::npos);
}

TEST_CASE("command-line examples") {
  const auto one = scratch("one.csv");
  write_text(one, "#horodepth v1 manifold=ball dim=2 weighted=false\n0.1,0.2\n");
  const auto r = cli("depth --data " + one.string() + " --point 0.1,0.2 --m 16");
  CHECK(r.status == 0);
  CHECK(json::parse(r.out)["depth"] == 1.0);

  const auto four = scratch("four.csv");
  write_text(four, "#horodepth v1 manifold=euclidean dim=1\n1\n2\n3\n4\n");
  const auto reg = json::parse(cli("region --data " + four.string() + " --alpha 0.5 --directions -1").out);
  CHECK(reg["thresholds"] == json::array({3.0}));

  CHECK(cli("selftest").status == 0);
  CHECK(cli("").status == 1);
  CHECK(cli("depth --data " + one.string()).status == 1);
  CHECK(cli("depth --data " + one.string() + " --point 0.1 --bogus 3").status == 1);
  CHECK(cli("depth --data /nonexistent/file --point 0,0").status == 2);
  CHECK(cli("depth --data " + one.string() + " --point 1.5,0").status == 3);
}

TEST_CASE("command-line output is byte-identical across runs") {
  const auto data = scratch("gen.csv");
  REQUIRE(cli("gen --kind wrapped_gaussian --params n=40,sigma=0.7,dim=2,manifold=ball --seed 8 --out " + data.string())
              .status == 0);
  const std::vector<std::string> commands{
      "depth --data " + data.string() + " --point 0.05,-0.1 --m 90 --seed 3",
      "depth --data " + data.string() + " --point 0.05,-0.1 --m 90 --seed 3 --refine",
      "region --data " + data.string() + " --alpha 0.3 --m 60 --grid-directions",
      "median --data " + data.string() + " --m 60 --seed 2",
      "frechet --data " + data.string(),
      "contaminate --data " + data.string() + " --eps 0.1 --xi 0.6,0.8 --t 4",
      "gen --kind symmetrized --params 'n=9,center=0.1;0.1' --seed 4",
  };
  for (const auto& cmd : commands) {
    const auto a = cli(cmd);
    const auto b = cli(cmd);
    CHECK(a.status == 0);
    CHECK(!a.out.empty());
    CHECK(a.out == b.out);
  }
}

TEST_CASE("experiment command writes records and a summary") {
  RunConfig c;
  c.direction_source = "grid";
  c.m = 36;
  c.n = 30;
  c.grid = GridSpec{-0.5, 0.5, -0.5, 0.5, 5, 5, 0.0};
  c.eps_list = {0.1, 0.2};
  const auto cfg = scratch("huber.json");
  write_config(cfg, c);
  const auto rec = scratch("huber.jsonl");
  const auto r = cli("experiment huber --config " + cfg.string() + " --records " + rec.string());
  CHECK(r.status == 0);
  CHECK(r.out.find("gap_within_eps") != std::string::npos);
  std::ifstream in(rec);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    const auto j = json::parse(line);
    CHECK(j["schema"] == kRecordSchema);
    CHECK(j["pass"] == true);
    ++lines;
  }
  CHECK(lines >= 2);
  CHECK(cli("experiment sideways --config " + cfg.string()).status == 1);
}
