#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "horodepth/io/export.hpp"
#include "horodepth/io/generate.hpp"
#include "horodepth/io/scenario.hpp"
#include "horodepth/io/selftest.hpp"

namespace hd = horodepth;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kDomain = 3, kCheck = 4 };

struct DirectionFlags {
  std::size_t m = 180;
  std::uint64_t seed = 0;
  bool grid = false;
  std::string rows;  // explicit directions, rows separated by ';'
};

void add_direction_flags(CLI::App* cmd, DirectionFlags& f) {
  cmd->add_option("--m", f.m, "number of boundary directions")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "direction seed");
  auto* grid = cmd->add_flag("--grid-directions", f.grid, "regular m-gon instead of seeded directions (2-D only)");
  cmd->add_option("--directions", f.rows, "explicit direction rows separated by ';' (overrides --m)")->excludes(grid);
}

template <hd::Manifold M>
hd::DirectionSet<M> make_directions(const M& m, const DirectionFlags& f) {
  if (!f.rows.empty()) {
    std::vector<typename M::Direction> dirs;
    std::stringstream ss(f.rows);
    std::string row;
    while (std::getline(ss, row, ';')) dirs.push_back(hd::direction_from_row(m, hd::parse_row(row)));
    return hd::explicit_directions<M>(std::move(dirs));
  }
  return f.grid ? hd::grid_directions(m, f.m) : hd::seeded_directions(m, f.m, f.seed);
}

/// Runs fn(manifold, measure) on the geometry named by the dataset header.
template <class F>
void with_data(const hd::DatasetFile& data, F&& fn) {
  const auto ctx = hd::make_context(data.manifold, data.dim);
  std::visit([&](const auto& m) { fn(m, hd::to_measure(m, data)); }, ctx);
}

void emit(const hd::json& j) { std::cout << hd::dump_json(j) << '\n'; }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw hd::ParseError("cannot write '" + path + "'");
  return out;
}

hd::GridSpec parse_grid(const std::string& text) {
  const auto v = hd::parse_row(text);
  if (v.size() != 6 && v.size() != 7) throw hd::UsageError("--grid needs x0,x1,y0,y1,nx,ny[,offset]");
  hd::GridSpec g{v[0], v[1], v[2], v[3], static_cast<std::size_t>(v[4]), static_cast<std::size_t>(v[5]),
                 v.size() == 7 ? v[6] : 0.0};
  g.validate();
  return g;
}

void check_against_config(const hd::DatasetFile& data, const hd::RunConfig& c) {
  if (std::string(hd::to_string(data.manifold)) != c.manifold || data.dim != c.dim) {
    throw hd::UsageError("dataset is " + std::string(hd::to_string(data.manifold)) + " dim=" +
                         std::to_string(data.dim) + " but the config says " + c.manifold +
                         " dim=" + std::to_string(c.dim));
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Horospherical depth on Euclidean space, the Poincare ball and the SPD cone"};
  app.require_subcommand(1);

  std::string data_path;
  DirectionFlags dflags;

  // depth
  auto* depth = app.add_subcommand("depth", "sampled depth of one point");
  std::string point_text;
  bool refine = false;
  depth->add_option("--data", data_path, "dataset file")->required();
  depth->add_option("--point", point_text, "query point as a comma-separated row")->required();
  depth->add_flag("--refine", refine, "append locally refined directions before evaluating");
  add_direction_flags(depth, dflags);

  // region
  auto* region = app.add_subcommand("region", "alpha-depth region thresholds");
  double alpha = 0.0;
  std::string grid_text;
  std::string contour_path;
  bool two_sided = false;
  region->add_option("--data", data_path, "dataset file")->required();
  region->add_option("--alpha", alpha, "depth level in (0, 1)")->required();
  region->add_option("--grid", grid_text, "contour lattice x0,x1,y0,y1,nx,ny[,offset]");
  region->add_option("--contour", contour_path, "write the boundary polylines here");
  region->add_flag("--two-sided", two_sided, "horospherical strips instead of horoballs");
  add_direction_flags(region, dflags);

  // median
  auto* median = app.add_subcommand("median", "Busemann median by coarse-to-fine search");
  std::string config_path;
  median->add_option("--data", data_path, "dataset file")->required();
  median->add_option("--config", config_path, "run configuration (search settings)");
  add_direction_flags(median, dflags);

  // frechet
  auto* frechet = app.add_subcommand("frechet", "weighted Frechet mean");
  frechet->add_option("--data", data_path, "dataset file")->required();
  frechet->add_option("--config", config_path, "run configuration (iteration settings)");

  // contaminate
  auto* contam = app.add_subcommand("contaminate", "(1 - eps) P + eps Q");
  double eps = 0.0;
  std::string xi_text;
  double t = 0.0;
  std::string with_path;
  std::string out_path;
  contam->add_option("--data", data_path, "dataset file")->required();
  contam->add_option("--eps", eps, "contamination fraction in [0, 1)")->required();
  auto* xi_opt = contam->add_option("--xi", xi_text, "boundary direction row (SPD: p*p matrix, row-major)");
  auto* t_opt = contam->add_option("--t", t, "distance of the point mass along xi");
  auto* with_opt = contam->add_option("--with", with_path, "contaminating dataset");
  xi_opt->needs(t_opt);
  t_opt->needs(xi_opt);
  with_opt->excludes(xi_opt)->excludes(t_opt);
  contam->add_option("--out", out_path, "output dataset (default: standard output)");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "robustness and convergence experiments");
  std::string experiment_name;
  std::string records_path;
  experiment->add_option("name", experiment_name, "huber | boundary | centerpoint | consistency | breakdown")
      ->required()
      ->check(CLI::IsMember({"huber", "boundary", "centerpoint", "consistency", "breakdown"}));
  experiment->add_option("--config", config_path, "run configuration")->required();
  experiment->add_option("--records", records_path, "JSON-lines output (overrides the config)");

  // gen
  auto* gen = app.add_subcommand("gen", "synthetic datasets");
  std::string kind_text;
  std::string params_text;
  std::uint64_t gen_seed = 0;
  gen->add_option("--kind", kind_text, "wrapped_gaussian | symmetrized | spd_log_gaussian")->required();
  gen->add_option("--params", params_text, "manifold=..,dim=..,n=..,sigma=..,center=a;b;..");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", out_path, "output dataset (default: standard output)");

  auto* selftest = app.add_subcommand("selftest", "reduced-scale invariant checks of every module");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (depth->parsed()) {
    with_data(hd::read_dataset(data_path), [&](const auto& m, const auto& mu) {
      using M = std::decay_t<decltype(m)>;
      const auto z = m.from_row(hd::parse_row(point_text));
      hd::DirectionSet<M> dirs = make_directions(m, dflags);
      if (refine) dirs = hd::detail::refined_set(hd::DepthProfile<M>(m, mu, dirs), z, hd::SearchConfig{});
      const auto dv = hd::DepthProfile<M>(m, mu, dirs).depth(z);
      emit({{"depth", dv.value}, {"direction_index", dv.direction_index}});
    });
    return kOk;
  }

  if (region->parsed()) {
    with_data(hd::read_dataset(data_path), [&](const auto& m, const auto& mu) {
      using M = std::decay_t<decltype(m)>;
      const hd::DepthProfile<M> prof(m, mu, make_directions(m, dflags));
      const auto r = two_sided ? hd::strip_region(prof, alpha) : hd::region_thresholds(prof, alpha);
      if (!contour_path.empty()) {
        const hd::GridSpec g = grid_text.empty() ? hd::GridSpec{} : parse_grid(grid_text);
        auto out = open_out(contour_path);
        hd::write_json(out, hd::contour_to_json(g, 0.0, hd::region_contour(m, r, g)));
        out << '\n';
      }
      emit(hd::region_to_json(m, r));
    });
    return kOk;
  }

  if (median->parsed()) {
    const auto data = hd::read_dataset(data_path);
    hd::SearchConfig search;
    if (!config_path.empty()) {
      const auto c = hd::read_config(config_path);
      check_against_config(data, c);
      search = c.search;
      if (median->count("--m") == 0) dflags.m = c.m;
      if (median->count("--seed") == 0) dflags.seed = c.direction_seed;
      if (median->count("--grid-directions") == 0) dflags.grid = c.direction_source == "grid";
    }
    with_data(data, [&](const auto& m, const auto& mu) {
      emit(hd::median_to_json(m, hd::busemann_median(m, mu, make_directions(m, dflags), search)));
    });
    return kOk;
  }

  if (frechet->parsed()) {
    const auto data = hd::read_dataset(data_path);
    hd::IterConfig iter;
    if (!config_path.empty()) {
      const auto c = hd::read_config(config_path);
      check_against_config(data, c);
      iter = c.frechet;
    }
    with_data(data, [&](const auto& m, const auto& mu) { emit(hd::frechet_to_json(m, hd::frechet_mean(m, mu, iter))); });
    return kOk;
  }

  if (contam->parsed()) {
    if (xi_text.empty() == with_path.empty()) throw hd::UsageError("contaminate needs either --xi with --t, or --with");
    const auto data = hd::read_dataset(data_path);
    std::optional<hd::DatasetFile> with;
    if (!with_path.empty()) {
      with = hd::read_dataset(with_path);
      if (with->manifold != data.manifold || with->dim != data.dim) {
        throw hd::UsageError("--with dataset does not match the manifold of --data");
      }
    }
    hd::DatasetFile result;
    with_data(data, [&](const auto& m, const auto& mu) {
      using M = std::decay_t<decltype(m)>;
      hd::ContaminationSpec<M> spec;
      spec.epsilon = eps;
      if (with) {
        spec.mode = hd::to_measure(m, *with);
      } else {
        spec.mode = hd::PointMassContaminant<M>{hd::direction_from_row(m, hd::parse_row(xi_text)), t};
      }
      result = hd::to_dataset(m, hd::contaminate(m, mu, spec), data.manifold);
    });
    if (out_path.empty()) {
      hd::write_dataset(std::cout, result);
    } else {
      hd::write_dataset(out_path, result);
    }
    return kOk;
  }

  if (experiment->parsed()) {
    const auto c = hd::read_config(config_path);
    const auto records = hd::run_experiment(experiment_name, c);
    const std::string path = records_path.empty() ? c.records : records_path;
    if (path.empty()) {
      std::cout << hd::to_jsonl(records);
      std::cerr << hd::summary_table(records);
    } else {
      auto out = open_out(path);
      out << hd::to_jsonl(records);
      std::cout << hd::summary_table(records);
    }
    for (const auto& r : records)
      if (!r.passed()) return kCheck;
    return kOk;
  }

  if (gen->parsed()) {
    const auto data = hd::generate(hd::parse_gen_kind(kind_text), hd::parse_gen_params(params_text), gen_seed);
    if (out_path.empty()) {
      hd::write_dataset(std::cout, data);
    } else {
      hd::write_dataset(out_path, data);
    }
    return kOk;
  }

  if (selftest->parsed()) return hd::run_selftest(std::cout) == 0 ? kOk : kCheck;
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const hd::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const hd::DomainError& e) {
    std::cerr << "numerical domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::invalid_argument& e) {
    // UsageError, DimensionError and rejected parameters
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
}
