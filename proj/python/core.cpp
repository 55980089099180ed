#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "horodepth/io/export.hpp"
#include "horodepth/io/generate.hpp"
#include "horodepth/io/scenario.hpp"
#include "horodepth/io/selftest.hpp"

namespace py = pybind11;
namespace hd = horodepth;

namespace {

using Rows = std::vector<std::vector<double>>;

hd::DatasetFile as_dataset(const std::string& manifold, int dim, const Rows& rows,
                           const std::optional<std::vector<double>>& weights) {
  hd::DatasetFile d;
  d.manifold = hd::parse_manifold_kind(manifold);
  d.dim = dim;
  d.rows = rows;
  if (rows.empty()) throw hd::ParseError("dataset has no rows");
  if (weights) {
    if (weights->size() != rows.size()) throw hd::DimensionError("one weight per row expected");
    d.weighted = true;
    d.weights = *weights;
  }
  // same validation and renormalization as a file
  std::stringstream ss;
  hd::write_dataset(ss, d);
  return hd::parse_dataset(ss);
}

template <class F>
auto with_measure(const hd::DatasetFile& data, F&& fn) {
  const auto ctx = hd::make_context(data.manifold, data.dim);
  return std::visit([&](const auto& m) { return fn(m, hd::to_measure(m, data)); }, ctx);
}

template <hd::Manifold M>
hd::DirectionSet<M> directions(const M& m, std::size_t count, std::uint64_t seed, bool grid) {
  return grid ? hd::grid_directions(m, count) : hd::seeded_directions(m, count, seed);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Horospherical depth, depth regions and the Busemann median";

  py::register_exception<hd::ParseError>(mod, "ParseError", PyExc_ValueError);
  py::register_exception<hd::DomainError>(mod, "DomainError", PyExc_ArithmeticError);
  py::register_exception<hd::UsageError>(mod, "UsageError", PyExc_ValueError);

  mod.def(
      "busemann",
      [](const std::string& manifold, int dim, const std::vector<double>& direction, const std::vector<double>& point) {
        const auto ctx = hd::make_context(hd::parse_manifold_kind(manifold), dim);
        return std::visit(
            [&](const auto& m) { return m.busemann(hd::direction_from_row(m, direction), m.from_row(point)); }, ctx);
      },
      py::arg("manifold"), py::arg("dim"), py::arg("direction"), py::arg("point"));

  mod.def(
      "sample_depth",
      [](const std::string& manifold, int dim, const Rows& data, const std::vector<double>& point, std::size_t m,
         std::uint64_t seed, bool grid, const std::optional<std::vector<double>>& weights) {
        return with_measure(as_dataset(manifold, dim, data, weights), [&](const auto& g, const auto& mu) {
          const auto dv = hd::sample_depth(g, g.from_row(point), mu, directions(g, m, seed, grid));
          return std::make_pair(dv.value, dv.direction_index);
        });
      },
      py::arg("manifold"), py::arg("dim"), py::arg("data"), py::arg("point"), py::arg("m") = 180,
      py::arg("seed") = 0, py::arg("grid") = false, py::arg("weights") = py::none());

  mod.def(
      "region_json",
      [](const std::string& manifold, int dim, const Rows& data, double alpha, std::size_t m, std::uint64_t seed,
         bool grid, bool two_sided) {
        return with_measure(as_dataset(manifold, dim, data, std::nullopt), [&](const auto& g, const auto& mu) {
          using M = std::decay_t<decltype(g)>;
          const hd::DepthProfile<M> prof(g, mu, directions(g, m, seed, grid));
          return hd::dump_json(hd::region_to_json(g, two_sided ? hd::strip_region(prof, alpha)
                                                               : hd::region_thresholds(prof, alpha)));
        });
      },
      py::arg("manifold"), py::arg("dim"), py::arg("data"), py::arg("alpha"), py::arg("m") = 180, py::arg("seed") = 0,
      py::arg("grid") = false, py::arg("two_sided") = false);

  mod.def(
      "median_json",
      [](const std::string& manifold, int dim, const Rows& data, std::size_t m, std::uint64_t seed, bool grid) {
        return with_measure(as_dataset(manifold, dim, data, std::nullopt), [&](const auto& g, const auto& mu) {
          return hd::dump_json(hd::median_to_json(g, hd::busemann_median(g, mu, directions(g, m, seed, grid))));
        });
      },
      py::arg("manifold"), py::arg("dim"), py::arg("data"), py::arg("m") = 180, py::arg("seed") = 0,
      py::arg("grid") = false);

  mod.def(
      "frechet_json",
      [](const std::string& manifold, int dim, const Rows& data) {
        return with_measure(as_dataset(manifold, dim, data, std::nullopt), [&](const auto& g, const auto& mu) {
          return hd::dump_json(hd::frechet_to_json(g, hd::frechet_mean(g, mu)));
        });
      },
      py::arg("manifold"), py::arg("dim"), py::arg("data"));

  mod.def(
      "generate",
      [](const std::string& kind, const std::string& params, std::uint64_t seed) {
        return hd::generate(hd::parse_gen_kind(kind), hd::parse_gen_params(params), seed).rows;
      },
      py::arg("kind"), py::arg("params") = "", py::arg("seed") = 0);

  mod.def(
      "experiment_jsonl",
      [](const std::string& name, const std::string& config_json) {
        const auto c = hd::config_from_json(hd::json::parse(config_json));
        py::gil_scoped_release release;
        return hd::to_jsonl(hd::run_experiment(name, c));
      },
      py::arg("name"), py::arg("config_json"));

  mod.def("default_config_json", [] { return hd::dump_json(hd::to_json(hd::RunConfig{})); });

  mod.def("selftest", [] {
    std::ostringstream out;
    const int failures = hd::run_selftest(out);
    return std::make_pair(failures, out.str());
  });
}
