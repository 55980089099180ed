#include "horodepth/io/config.hpp"

#include <fstream>
#include <set>

#include "horodepth/common.hpp"

namespace horodepth {

namespace {

template <class C, class F>
void for_each_field(C& c, F&& f) {
  f("manifold", c.manifold);
  f("dim", c.dim);
  f("data", c.data);
  f("contaminant", c.contaminant);
  f("m", c.m);
  f("direction_source", c.direction_source);
  f("direction_seed", c.direction_seed);
  f("alphas", c.alphas);
  f("grid_x0", c.grid.x0);
  f("grid_x1", c.grid.x1);
  f("grid_y0", c.grid.y0);
  f("grid_y1", c.grid.y1);
  f("grid_nx", c.grid.nx);
  f("grid_ny", c.grid.ny);
  f("grid_offset", c.grid.offset);
  f("search_cap", c.search.candidate_cap);
  f("search_seed", c.search.seed);
  f("search_step", c.search.initial_step);
  f("search_halvings", c.search.halvings);
  f("search_moves", c.search.max_moves_per_level);
  f("search_refine_rounds", c.search.refine_rounds);
  f("search_refine_budget", c.search.refine_budget);
  f("search_refine_seeds", c.search.refine_seeds);
  f("frechet_max_iterations", c.frechet.max_iterations);
  f("frechet_tolerance", c.frechet.tolerance);
  f("frechet_step", c.frechet.step);
  f("frechet_backtracks", c.frechet.max_backtracks);
  f("n", c.n);
  f("sigma", c.sigma);
  f("theta", c.theta);
  f("data_seed", c.data_seed);
  f("reps", c.reps);
  f("eps_list", c.eps_list);
  f("contaminant_n", c.contaminant_n);
  f("contaminant_sigma", c.contaminant_sigma);
  f("contaminant_shift", c.contaminant_shift);
  f("epsilon", c.epsilon);
  f("xi_index", c.xi_index);
  f("t_list", c.t_list);
  f("settle_step", c.settle_step);
  f("settle_limit", c.settle_limit);
  f("frechet_t_max", c.frechet_t_max);
  f("n_list", c.n_list);
  f("n_ref", c.n_ref);
  f("trend_required", c.trend_required);
  f("probes", c.probes);
  f("adversary_distance", c.adversary_distance);
  f("slack_factor", c.slack_factor);
  f("records", c.records);
}

}  // namespace

json to_json(const RunConfig& c) {
  json j;
  j["schema"] = kConfigSchema;
  for_each_field(c, [&](const char* key, const auto& value) { j[key] = value; });
  return j;
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  if (!j.contains("schema") || j["schema"] != kConfigSchema) {
    throw ParseError(std::string("config schema must be \"") + kConfigSchema + "\"");
  }
  RunConfig c;
  std::set<std::string> known{"schema"};
  for_each_field(c, [&](const char* key, auto& value) {
    known.insert(key);
    if (!j.contains(key)) return;
    const auto& v = j[key];
    using T = std::decay_t<decltype(value)>;
    // integers must not arrive as negative or fractional numbers
    if constexpr (std::is_unsigned_v<T>) {
      if (!v.is_number_unsigned()) throw ParseError(std::string("config key '") + key + "' must be a nonnegative integer");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ParseError(std::string("config key '") + key + "' must be an integer");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ParseError(std::string("config key '") + key + "' must be a number");
    }
    try {
      value = v.template get<T>();
    } catch (const json::exception&) {
      throw ParseError(std::string("config key '") + key + "' has the wrong type");
    }
  });
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) throw ParseError("unknown config key '" + k + "'");
  }
  (void)parse_manifold_kind(c.manifold);
  if (c.direction_source != "grid" && c.direction_source != "seeded") {
    throw ParseError("direction_source must be 'grid' or 'seeded'");
  }
  return c;
}

RunConfig read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

void write_config(const std::filesystem::path& path, const RunConfig& c) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  write_json(out, to_json(c), 2);
  out << '\n';
}

}  // namespace horodepth
