#include "horodepth/io/scenario.hpp"

namespace horodepth {

ManifoldContext config_context(const RunConfig& c) {
  ManifoldKind kind;
  try {
    kind = parse_manifold_kind(c.manifold);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return make_context(kind, c.dim);
}

namespace {

template <Manifold M>
std::vector<ExperimentRecord> run(const M& m, const std::string& name, const RunConfig& c) {
  const auto dirs = config_directions(m, c);
  if (name == "huber") {
    HuberSettings s;
    s.eps_list = c.eps_list;
    s.alphas = c.alphas;
    s.seeds = data_seeds(c);
    if (c.contaminant.empty()) s.seeds["contaminant_stream"] = 1;
    const auto mu = config_data(m, c);
    return experiment_huber(m, mu, config_contaminant(m, c, dirs), grid_points(m, c.grid), dirs, s);
  }
  if (name == "boundary") {
    BoundarySettings s;
    s.epsilon = c.epsilon;
    s.xi_index = c.xi_index;
    s.t_list = c.t_list;
    s.settle_step = c.settle_step;
    s.settle_limit = c.settle_limit;
    s.frechet_t_max = c.frechet_t_max;
    s.frechet = c.frechet;
    s.seeds = data_seeds(c);
    return experiment_boundary(m, config_data(m, c), grid_points(m, c.grid), dirs, s);
  }
  if (name == "centerpoint") {
    CenterpointSettings s;
    s.n = c.n;
    s.reps = c.reps;
    s.sigma = c.sigma;
    s.seed = c.data_seed;
    s.search = c.search;
    return experiment_centerpoint(m, dirs, s);
  }
  if (name == "consistency") {
    ConsistencySettings s;
    s.n_list = c.n_list;
    s.reps = c.reps;
    s.sigma = c.sigma;
    s.n_ref = c.n_ref;
    s.trend_required = c.trend_required;
    s.seed = c.data_seed;
    s.search = c.search;
    return experiment_consistency(m, config_theta(m, c), grid_points(m, c.grid), dirs, s);
  }
  if (name == "breakdown") {
    BreakdownSettings s;
    s.eps_list = c.eps_list;
    // the uncontaminated run anchors the displacement scale
    if (std::find(s.eps_list.begin(), s.eps_list.end(), 0.0) == s.eps_list.end()) s.eps_list.insert(s.eps_list.begin(), 0.0);
    s.probes = c.probes;
    s.distance = c.adversary_distance;
    s.slack_factor = c.slack_factor;
    s.search = c.search;
    s.seeds = data_seeds(c);
    return experiment_breakdown(m, config_data(m, c), dirs, s);
  }
  throw UsageError("unknown experiment '" + name + "' (expected huber, boundary, centerpoint, consistency or breakdown)");
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const std::string& name, const RunConfig& c) {
  const auto ctx = config_context(c);
  return std::visit([&](const auto& m) { return run(m, name, c); }, ctx);
}

}  // namespace horodepth
