#pragma once

#include <string>
#include <vector>

#include "horodepth/io/config.hpp"
#include "horodepth/io/dataset.hpp"
#include "horodepth/robustness/experiments.hpp"

namespace horodepth {

/// Command-line or configuration inconsistency (exit code 1 in the CLI).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

ManifoldContext config_context(const RunConfig& c);

template <Manifold M>
DirectionSet<M> config_directions(const M& m, const RunConfig& c) {
  if (c.direction_source == "grid") return grid_directions(m, c.m);
  if (c.direction_source == "seeded") return seeded_directions(m, c.m, c.direction_seed);
  throw UsageError("direction_source must be 'grid' or 'seeded', got '" + c.direction_source + "'");
}

template <Manifold M>
typename M::Point config_theta(const M& m, const RunConfig& c) {
  return c.theta.empty() ? m.base_point() : m.from_row(c.theta);
}

/// Dataset whose header must agree with the configured manifold and size.
template <Manifold M>
EmpiricalMeasure<typename M::Point> load_measure(const M& m, const RunConfig& c, const std::string& path) {
  const DatasetFile f = read_dataset(path);
  if (std::string(to_string(f.manifold)) != c.manifold || f.dim != c.dim) {
    throw UsageError(path + " holds " + std::string(to_string(f.manifold)) + " dim=" + std::to_string(f.dim) +
                     " but the configuration asks for " + c.manifold + " dim=" + std::to_string(c.dim));
  }
  return to_measure(m, f);
}

/// The data file, or a wrapped Gaussian of n points about theta drawn from
/// replicate_rng(data_seed, 0, 0).
template <Manifold M>
EmpiricalMeasure<typename M::Point> config_data(const M& m, const RunConfig& c) {
  if (!c.data.empty()) return load_measure(m, c, c.data);
  auto rng = replicate_rng(c.data_seed, 0, 0);
  return EmpiricalMeasure<typename M::Point>::uniform(wrapped_gaussian(m, config_theta(m, c), c.n, c.sigma, rng));
}

/// Huber contaminant: the contaminant file, or contaminant_n wrapped-Gaussian
/// points about ray_point(base, direction 0, contaminant_shift) drawn from
/// replicate_rng(data_seed, 0, 1).
template <Manifold M>
EmpiricalMeasure<typename M::Point> config_contaminant(const M& m, const RunConfig& c, const DirectionSet<M>& dirs) {
  if (!c.contaminant.empty()) return load_measure(m, c, c.contaminant);
  auto rng = replicate_rng(c.data_seed, 0, 1);
  const auto center = m.ray_point(m.base_point(), dirs[0], c.contaminant_shift);
  return EmpiricalMeasure<typename M::Point>::uniform(
      wrapped_gaussian(m, center, c.contaminant_n, c.contaminant_sigma, rng));
}

inline json data_seeds(const RunConfig& c) {
  if (!c.data.empty()) return {{"data_file", c.data}};
  return {{"data_seed", c.data_seed}, {"data_stream", 0}};
}

/// Runs experiment `name` (huber, boundary, centerpoint, consistency or
/// breakdown) with inputs assembled from the configuration.
std::vector<ExperimentRecord> run_experiment(const std::string& name, const RunConfig& c);

}  // namespace horodepth
