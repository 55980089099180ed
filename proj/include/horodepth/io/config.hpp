#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "horodepth/depth/contour.hpp"
#include "horodepth/estimators/frechet.hpp"
#include "horodepth/estimators/median.hpp"
#include "horodepth/io/json_text.hpp"

namespace horodepth {

inline constexpr const char* kConfigSchema = "horodepth.config/1";

/// Flat, versioned run configuration. Every field is a top-level key of the
/// JSON document; unknown keys are rejected.
struct RunConfig {
  std::string manifold = "ball";
  int dim = 2;
  std::string data;         // dataset path; empty means generated from n, sigma, theta, data_seed
  std::string contaminant;  // dataset path for the Huber contaminant Q

  std::size_t m = 180;
  std::string direction_source = "grid";  // grid | seeded
  std::uint64_t direction_seed = 0;
  std::vector<double> alphas{0.1, 0.2, 0.3};
  GridSpec grid{-0.68, 0.68, -0.68, 0.68, 20, 20, 0.0};
  SearchConfig search;
  IterConfig frechet;

  std::size_t n = 100;
  double sigma = 0.5;
  std::vector<double> theta;  // sample center as a row; empty means the base point
  std::uint64_t data_seed = 1;
  std::size_t reps = 20;

  std::vector<double> eps_list{0.05, 0.1, 0.2, 0.3};
  std::size_t contaminant_n = 25;
  double contaminant_sigma = 0.3;
  double contaminant_shift = 1.5;  // distance of Q's center from the base point along direction 0

  double epsilon = 0.2;
  std::size_t xi_index = 20;
  std::vector<double> t_list{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 20, 25, 30};
  double settle_step = 0.01;
  double settle_limit = 25.0;
  double frechet_t_max = 10.0;

  std::vector<std::size_t> n_list{100, 300, 1000};
  std::size_t n_ref = 5000;
  std::size_t trend_required = 16;

  std::size_t probes = 8;
  double adversary_distance = 50.0;
  double slack_factor = 3.0;

  std::string records;  // JSON-lines output path; empty means standard output
};

json to_json(const RunConfig& c);
/// Throws ParseError on unknown keys, wrong types or a schema mismatch.
RunConfig config_from_json(const json& j);
RunConfig read_config(const std::filesystem::path& path);
void write_config(const std::filesystem::path& path, const RunConfig& c);

}  // namespace horodepth
