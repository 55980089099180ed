#pragma once

#include <string>
#include <vector>

#include "horodepth/depth/contour.hpp"
#include "horodepth/depth/region.hpp"
#include "horodepth/estimators/frechet.hpp"
#include "horodepth/estimators/median.hpp"
#include "horodepth/io/json_text.hpp"

namespace horodepth {

/// Boundary direction as a flat list (SPD: the p x p matrix, row-major).
template <Manifold M>
std::vector<double> direction_row(const M& m, const typename M::Direction& d) {
  const auto& c = m.direction_coords(d);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j) out.push_back(c(i, j));
  return out;
}

template <Manifold M>
typename M::Direction direction_from_row(const M& m, const std::vector<double>& row) {
  using C = std::decay_t<decltype(m.direction_coords(std::declval<const typename M::Direction&>()))>;
  if constexpr (C::ColsAtCompileTime == 1) {
    return m.make_direction(Eigen::Map<const Eigen::VectorXd>(row.data(), static_cast<Eigen::Index>(row.size())));
  } else {
    const auto p = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(row.size()))));
    if (static_cast<std::size_t>(p * p) != row.size()) throw ParseError("SPD direction needs p*p entries");
    Eigen::MatrixXd h(p, p);
    for (Eigen::Index i = 0; i < p; ++i)
      for (Eigen::Index j = 0; j < p; ++j) h(i, j) = row[static_cast<std::size_t>(i * p + j)];
    return m.make_direction(h);
  }
}

template <Manifold M>
json region_to_json(const M& m, const DepthRegion<M>& r) {
  json j;
  j["manifold"] = M::name();
  j["dim"] = m.ambient_dim();
  j["alpha"] = r.alpha;
  j["empty"] = r.empty;
  json dirs = json::array();
  for (const auto& d : r.directions) dirs.push_back(direction_row(m, d));
  j["directions"] = dirs;
  j["thresholds"] = r.upper;
  if (r.two_sided()) j["lower_thresholds"] = r.lower;
  j["fingerprint"] = r.fingerprint;
  return j;
}

template <Manifold M>
DepthRegion<M> region_from_json(const M& m, const json& j) {
  try {
    if (j.at("manifold").get<std::string>() != M::name()) throw ParseError("region manifold does not match");
    if (j.at("dim").get<int>() != m.ambient_dim()) throw ParseError("region dimension does not match");
    DepthRegion<M> r;
    r.alpha = j.at("alpha").get<double>();
    r.empty = j.value("empty", false);
    for (const auto& d : j.at("directions")) r.directions.push_back(direction_from_row(m, d.get<std::vector<double>>()));
    r.upper = j.at("thresholds").get<std::vector<double>>();
    if (j.contains("lower_thresholds")) r.lower = j["lower_thresholds"].get<std::vector<double>>();
    r.fingerprint = j.value("fingerprint", std::string());
    if (r.upper.size() != r.directions.size() || (r.two_sided() && r.lower.size() != r.directions.size())) {
      throw ParseError("region thresholds and directions differ in length");
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed region JSON: ") + e.what());
  }
}

inline json grid_to_json(const GridSpec& g) {
  return {{"x0", g.x0}, {"x1", g.x1}, {"y0", g.y0}, {"y1", g.y1}, {"nx", g.nx}, {"ny", g.ny}, {"offset", g.offset}};
}

inline json contour_to_json(const GridSpec& g, double level, const std::vector<Polyline>& lines) {
  json pl = json::array();
  for (const auto& line : lines) {
    json l = json::array();
    for (const auto& p : line) l.push_back({p[0], p[1]});
    pl.push_back(l);
  }
  return {{"grid", grid_to_json(g)}, {"level", level}, {"polylines", pl}};
}

template <Manifold M>
json median_to_json(const M& m, const MedianResult<M>& r) {
  json trace = json::array();
  for (const auto& t : r.search_trace) trace.push_back({{"point", m.to_row(t.point)}, {"depth", t.depth}});
  return {{"point", m.to_row(r.point)},
          {"depth", r.depth},
          {"direction_index", r.direction_index},
          {"m", r.directions.size()},
          {"candidates", r.candidates},
          {"candidate_index", r.candidate_index},
          {"search_trace", trace},
          {"config_fingerprint", r.config_fingerprint},
          {"directions_fingerprint", r.directions.fingerprint(m)}};
}

template <Manifold M>
json frechet_to_json(const M& m, const FrechetResult<M>& r) {
  return {{"point", m.to_row(r.point)},
          {"objective", r.objective},
          {"gradient_norm", r.gradient_norm},
          {"iterations", r.iterations},
          {"converged", r.converged}};
}

}  // namespace horodepth
