#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "horodepth/depth/measure.hpp"
#include "horodepth/manifold/manifold.hpp"

namespace horodepth {

/// Text dataset:
///
///   #horodepth v1 manifold=ball dim=2 weighted=false
///   0.1,0.2
///   ...
///
/// Ball and Euclidean rows hold d coordinates, SPD rows the p(p+1)/2 upper
/// triangle entries row by row (dim is p). With weighted=true every row ends
/// in a weight column. Blank lines and lines starting with '#' after the
/// header are skipped.
struct DatasetFile {
  ManifoldKind manifold = ManifoldKind::ball;
  int dim = 2;
  bool weighted = false;
  std::vector<std::vector<double>> rows;
  std::vector<double> weights;  // empty unless weighted; sums to 1 after parsing
};

std::size_t row_width(ManifoldKind kind, int dim);

/// Validates every row against the manifold; errors carry the line number.
DatasetFile parse_dataset(std::istream& in);
DatasetFile read_dataset(const std::filesystem::path& path);

void write_dataset(std::ostream& out, const DatasetFile& data);
void write_dataset(const std::filesystem::path& path, const DatasetFile& data);

/// "0.1,0.2" -> {0.1, 0.2}; throws ParseError on anything else.
std::vector<double> parse_row(const std::string& text);

template <Manifold M>
EmpiricalMeasure<typename M::Point> to_measure(const M& m, const DatasetFile& data) {
  std::vector<typename M::Point> pts;
  pts.reserve(data.rows.size());
  for (const auto& r : data.rows) pts.push_back(m.from_row(r));
  if (data.weighted) return EmpiricalMeasure<typename M::Point>::weighted(std::move(pts), data.weights);
  return EmpiricalMeasure<typename M::Point>::uniform(std::move(pts));
}

/// Unweighted when all atoms carry the same weight.
template <Manifold M>
DatasetFile to_dataset(const M& m, const EmpiricalMeasure<typename M::Point>& mu, ManifoldKind kind) {
  DatasetFile d;
  d.manifold = kind;
  d.dim = m.ambient_dim();
  for (const auto& p : mu.points()) d.rows.push_back(m.to_row(p));
  const auto w = mu.weights();
  for (double x : w) d.weighted = d.weighted || x != w.front();
  if (d.weighted) d.weights = w;
  return d;
}

}  // namespace horodepth
