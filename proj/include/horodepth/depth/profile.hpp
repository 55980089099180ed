#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "horodepth/common.hpp"
#include "horodepth/depth/directions.hpp"
#include "horodepth/depth/measure.hpp"
#include "horodepth/manifold/manifold.hpp"
#include "horodepth/util/parallel.hpp"

namespace horodepth {

/// Depth of one query point under a finite direction set.
struct DepthValue {
  double value = 0.0;
  std::size_t direction_index = 0;  // argmin, smallest index on ties
  double attained_mass = 0.0;       // equals value
  // value == numerator / denominator when the measure is a counted sample
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;
};

/// Busemann scores of a measure's atoms along every direction of a set, sorted
/// per component with cumulative unit sums. Directional masses are then binary
/// searches, and every mass is formed through EmpiricalMeasure::combine so it
/// agrees bit for bit with EmpiricalMeasure::mass_where.
template <Manifold M>
class DepthProfile {
 public:
  using Point = typename M::Point;
  using Direction = typename M::Direction;

  DepthProfile(const M& m, const EmpiricalMeasure<Point>& mu, DirectionSet<M> dirs)
      : m_(m), mu_(mu), dirs_(std::move(dirs)) {
    if (dirs_.size() == 0) throw std::invalid_argument("direction set must not be empty");
    if (mu.size() == 0) throw std::invalid_argument("measure must not be empty");
    const auto& comps = mu.components();
    std::size_t off = 0;
    for (const auto& c : comps) {
      value_offset_.push_back(off);
      off += c.end - c.begin;
    }
    const std::size_t n = mu.size();
    tables_.resize(dirs_.size());
    parallel_for(dirs_.size(), [&](std::size_t j) {
      Table& t = tables_[j];
      t.values.resize(n);
      t.suffix.resize(n + comps.size());
      t.prefix.resize(n + comps.size());
      std::vector<std::pair<double, double>> buf;
      for (std::size_t c = 0; c < comps.size(); ++c) {
        buf.clear();
        for (std::size_t i = comps[c].begin; i < comps[c].end; ++i) {
          buf.emplace_back(m_.busemann(dirs_[j], mu_.point(i)), mu_.unit(i));
        }
        std::sort(buf.begin(), buf.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        const std::size_t v0 = value_offset_[c];
        const std::size_t s0 = v0 + c;
        const std::size_t k = buf.size();
        for (std::size_t i = 0; i < k; ++i) t.values[v0 + i] = buf[i].first;
        CompensatedSum up;
        t.suffix[s0 + k] = 0.0;
        for (std::size_t i = k; i-- > 0;) {
          up.add(buf[i].second);
          t.suffix[s0 + i] = up.value();
        }
        CompensatedSum down;
        t.prefix[s0] = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
          down.add(buf[i].second);
          t.prefix[s0 + i + 1] = down.value();
        }
      }
      t.merged = t.values;
      std::sort(t.merged.begin(), t.merged.end());
      t.merged.erase(std::unique(t.merged.begin(), t.merged.end()), t.merged.end());
    });
  }

  const M& manifold() const { return m_; }
  const EmpiricalMeasure<Point>& measure() const { return mu_; }
  const DirectionSet<M>& directions() const { return dirs_; }
  std::size_t num_directions() const { return dirs_.size(); }

  /// Distinct attained Busemann values along direction j, ascending.
  const std::vector<double>& attained_values(std::size_t j) const { return tables_[j].merged; }

  double busemann(std::size_t j, const Point& z) const { return m_.busemann(dirs_[j], z); }

  /// Mass of {x : B_j(x) >= v}.
  double mass_above(std::size_t j, double v) const {
    const Table& t = tables_[j];
    const auto& comps = mu_.components();
    sums_buffer().resize(comps.size());
    auto& sums = sums_buffer();
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const std::size_t v0 = value_offset_[c];
      const std::size_t k = comps[c].end - comps[c].begin;
      const auto first = t.values.begin() + static_cast<std::ptrdiff_t>(v0);
      const auto pos = std::lower_bound(first, first + static_cast<std::ptrdiff_t>(k), v) - first;
      sums[c] = t.suffix[v0 + c + static_cast<std::size_t>(pos)];
    }
    return mu_.combine(sums);
  }

  /// Mass of {x : B_j(x) <= v}.
  double mass_below(std::size_t j, double v) const {
    const Table& t = tables_[j];
    const auto& comps = mu_.components();
    sums_buffer().resize(comps.size());
    auto& sums = sums_buffer();
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const std::size_t v0 = value_offset_[c];
      const std::size_t k = comps[c].end - comps[c].begin;
      const auto first = t.values.begin() + static_cast<std::ptrdiff_t>(v0);
      const auto pos = std::upper_bound(first, first + static_cast<std::ptrdiff_t>(k), v) - first;
      sums[c] = t.prefix[v0 + c + static_cast<std::size_t>(pos)];
    }
    return mu_.combine(sums);
  }

  /// Integer count of atoms with B_j >= v (counted measures only).
  std::uint64_t count_above(std::size_t j, double v) const {
    const Table& t = tables_[j];
    const auto pos = std::lower_bound(t.values.begin(), t.values.end(), v) - t.values.begin();
    return static_cast<std::uint64_t>(t.suffix[static_cast<std::size_t>(pos)]);
  }

  /// Largest attained value v with mass_above(j, v) >= alpha (empirical upper
  /// survival quantile); -inf if no attained value qualifies.
  double upper_quantile(std::size_t j, double alpha) const {
    const auto& vals = tables_[j].merged;
    // mass_above is nonincreasing along vals: find the last index that qualifies
    std::size_t lo = 0;
    std::size_t hi = vals.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (mass_above(j, vals[mid]) >= alpha - kMassSlack) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo == 0 ? -std::numeric_limits<double>::infinity() : vals[lo - 1];
  }

  /// Smallest attained value v with mass_below(j, v) >= alpha; +inf if none.
  double lower_quantile(std::size_t j, double alpha) const {
    const auto& vals = tables_[j].merged;
    std::size_t lo = 0;
    std::size_t hi = vals.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (mass_below(j, vals[mid]) >= alpha - kMassSlack) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo == vals.size() ? std::numeric_limits<double>::infinity() : vals[lo];
  }

  /// min_j mass_above(j, B_j(z)).
  DepthValue depth(const Point& z) const {
    DepthValue best;
    best.value = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < dirs_.size(); ++j) {
      const double mass = mass_above(j, busemann(j, z));
      if (mass < best.value) {
        best.value = mass;
        best.direction_index = j;
      }
    }
    best.attained_mass = best.value;
    if (mu_.is_counted()) {
      best.numerator = count_above(best.direction_index, busemann(best.direction_index, z));
      best.denominator = mu_.count_total();
    }
    return best;
  }

  /// Directional masses at z for every direction.
  std::vector<double> masses(const Point& z) const {
    std::vector<double> out(dirs_.size());
    for (std::size_t j = 0; j < dirs_.size(); ++j) out[j] = mass_above(j, busemann(j, z));
    return out;
  }

  /// min_j min(mass_above, mass_below): closed horospherical halfspaces on both sides.
  double two_sided_depth(const Point& z) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < dirs_.size(); ++j) {
      const double b = busemann(j, z);
      best = std::min(best, std::min(mass_above(j, b), mass_below(j, b)));
    }
    return best;
  }

  /// Depth of many query points, evaluated in parallel.
  std::vector<DepthValue> depth_many(const std::vector<Point>& zs) const {
    std::vector<DepthValue> out(zs.size());
    parallel_for(zs.size(), [&](std::size_t i) { out[i] = depth(zs[i]); }, 8);
    return out;
  }

 private:
  struct Table {
    std::vector<double> values;  // per component, sorted ascending
    std::vector<double> suffix;  // per component, size k + 1: unit sum of values[i..k)
    std::vector<double> prefix;  // per component, size k + 1: unit sum of values[0..i)
    std::vector<double> merged;  // all distinct values, ascending
  };

  static std::vector<double>& sums_buffer() {
    thread_local std::vector<double> buf;
    return buf;
  }

  M m_;
  EmpiricalMeasure<Point> mu_;
  DirectionSet<M> dirs_;
  std::vector<std::size_t> value_offset_;
  std::vector<Table> tables_;
};

}  // namespace horodepth
