#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "horodepth/util/numeric.hpp"

namespace horodepth {

/// A finitely supported probability measure.
///
/// Atoms are organised in components and components in groups:
///
///   P = sum_g a_g sum_{c in g} b_c (sum_{i in c} u_i delta_{x_i}) / U_c
///
/// A component is either counted (u_i are integers, so every event mass inside
/// it is an exact rational k / U_c) or weighted (u_i are arbitrary nonnegative
/// weights summed with compensation). A plain sample is one counted component in
/// one group of coefficient 1. A Huber mixture (1 - eps) P + eps Q keeps P and Q
/// as two groups, so the mass of any event is formed as (1 - eps) P(A) + eps Q(A)
/// with P(A) and Q(A) evaluated exactly as they would be on their own.
template <class P>
class EmpiricalMeasure {
 public:
  struct Component {
    std::size_t begin = 0;
    std::size_t end = 0;
    double coef = 1.0;    // b_c
    double total = 0.0;   // U_c
    bool counted = true;
  };
  struct Group {
    std::size_t first = 0;  // component range
    std::size_t last = 0;
    double coef = 1.0;      // a_g
  };

  EmpiricalMeasure() = default;

  /// Uniform weights 1/n.
  static EmpiricalMeasure uniform(std::vector<P> points) {
    std::vector<std::uint64_t> counts(points.size(), 1);
    return counted(std::move(points), counts);
  }

  /// Multiplicities; weight of atom i is counts[i] / sum(counts).
  static EmpiricalMeasure counted(std::vector<P> points, std::span<const std::uint64_t> counts) {
    if (points.empty()) throw std::invalid_argument("empirical measure needs at least one point");
    if (counts.size() != points.size()) throw std::invalid_argument("counts and points differ in length");
    EmpiricalMeasure m;
    m.points_ = std::move(points);
    double total = 0.0;
    for (std::uint64_t c : counts) {
      m.units_.push_back(static_cast<double>(c));
      total += static_cast<double>(c);
    }
    if (!(total > 0.0) || total > 9.0e15) throw std::invalid_argument("counts must have a positive total below 2^53");
    m.components_.push_back({0, m.points_.size(), 1.0, total, true});
    m.groups_.push_back({0, 1, 1.0});
    return m;
  }

  /// Explicit weights. They must be nonnegative and sum to 1 within 1e-12.
  static EmpiricalMeasure weighted(std::vector<P> points, std::span<const double> weights) {
    if (points.empty()) throw std::invalid_argument("empirical measure needs at least one point");
    if (weights.size() != points.size()) throw std::invalid_argument("weights and points differ in length");
    CompensatedSum sum;
    for (double w : weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be finite and nonnegative");
      sum.add(w);
    }
    if (std::abs(sum.value() - 1.0) > 1e-12) {
      throw std::invalid_argument("weights sum to " + std::to_string(sum.value()) + ", expected 1");
    }
    EmpiricalMeasure m;
    m.points_ = std::move(points);
    m.units_.assign(weights.begin(), weights.end());
    m.components_.push_back({0, m.points_.size(), 1.0, sum.value(), false});
    m.groups_.push_back({0, 1, 1.0});
    return m;
  }

  /// a P + (1 - a) Q as two groups. Each input's own groups are folded into one.
  static EmpiricalMeasure mixture(const EmpiricalMeasure& p, double a, const EmpiricalMeasure& q, double b) {
    if (!(a >= 0.0 && b >= 0.0) || std::abs(a + b - 1.0) > 1e-12) {
      throw std::invalid_argument("mixture coefficients must be nonnegative and sum to 1");
    }
    EmpiricalMeasure m;
    m.append_group(p, a);
    m.append_group(q, b);
    return m;
  }

  std::size_t size() const { return points_.size(); }
  const std::vector<P>& points() const { return points_; }
  const P& point(std::size_t i) const { return points_[i]; }
  const std::vector<Component>& components() const { return components_; }
  const std::vector<Group>& groups() const { return groups_; }
  /// Raw unit of atom i (its count or its weight inside its component).
  double unit(std::size_t i) const { return units_[i]; }

  /// Effective probability weight of atom i.
  double weight(std::size_t i) const {
    for (const auto& g : groups_) {
      for (std::size_t c = g.first; c < g.last; ++c) {
        const auto& comp = components_[c];
        if (i >= comp.begin && i < comp.end) return g.coef * comp.coef * units_[i] / comp.total;
      }
    }
    throw std::out_of_range("atom index out of range");
  }

  std::vector<double> weights() const {
    std::vector<double> w(size());
    for (const auto& g : groups_) {
      for (std::size_t c = g.first; c < g.last; ++c) {
        const auto& comp = components_[c];
        for (std::size_t i = comp.begin; i < comp.end; ++i) w[i] = g.coef * comp.coef * units_[i] / comp.total;
      }
    }
    return w;
  }

  /// True for a single counted component: all event masses are k / total.
  bool is_counted() const { return components_.size() == 1 && components_[0].counted; }
  std::uint64_t count_total() const { return static_cast<std::uint64_t>(components_.at(0).total); }

  /// Mass of the atoms selected by keep(i), combined group by group.
  template <class Pred>
  double mass_where(Pred&& keep) const {
    std::vector<double> per_component(components_.size());
    for (std::size_t c = 0; c < components_.size(); ++c) {
      CompensatedSum s;
      for (std::size_t i = components_[c].begin; i < components_[c].end; ++i) {
        if (keep(i)) s.add(units_[i]);
      }
      per_component[c] = s.value();
    }
    return combine(per_component);
  }

  /// sum_g a_g sum_c b_c s_c / U_c for per-component unit sums s_c.
  double combine(std::span<const double> unit_sums) const {
    double total = 0.0;
    for (const auto& g : groups_) {
      double inner = 0.0;
      for (std::size_t c = g.first; c < g.last; ++c) {
        inner += components_[c].coef * (unit_sums[c] / components_[c].total);
      }
      total += g.coef * inner;
    }
    return total;
  }

  /// Same structure, points replaced by f(point).
  template <class F>
  auto map_points(F&& f) const -> EmpiricalMeasure<std::decay_t<decltype(f(std::declval<const P&>()))>> {
    EmpiricalMeasure<std::decay_t<decltype(f(std::declval<const P&>()))>> out;
    out.points_.reserve(points_.size());
    for (const auto& p : points_) out.points_.push_back(f(p));
    out.units_ = units_;
    for (const auto& c : components_) out.components_.push_back({c.begin, c.end, c.coef, c.total, c.counted});
    for (const auto& g : groups_) out.groups_.push_back({g.first, g.last, g.coef});
    return out;
  }

  /// Replaces every atom x by the pair {x, s(x)}, each with half the weight.
  /// Atoms flagged by is_fixed(x) keep their full weight in place. Counts stay
  /// integral: a kept atom has count 2c, a pair c + c, out of 2 U.
  template <class Reflect, class Fixed>
  EmpiricalMeasure symmetrized(Reflect&& s, Fixed&& is_fixed) const {
    EmpiricalMeasure out;
    for (const auto& comp : components_) {
      Component nc;
      nc.begin = out.points_.size();
      nc.coef = comp.coef;
      nc.counted = comp.counted;
      CompensatedSum total;
      for (std::size_t i = comp.begin; i < comp.end; ++i) {
        const double u = units_[i];
        if (is_fixed(points_[i])) {
          out.points_.push_back(points_[i]);
          out.units_.push_back(2.0 * u);
        } else {
          out.points_.push_back(points_[i]);
          out.units_.push_back(u);
          out.points_.push_back(s(points_[i]));
          out.units_.push_back(u);
        }
        total.add(2.0 * u);
      }
      nc.end = out.points_.size();
      nc.total = total.value();
      out.components_.push_back(nc);
    }
    out.groups_ = groups_;
    return out;
  }

  /// Fingerprint over points' rows (supplied by the caller) and weights.
  template <class RowFn>
  std::string fingerprint(RowFn&& row) const {
    Fingerprint fp;
    fp.add(static_cast<std::uint64_t>(points_.size()));
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const std::vector<double> r = row(points_[i]);
      fp.add(std::span<const double>(r));
    }
    for (double w : weights()) fp.add(w);
    return fp.hex();
  }

 private:
  template <class>
  friend class EmpiricalMeasure;

  void append_group(const EmpiricalMeasure& src, double coef) {
    const std::size_t offset = points_.size();
    const std::size_t first = components_.size();
    points_.insert(points_.end(), src.points_.begin(), src.points_.end());
    units_.insert(units_.end(), src.units_.begin(), src.units_.end());
    for (const auto& g : src.groups_) {
      for (std::size_t c = g.first; c < g.last; ++c) {
        Component comp = src.components_[c];
        comp.begin += offset;
        comp.end += offset;
        // a single-group source keeps its coefficients bit for bit
        comp.coef = src.groups_.size() == 1 ? comp.coef : g.coef * comp.coef;
        components_.push_back(comp);
      }
    }
    groups_.push_back({first, components_.size(), coef});
  }

  std::vector<P> points_;
  std::vector<double> units_;
  std::vector<Component> components_;
  std::vector<Group> groups_;
};

}  // namespace horodepth
