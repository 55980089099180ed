#include "horodepth/depth/tukey2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "horodepth/common.hpp"

namespace horodepth {

TukeyDepth exact_tukey_depth_2d(const EuclideanPoint& z, const std::vector<EuclideanPoint>& pts) {
  if (pts.empty()) throw std::invalid_argument("exact_tukey_depth_2d needs at least one point");
  if (z.coords.size() != 2) throw DimensionError("exact_tukey_depth_2d is defined for d = 2 only");
  std::vector<Eigen::Vector2d> v;
  std::uint64_t at_z = 0;
  for (const auto& p : pts) {
    if (p.coords.size() != 2) throw DimensionError("exact_tukey_depth_2d is defined for d = 2 only");
    const Eigen::Vector2d d = p.coords - z.coords;
    if (d.x() == 0.0 && d.y() == 0.0) {
      ++at_z;  // inside every closed halfplane through z
    } else {
      v.push_back(d);
    }
  }
  const std::uint64_t n = pts.size();
  if (v.empty()) return {n, n};

  constexpr double pi = std::numbers::pi;
  std::vector<double> crit;
  crit.reserve(2 * v.size());
  for (const auto& d : v) {
    const double phi = std::atan2(d.y(), d.x());
    for (double a : {phi + pi / 2, phi - pi / 2}) {
      double w = std::fmod(a, 2 * pi);
      if (w < 0) w += 2 * pi;
      crit.push_back(w);
    }
  }
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());

  std::uint64_t best = n;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    const double a = crit[i];
    const double b = i + 1 < crit.size() ? crit[i + 1] : crit[0] + 2 * pi;
    const double mid = 0.5 * (a + b);
    const Eigen::Vector2d u(std::cos(mid), std::sin(mid));
    std::uint64_t count = at_z;
    for (const auto& d : v) {
      if (u.dot(d) <= 0.0) ++count;
    }
    best = std::min(best, count);
  }
  return {best, n};
}

}  // namespace horodepth
