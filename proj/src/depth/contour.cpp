#include "horodepth/depth/contour.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>

namespace horodepth {

namespace {

struct Segment {
  std::size_t e0, e1;
  std::array<double, 2> p0, p1;
};

}  // namespace

std::vector<Polyline> trace_contour(const ScalarField& field, double level) {
  const GridSpec& g = field.grid;
  g.validate();
  if (field.values.size() != g.size()) throw std::invalid_argument("field size does not match its grid");
  const std::size_t nx = g.nx;

  // edge ids: 2 * node + 0 for the edge to the right, 2 * node + 1 for the edge upward
  auto hedge = [nx](std::size_t i, std::size_t j) { return 2 * (j * nx + i); };
  auto vedge = [nx](std::size_t i, std::size_t j) { return 2 * (j * nx + i) + 1; };
  auto lerp = [&](double xa, double ya, double fa, double xb, double yb, double fb) {
    const double s = (level - fa) / (fb - fa);
    return std::array<double, 2>{xa + s * (xb - xa), ya + s * (yb - ya)};
  };

  std::vector<Segment> segs;
  for (std::size_t j = 0; j + 1 < g.ny; ++j) {
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      const double f00 = field.at(i, j), f10 = field.at(i + 1, j);
      const double f11 = field.at(i + 1, j + 1), f01 = field.at(i, j + 1);
      if (std::isnan(f00) || std::isnan(f10) || std::isnan(f11) || std::isnan(f01)) continue;
      const double xa = g.x(i), xb = g.x(i + 1), ya = g.y(j), yb = g.y(j + 1);
      const int c = (f00 > level) | ((f10 > level) << 1) | ((f11 > level) << 2) | ((f01 > level) << 3);
      if (c == 0 || c == 15) continue;
      // crossing points on the four cell edges
      const auto bottom = [&] { return std::pair{hedge(i, j), lerp(xa, ya, f00, xb, ya, f10)}; };
      const auto right = [&] { return std::pair{vedge(i + 1, j), lerp(xb, ya, f10, xb, yb, f11)}; };
      const auto top = [&] { return std::pair{hedge(i, j + 1), lerp(xa, yb, f01, xb, yb, f11)}; };
      const auto left = [&] { return std::pair{vedge(i, j), lerp(xa, ya, f00, xa, yb, f01)}; };
      auto add = [&](std::pair<std::size_t, std::array<double, 2>> a, std::pair<std::size_t, std::array<double, 2>> b) {
        segs.push_back({a.first, b.first, a.second, b.second});
      };
      const bool center_high = 0.25 * (f00 + f10 + f11 + f01) > level;
      switch (c) {
        case 1: case 14: add(left(), bottom()); break;
        case 2: case 13: add(bottom(), right()); break;
        case 3: case 12: add(left(), right()); break;
        case 4: case 11: add(right(), top()); break;
        case 6: case 9: add(bottom(), top()); break;
        case 7: case 8: add(left(), top()); break;
        case 5:  // f00, f11 high
          if (center_high) {
            add(left(), top());
            add(bottom(), right());
          } else {
            add(left(), bottom());
            add(right(), top());
          }
          break;
        case 10:  // f10, f01 high
          if (center_high) {
            add(left(), bottom());
            add(right(), top());
          } else {
            add(left(), top());
            add(bottom(), right());
          }
          break;
        default: break;
      }
    }
  }

  std::multimap<std::size_t, std::size_t> by_edge;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    by_edge.emplace(segs[s].e0, s);
    by_edge.emplace(segs[s].e1, s);
  }
  std::vector<bool> used(segs.size(), false);
  auto next_seg = [&](std::size_t edge, std::size_t from) -> std::optional<std::size_t> {
    auto [lo, hi] = by_edge.equal_range(edge);
    for (auto it = lo; it != hi; ++it) {
      if (it->second != from && !used[it->second]) return it->second;
    }
    return std::nullopt;
  };

  std::vector<Polyline> out;
  for (std::size_t s0 = 0; s0 < segs.size(); ++s0) {
    if (used[s0]) continue;
    used[s0] = true;
    // walk forward from e1, then backward from e0 unless the curve closed
    Polyline fwd{segs[s0].p0, segs[s0].p1};
    auto walk = [&](std::size_t edge, std::size_t seg, Polyline& line) {
      while (auto nx_seg = next_seg(edge, seg)) {
        const Segment& n = segs[*nx_seg];
        used[*nx_seg] = true;
        if (n.e0 == edge) {
          line.push_back(n.p1);
          edge = n.e1;
        } else {
          line.push_back(n.p0);
          edge = n.e0;
        }
        seg = *nx_seg;
        if (edge == segs[s0].e0) return true;
      }
      return false;
    };
    const bool closed = walk(segs[s0].e1, s0, fwd);
    if (!closed) {
      Polyline back;
      walk(segs[s0].e0, s0, back);
      std::reverse(back.begin(), back.end());
      back.insert(back.end(), fwd.begin(), fwd.end());
      fwd = std::move(back);
    }
    out.push_back(std::move(fwd));
  }
  return out;
}

}  // namespace horodepth
