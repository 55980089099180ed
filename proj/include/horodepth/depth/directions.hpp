#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "horodepth/manifold/manifold.hpp"
#include "horodepth/util/numeric.hpp"

namespace horodepth {

enum class DirectionSource { seeded, grid, explicit_list };

/// Ordered boundary directions plus how they were produced.
template <Manifold M>
struct DirectionSet {
  std::vector<typename M::Direction> directions;
  DirectionSource source = DirectionSource::explicit_list;
  std::uint64_t seed = 0;

  std::size_t size() const { return directions.size(); }
  const typename M::Direction& operator[](std::size_t j) const { return directions[j]; }

  /// First k directions, same provenance.
  DirectionSet prefix(std::size_t k) const {
    DirectionSet out = *this;
    out.directions.resize(std::min(k, directions.size()));
    return out;
  }

  std::string fingerprint(const M& m) const {
    Fingerprint fp;
    for (const auto& d : directions) {
      const auto& c = m.direction_coords(d);
      fp.add(std::span<const double>(c.data(), static_cast<std::size_t>(c.size())));
    }
    return fp.hex();
  }
};

template <Manifold M>
DirectionSet<M> seeded_directions(const M& m, std::size_t count, std::uint64_t seed) {
  return {m.sample_directions(count, seed), DirectionSource::seeded, seed};
}

/// Regular m-gon; only for two-dimensional Euclidean space and H^2.
template <Manifold M>
DirectionSet<M> grid_directions(const M& m, std::size_t count) {
  if constexpr (requires { m.grid_directions(count); }) {
    if (count == 0) throw std::invalid_argument("number of directions must be at least 1");
    return {m.grid_directions(count), DirectionSource::grid, 0};
  } else {
    throw DimensionError("grid directions are not available for this manifold");
  }
}

template <Manifold M>
DirectionSet<M> explicit_directions(std::vector<typename M::Direction> dirs) {
  if (dirs.empty()) throw std::invalid_argument("direction set must not be empty");
  return {std::move(dirs), DirectionSource::explicit_list, 0};
}

inline std::string to_string(DirectionSource s) {
  switch (s) {
    case DirectionSource::seeded:
      return "seeded";
    case DirectionSource::grid:
      return "grid";
    case DirectionSource::explicit_list:
      return "explicit";
  }
  return "unknown";
}

}  // namespace horodepth
