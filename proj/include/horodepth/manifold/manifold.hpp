#pragma once

#include <concepts>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "horodepth/manifold/euclidean.hpp"
#include "horodepth/manifold/poincare_ball.hpp"
#include "horodepth/manifold/spd_cone.hpp"

namespace horodepth {

/// The geometry interface the depth engine, estimators and experiments rely on.
template <class M>
concept Manifold = requires(const M& m, const typename M::Point& x, const typename M::Direction& xi,
                            const typename M::Tangent& v, double s, std::size_t n, std::uint64_t seed,
                            const OrthogonalMap& q) {
  { M::name() } -> std::convertible_to<std::string_view>;
  { m.dimension() } -> std::convertible_to<int>;
  { m.base_point() } -> std::same_as<typename M::Point>;
  { m.busemann(xi, x) } -> std::convertible_to<double>;
  { m.distance(x, x) } -> std::convertible_to<double>;
  { m.geodesic_point(x, x, s) } -> std::same_as<typename M::Point>;
  { m.exp_map(x, v) } -> std::same_as<typename M::Point>;
  { m.log_map(x, x) } -> std::same_as<typename M::Tangent>;
  { m.tangent_norm(x, v) } -> std::convertible_to<double>;
  { m.tangent_inner(x, v, v) } -> std::convertible_to<double>;
  { m.zero_tangent(x) } -> std::same_as<typename M::Tangent>;
  { m.tangent_basis(x) } -> std::same_as<std::vector<typename M::Tangent>>;
  { m.ray_point(x, xi, s) } -> std::same_as<typename M::Point>;
  { m.max_ray_parameter(x, xi) } -> std::convertible_to<double>;
  { m.sample_directions(n, seed) } -> std::same_as<std::vector<typename M::Direction>>;
  { m.direction_tangent_basis(xi) };
  { m.make_direction(m.direction_coords(xi)) } -> std::same_as<typename M::Direction>;
  { m.apply_isometry(q, x) } -> std::same_as<typename M::Point>;
  { m.boundary_action(q, xi) } -> std::same_as<typename M::Direction>;
  { m.to_row(x) } -> std::same_as<std::vector<double>>;
};

static_assert(Manifold<Euclidean>);
static_assert(Manifold<PoincareBall>);
static_assert(Manifold<SpdCone>);

/// Busemann function normalized at p instead of the base point: B_xi(x) - B_xi(p).
template <Manifold M>
double busemann_based(const M& m, const typename M::Direction& xi, const typename M::Point& p,
                      const typename M::Point& x) {
  return m.busemann(xi, x) - m.busemann(xi, p);
}

/// Geodesic symmetry through theta: exp_theta(-log_theta x).
template <Manifold M>
typename M::Point reflect(const M& m, const typename M::Point& theta, const typename M::Point& x) {
  return m.exp_map(theta, -m.log_map(theta, x));
}

/// Pushforward of an isotropic tangent Gaussian (standard deviation sigma in an
/// orthonormal frame at center) through the exponential map.
template <Manifold M, class Rng>
std::vector<typename M::Point> wrapped_gaussian(const M& m, const typename M::Point& center, std::size_t n,
                                                double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("wrapped Gaussian sigma must be nonnegative");
  const auto basis = m.tangent_basis(center);
  std::normal_distribution<double> gauss;
  std::vector<typename M::Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    typename M::Tangent v = m.zero_tangent(center);
    for (const auto& b : basis) v += (sigma * gauss(rng)) * b;
    out.push_back(m.exp_map(center, v));
  }
  return out;
}

enum class ManifoldKind { euclidean, ball, spd };

std::string_view to_string(ManifoldKind k);
ManifoldKind parse_manifold_kind(std::string_view s);

/// Runtime selection of one of the three concrete geometries.
using ManifoldContext = std::variant<Euclidean, PoincareBall, SpdCone>;

/// dim is d for Euclidean and the ball, p for the SPD cone.
ManifoldContext make_context(ManifoldKind kind, int dim, GeometryTolerances tol = {});
ManifoldKind kind_of(const ManifoldContext& ctx);
int size_parameter(const ManifoldContext& ctx);

}  // namespace horodepth
