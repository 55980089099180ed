#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "horodepth/io/dataset.hpp"

namespace horodepth {

enum class GenKind { wrapped_gaussian, symmetrized, spd_log_gaussian };

GenKind parse_gen_kind(const std::string& s);
std::string to_string(GenKind k);

struct GenParams {
  ManifoldKind manifold = ManifoldKind::ball;
  int dim = 2;
  std::size_t n = 100;
  double sigma = 0.5;
  std::vector<double> center;  // row; empty means the base point
};

/// "manifold=ball,dim=2,n=100,sigma=0.5,center=0.35;0.2" (center entries separated by ';').
GenParams parse_gen_params(const std::string& text);

/// Deterministic per seed.
///  - wrapped_gaussian: exp_center of an isotropic tangent Gaussian.
///  - symmetrized: n/2 wrapped-Gaussian draws, each paired with its reflection
///    through the center, plus the center itself when n is odd.
///  - spd_log_gaussian: exp(log C + S), S a symmetric Gaussian with standard
///    deviation sigma in a Frobenius-orthonormal basis.
DatasetFile generate(GenKind kind, const GenParams& params, std::uint64_t seed);

}  // namespace horodepth
