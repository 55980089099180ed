#include "horodepth/io/generate.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "horodepth/manifold/spd_linalg.hpp"
#include "horodepth/robustness/contamination.hpp"

namespace horodepth {

GenKind parse_gen_kind(const std::string& s) {
  if (s == "wrapped_gaussian") return GenKind::wrapped_gaussian;
  if (s == "symmetrized") return GenKind::symmetrized;
  if (s == "spd_log_gaussian") return GenKind::spd_log_gaussian;
  throw std::invalid_argument("unknown generator '" + s + "' (expected wrapped_gaussian, symmetrized or spd_log_gaussian)");
}

std::string to_string(GenKind k) {
  switch (k) {
    case GenKind::wrapped_gaussian:
      return "wrapped_gaussian";
    case GenKind::symmetrized:
      return "symmetrized";
    case GenKind::spd_log_gaussian:
      return "spd_log_gaussian";
  }
  return "unknown";
}

GenParams parse_gen_params(const std::string& text) {
  GenParams p;
  std::stringstream ss(text);
  std::string kv;
  while (std::getline(ss, kv, ',')) {
    if (kv.empty()) continue;
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("generator parameter '" + kv + "' is not key=value");
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    std::size_t pos = 0;
    if (key == "manifold") {
      p.manifold = parse_manifold_kind(value);
      pos = value.size();
    } else if (key == "dim") {
      p.dim = std::stoi(value, &pos);
    } else if (key == "n") {
      const long long n = std::stoll(value, &pos);
      if (n < 0) throw std::invalid_argument("n must be nonnegative");
      p.n = static_cast<std::size_t>(n);
    } else if (key == "sigma") {
      p.sigma = std::stod(value, &pos);
    } else if (key == "center") {
      std::string c = value;
      std::replace(c.begin(), c.end(), ';', ',');
      p.center = parse_row(c);
      pos = value.size();
    } else {
      throw std::invalid_argument("unknown generator parameter '" + key + "'");
    }
    if (pos != value.size()) throw std::invalid_argument("invalid value for '" + key + "': '" + value + "'");
  }
  return p;
}

namespace {

template <Manifold M>
DatasetFile draw(const M& m, GenKind kind, const GenParams& p, std::uint64_t seed) {
  const auto center = p.center.empty() ? m.base_point() : m.from_row(p.center);
  std::mt19937_64 rng(seed);
  std::vector<typename M::Point> pts;
  if (kind == GenKind::wrapped_gaussian) {
    pts = wrapped_gaussian(m, center, p.n, p.sigma, rng);
  } else {
    if (p.n >= 2) {
      auto half = EmpiricalMeasure<typename M::Point>::uniform(wrapped_gaussian(m, center, p.n / 2, p.sigma, rng));
      // as symmetrize(), but a draw landing on the center still counts twice
      pts = half.symmetrized([&](const auto& x) { return reflect(m, center, x); }, [](const auto&) { return false; })
                .points();
    }
    if (p.n % 2) pts.push_back(center);
  }
  return to_dataset(m, EmpiricalMeasure<typename M::Point>::uniform(std::move(pts)), p.manifold);
}

DatasetFile draw_log_gaussian(const SpdCone& cone, const GenParams& p, std::uint64_t seed) {
  const Eigen::MatrixXd log_c = p.center.empty() ? Eigen::MatrixXd::Zero(p.dim, p.dim)
                                                 : spd::spd_log(cone.from_row(p.center).matrix());
  const auto basis = cone.symmetric_basis();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<SpdPoint> pts;
  for (std::size_t i = 0; i < p.n; ++i) {
    Eigen::MatrixXd s = log_c;
    for (const auto& e : basis) s += (p.sigma * g(rng)) * e;
    pts.push_back(cone.make_point(spd::sym_exp(spd::symmetrize(s))));
  }
  return to_dataset(cone, EmpiricalMeasure<SpdPoint>::uniform(std::move(pts)), ManifoldKind::spd);
}

}  // namespace

DatasetFile generate(GenKind kind, const GenParams& p, std::uint64_t seed) {
  if (p.n == 0) throw std::invalid_argument("generator needs n >= 1");
  if (!(p.sigma >= 0.0)) throw std::invalid_argument("sigma must be nonnegative");
  if (!p.center.empty() && p.center.size() != row_width(p.manifold, p.dim)) {
    throw DimensionError("center has " + std::to_string(p.center.size()) + " entries, expected " +
                         std::to_string(row_width(p.manifold, p.dim)));
  }
  if (kind == GenKind::spd_log_gaussian) {
    if (p.manifold != ManifoldKind::spd) throw std::invalid_argument("spd_log_gaussian needs manifold=spd");
    return draw_log_gaussian(SpdCone(p.dim), p, seed);
  }
  const ManifoldContext ctx = make_context(p.manifold, p.dim);
  return std::visit([&](const auto& m) { return draw(m, kind, p, seed); }, ctx);
}

}  // namespace horodepth
