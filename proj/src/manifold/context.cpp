#include <iostream>
#include <mutex>
#include <string>

#include "horodepth/manifold/manifold.hpp"

namespace horodepth {

namespace diagnostics {
namespace {
std::mutex sink_mutex;
WarningSink& sink() {
  static WarningSink s = [](const std::string& msg) { std::cerr << "horodepth: warning: " << msg << '\n'; };
  return s;
}
}  // namespace

WarningSink set_warning_sink(WarningSink s) {
  std::lock_guard lock(sink_mutex);
  WarningSink old = std::move(sink());
  sink() = std::move(s);
  return old;
}

void warn(const std::string& message) {
  std::lock_guard lock(sink_mutex);
  if (sink()) sink()(message);
}
}  // namespace diagnostics

std::string_view to_string(ManifoldKind k) {
  switch (k) {
    case ManifoldKind::euclidean:
      return "euclidean";
    case ManifoldKind::ball:
      return "ball";
    case ManifoldKind::spd:
      return "spd";
  }
  return "unknown";
}

ManifoldKind parse_manifold_kind(std::string_view s) {
  if (s == "euclidean") return ManifoldKind::euclidean;
  if (s == "ball") return ManifoldKind::ball;
  if (s == "spd") return ManifoldKind::spd;
  throw std::invalid_argument("unknown manifold '" + std::string(s) + "' (expected euclidean, ball or spd)");
}

ManifoldContext make_context(ManifoldKind kind, int dim, GeometryTolerances tol) {
  switch (kind) {
    case ManifoldKind::euclidean:
      return Euclidean(dim, tol);
    case ManifoldKind::ball:
      return PoincareBall(dim, tol);
    case ManifoldKind::spd:
      return SpdCone(dim, tol);
  }
  throw std::invalid_argument("unknown manifold kind");
}

ManifoldKind kind_of(const ManifoldContext& ctx) {
  return static_cast<ManifoldKind>(ctx.index());
}

int size_parameter(const ManifoldContext& ctx) {
  return std::visit([](const auto& m) { return m.ambient_dim(); }, ctx);
}

}  // namespace horodepth
