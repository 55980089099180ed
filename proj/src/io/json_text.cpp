#include "horodepth/io/json_text.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace horodepth {

std::string format_double(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

namespace {

void emit(std::ostream& out, const json& v, int indent, int level) {
  const auto newline = [&](int lvl) {
    if (indent >= 0) out << '\n' << std::string(static_cast<std::size_t>(indent * lvl), ' ');
  };
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (const auto& [k, item] : v.items()) {
        if (!first) out << ',';
        first = false;
        newline(level + 1);
        out << json(k).dump() << (indent >= 0 ? ": " : ":");
        emit(out, item, indent, level + 1);
      }
      newline(level);
      out << '}';
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out << (indent >= 0 ? "," : ",");
        first = false;
        newline(level + 1);
        emit(out, item, indent, level + 1);
      }
      newline(level);
      out << ']';
      return;
    }
    case json::value_t::number_float: {
      const double x = v.get<double>();
      out << (std::isfinite(x) ? format_double(x) : "null");
      return;
    }
    default:
      out << v.dump();
  }
}

}  // namespace

void write_json(std::ostream& out, const json& value, int indent) { emit(out, value, indent, 0); }

std::string dump_json(const json& value, int indent) {
  std::ostringstream os;
  write_json(os, value, indent);
  return os.str();
}

}  // namespace horodepth
