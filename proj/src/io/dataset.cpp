#include "horodepth/io/dataset.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "horodepth/io/json_text.hpp"

namespace horodepth {

std::size_t row_width(ManifoldKind kind, int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  const auto d = static_cast<std::size_t>(dim);
  return kind == ManifoldKind::spd ? d * (d + 1) / 2 : d;
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& field, std::size_t line) {
  const std::string t = trim(field);
  double v = 0.0;
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end) throw ParseError("not a number: '" + t + "'", line);
  if (!std::isfinite(v)) throw ParseError("non-finite value '" + t + "'", line);
  return v;
}

std::vector<double> split_numbers(const std::string& text, std::size_t line) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(parse_number(field, line));
  if (!text.empty() && text.back() == ',') throw ParseError("trailing comma", line);
  return out;
}

void parse_header(const std::string& line, DatasetFile& d) {
  std::istringstream in(line);
  std::string tag;
  std::string version;
  in >> tag >> version;
  if (tag != "#horodepth") throw ParseError("missing '#horodepth' header", 1);
  if (version != "v1") throw ParseError("unsupported dataset version '" + version + "'", 1);
  bool have_manifold = false;
  bool have_dim = false;
  std::string kv;
  while (in >> kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ParseError("malformed header field '" + kv + "'", 1);
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    try {
      if (key == "manifold") {
        d.manifold = parse_manifold_kind(value);
        have_manifold = true;
      } else if (key == "dim") {
        std::size_t pos = 0;
        d.dim = std::stoi(value, &pos);
        if (pos != value.size() || d.dim < 1) throw std::invalid_argument("bad dim");
        have_dim = true;
      } else if (key == "weighted") {
        if (value != "true" && value != "false") throw std::invalid_argument("bad flag");
        d.weighted = value == "true";
      } else {
        throw ParseError("unknown header field '" + key + "'", 1);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("invalid value for header field '" + key + "': '" + value + "'", 1);
    }
  }
  if (!have_manifold || !have_dim) throw ParseError("header needs manifold= and dim=", 1);
}

}  // namespace

std::vector<double> parse_row(const std::string& text) { return split_numbers(trim(text), 0); }

DatasetFile parse_dataset(std::istream& in) {
  DatasetFile d;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::vector<std::size_t> row_lines;
  while (std::getline(in, line)) {
    ++lineno;
    if (!header) {
      if (trim(line).empty()) throw ParseError("empty first line, expected header", lineno);
      parse_header(trim(line), d);
      header = true;
      continue;
    }
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto values = split_numbers(t, lineno);
    const std::size_t width = row_width(d.manifold, d.dim) + (d.weighted ? 1 : 0);
    if (values.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " values, found " + std::to_string(values.size()), lineno);
    }
    if (d.weighted) {
      const double w = values.back();
      if (!(w >= 0.0)) throw ParseError("negative weight", lineno);
      d.weights.push_back(w);
      values.pop_back();
    }
    d.rows.push_back(std::move(values));
    row_lines.push_back(lineno);
  }
  if (!header) throw ParseError("empty file");
  if (d.rows.empty()) throw ParseError("dataset has no rows");

  // points must lie in the model
  const ManifoldContext ctx = make_context(d.manifold, d.dim);
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    try {
      std::visit([&](const auto& m) { (void)m.from_row(d.rows[i]); }, ctx);
    } catch (const std::exception& e) {
      throw ParseError(std::string("invalid point: ") + e.what(), row_lines[i]);
    }
  }
  if (d.weighted) {
    CompensatedSum s;
    for (double w : d.weights) s.add(w);
    const double total = s.value();
    if (!(total > 0.0)) throw ParseError("weights sum to zero");
    if (std::abs(total - 1.0) > 1e-9) {
      diagnostics::warn("weights sum to " + format_double(total) + "; renormalized");
    }
    if (total != 1.0) {
      for (double& w : d.weights) w /= total;
    }
  }
  return d;
}

DatasetFile read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset '" + path.string() + "'");
  return parse_dataset(in);
}

void write_dataset(std::ostream& out, const DatasetFile& d) {
  out << "#horodepth v1 manifold=" << to_string(d.manifold) << " dim=" << d.dim
      << " weighted=" << (d.weighted ? "true" : "false") << '\n';
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    for (std::size_t k = 0; k < d.rows[i].size(); ++k) out << (k ? "," : "") << format_double(d.rows[i][k]);
    if (d.weighted) out << ',' << format_double(d.weights.at(i));
    out << '\n';
  }
}

void write_dataset(const std::filesystem::path& path, const DatasetFile& d) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  write_dataset(out, d);
}

}  // namespace horodepth
