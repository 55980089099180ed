#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

namespace horodepth {

using json = nlohmann::ordered_json;

/// Serializes with every floating value printed as %.17g (".0" appended to
/// integral values, non-finite values as null). indent < 0 gives one line.
std::string dump_json(const json& value, int indent = -1);
void write_json(std::ostream& out, const json& value, int indent = -1);

/// %.17g with the same conventions, for CSV output.
std::string format_double(double x);

}  // namespace horodepth
