#pragma once

#include <cstdint>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "horodepth/io/json_text.hpp"

namespace horodepth {

inline constexpr const char* kRecordSchema = "horodepth.record/1";

/// One row of experiment output: parameters (including every seed needed to
/// replay it), measured scalars, and named verdicts.
struct ExperimentRecord {
  std::string experiment;
  std::string label;
  json params = json::object();
  json measured = json::object();
  json verdicts = json::object();

  bool passed() const {
    for (const auto& [k, v] : verdicts.items())
      if (!v.get<bool>()) return false;
    return true;
  }

  json to_json() const {
    json j;
    j["schema"] = kRecordSchema;
    j["experiment"] = experiment;
    j["label"] = label;
    j["params"] = params;
    j["measured"] = measured;
    j["verdicts"] = verdicts;
    j["pass"] = passed();
    return j;
  }
};

inline std::string to_jsonl(const std::vector<ExperimentRecord>& records) {
  std::string out;
  for (const auto& r : records) out += dump_json(r.to_json()) + "\n";
  return out;
}

/// Only records that carry verdicts appear; one line per verdict.
inline std::string summary_table(const std::vector<ExperimentRecord>& records) {
  std::ostringstream os;
  os << std::left << std::setw(14) << "experiment" << std::setw(28) << "record" << std::setw(34) << "check"
     << "result\n";
  for (const auto& r : records) {
    for (const auto& [k, v] : r.verdicts.items()) {
      os << std::setw(14) << r.experiment << std::setw(28) << r.label << std::setw(34) << k
         << (v.get<bool>() ? "pass" : "FAIL") << '\n';
    }
  }
  return os.str();
}

/// Independent stream per (seed, replicate, purpose).
inline std::mt19937_64 replicate_rng(std::uint64_t seed, std::uint64_t rep, std::uint64_t purpose = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(rep), static_cast<std::uint32_t>(purpose)};
  return std::mt19937_64(seq);
}

}  // namespace horodepth
