#pragma once

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

namespace dcr {

/// Outcome of one `compute` run, as archived in structured output.
struct RunReport {
  std::string method;
  double reliability = 0.0;
  int diameter = 0;
  /// Method-specific counters and figures (recursion counts, standard error…).
  std::map<std::string, double> stats;
  double wall_time_seconds = 0.0;
  std::string input_digest;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

void to_json(nlohmann::json& j, const RunReport& r);
void from_json(const nlohmann::json& j, RunReport& r);

/// 64-bit FNV-1a over the raw bytes, as "fnv1a64:<16 hex digits>".
std::string content_digest(std::string_view bytes);

}  // namespace dcr
