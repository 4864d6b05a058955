#include "dcr/report.hpp"

#include <cstdint>

#include <fmt/format.h>

namespace dcr {

void to_json(nlohmann::json& j, const RunReport& r) {
  j = nlohmann::json{{"method", r.method},
                     {"reliability", r.reliability},
                     {"diameter", r.diameter},
                     {"stats", r.stats},
                     {"wall_time_seconds", r.wall_time_seconds},
                     {"input_digest", r.input_digest}};
}

void from_json(const nlohmann::json& j, RunReport& r) {
  j.at("method").get_to(r.method);
  j.at("reliability").get_to(r.reliability);
  j.at("diameter").get_to(r.diameter);
  j.at("stats").get_to(r.stats);
  j.at("wall_time_seconds").get_to(r.wall_time_seconds);
  j.at("input_digest").get_to(r.input_digest);
}

std::string content_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("fnv1a64:{:016x}", h);
}

}  // namespace dcr
