#include "veo/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

namespace veo {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("VACUUM_EOS_LOG");
    if (!env) return LogLevel::info;
    const std::string value(env);
    if (value == "quiet") return LogLevel::quiet;
    if (value == "debug") return LogLevel::debug;
    return LogLevel::info;
  }();
  return level;
}

void log_info(const std::string& message) {
  if (log_level() >= LogLevel::info) std::cerr << "[info] " << message << "\n";
}

void log_debug(const std::string& message) {
  if (log_level() >= LogLevel::debug)
    std::cerr << "[debug] " << message << "\n";
}

}  // namespace veo
