#pragma once

#include <string>

namespace veo {

// Verbosity is controlled by the VACUUM_EOS_LOG environment variable:
// "quiet", "info" (default), or "debug". Messages go to stderr so they never
// contaminate generated artifacts.
enum class LogLevel { quiet = 0, info = 1, debug = 2 };

LogLevel log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace veo
