#pragma once

#include <stdexcept>
#include <string>

namespace veo {

// Bad or inconsistent user input (config files, CLI arguments, unwritable
// output locations). Mapped to exit code 2 by the CLI.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated numerical precondition or failed numerical contract (grid
// mismatch, non-monotone grid, invalid operation domain). Exit code 3.
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace veo
