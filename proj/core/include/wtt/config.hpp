#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wtt {

struct Config {
  unsigned max_level = 3;
  unsigned enum_depth = 3;
  std::size_t rewrite_budget = 10000;
  std::size_t fragment_cap = 50000;
  // Default theory mode for `check`: weak, strong or two-level.
  std::string mode = "weak";
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// key = value lines; '#' starts a comment. Unknown keys are rejected.
Config parse_config(const std::string& text);
Config load_config_file(const std::string& path);
// Reads WTT_CONFIG when set, defaults otherwise.
Config config_from_env();

}  // namespace wtt
