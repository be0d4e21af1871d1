#pragma once

// Flat `key = value` configuration files.
//
//   # comment
//   E_K = 0.5
//   kernel = sech
//   lambda = 4
//
// Keys are case-sensitive, later assignments win, and overrides given as
// "key=value" strings are applied after the file. Unknown keys, unparsable
// values and constraint violations raise ConfigError naming the key.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wigner/solver.hpp"

namespace wigner {

struct ConfigKey {
    std::string key;
    std::string default_value;
    std::string help;
};

/// Every accepted key with its default, in display order.
const std::vector<ConfigKey>& config_keys();

SimulationConfig parse_config(std::string_view text,
                              const std::vector<std::string>& overrides = {});

/// Reads `path` and parses it; throws IoError if the file cannot be read.
SimulationConfig load_config(const std::filesystem::path& path,
                             const std::vector<std::string>& overrides = {});

/// Renders a config as text that parse_config maps back to the same config.
std::string format_config(const SimulationConfig& config);

}  // namespace wigner
