#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dplqr/sim.hpp"

namespace dplqr {

/// Carries every validation failure found in a config, not just the first.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

private:
  std::vector<std::string> errors_;
};

/// Parses and fully validates a JSON run config. Unknown keys are rejected.
SimConfig parse_config(const std::string& path);
SimConfig parse_config_text(const std::string& text);

}  // namespace dplqr
