#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace cracktip {

inline constexpr const char* kSchemaVersion = "1.0";

enum class ExitCode : int {
  ok = 0,
  assertion_failure = 1,
  config_error = 2,
  numerical_failure = 3,
};

// configuration problems surfaced to the caller as exit code 2
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunReport {
  int exit_code = 0;
  nlohmann::ordered_json report;
  std::vector<std::string> artifacts;
};

// full experiment entry point: validates config, dispatches, writes artifacts
// under output_dir (CRACKTIP_OUTPUT_DIR env var wins over the config value)
RunReport run(const std::string& command, const nlohmann::ordered_json& config, std::uint64_t seed,
              const std::string& output_dir_override = "");

const std::vector<std::string>& known_commands();

}  // namespace cracktip
