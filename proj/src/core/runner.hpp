#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace yf {

enum ExitStatus : int {
  kExitPass = 0,
  kExitFail = 1,
  kExitUsage = 2,
  kExitError = 3,
};

struct RunResult {
  int exit_code = kExitPass;
  std::string report;        // line-oriented, no timestamps
  std::string summary_json;  // machine-readable counterpart
  std::string error;         // set for usage and runtime errors
};

// Commands: simulate, integrate, fubini, transform, convolution, suite.
std::vector<std::string> command_names();
// Check names accepted by the "checks" config key / --check.
std::vector<std::string> check_names();

// Runs `command`. Configuration layers, later wins: built-in defaults, the
// YEHFEYNMAN_SEED environment variable, the JSON file at `config_path` (if
// nonempty), then `overrides_json` (a JSON object, may be empty).
RunResult run_command(std::string_view command, const std::string& config_path,
                      const std::string& overrides_json);

// The built-in defaults as a JSON document.
std::string default_config_json();

}  // namespace yf
