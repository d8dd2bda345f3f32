#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qheis/dynamics.hpp"

namespace qheis {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fully-resolved run description. Parsed from flat `key = value` text with
// strict key checking: unknown keys and keys that do not apply to the
// chosen scenario are rejected.
struct RunConfig {
  Scenario scenario;
  std::vector<std::string> engines;  // resolved subset of closed/ode/liouville
  std::string observable;            // "a" | "x" | "p" (matrix scenarios)
  std::string state_spec;            // "uniform" | "basis:K" | "coherent:RE,IM"
  std::optional<double> max_deviation;
  std::string output_path;           // delivery target; not part of the echo

  bool operator==(const RunConfig& o) const;
};

// Parses config text; `source` names the input in error messages.
RunConfig parse_run_config(const std::string& text,
                           const std::string& source = "config");

RunConfig load_run_config(const std::string& path);

// Canonical `# key = value` header block for CSV output. Re-parsing the
// echoed lines reproduces the resolved config exactly (17-digit floats).
std::string echo_config(const RunConfig& cfg);

// Round-trip helper: strips the comment prefix and re-parses.
RunConfig reparse_echo(const std::string& echoed);

std::string format_double(double v);  // %.16e, shared by echo and CSV

}  // namespace qheis
