// Command-line surface: run a scenario to CSV, sweep the deformation
// parameter, or run the verification suite.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qheis/config.hpp"
#include "qheis/runner.hpp"
#include "qheis/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitTolerance = 3;
constexpr int kExitIo = 4;

std::filesystem::path resolve_output(const qheis::RunConfig& cfg,
                                     const std::string& cli_override) {
  std::filesystem::path path;
  if (!cli_override.empty()) {
    path = cli_override;
  } else if (!cfg.output_path.empty()) {
    path = cfg.output_path;
  } else {
    path = std::string(qheis::scenario_name(cfg.scenario.kind)) + ".csv";
  }
  if (path.is_relative()) {
    if (const char* dir = std::getenv("QHEIS_OUT_DIR")) {
      path = std::filesystem::path(dir) / path;
    }
  }
  return path;
}

int write_output(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << path.string() << "'\n";
    return kExitIo;
  }
  out << body;
  out.flush();
  if (!out) {
    std::cerr << "error: failed writing '" << path.string() << "'\n";
    return kExitIo;
  }
  return kExitOk;
}

std::vector<double> parse_q_list(const std::string& arg) {
  std::vector<double> out;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double q = std::stod(item, &used);
    if (used != item.size()) {
      throw qheis::ConfigError("bad q value '" + item + "' in sweep list");
    }
    out.push_back(q);
  }
  return out;
}

int cmd_run(const std::string& config_path, const std::string& output_override) {
  qheis::RunConfig cfg;
  try {
    cfg = qheis::load_run_config(config_path);
  } catch (const qheis::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  std::ostringstream body;
  const qheis::RunOutcome outcome = qheis::run_to_csv(cfg, body);
  const int io = write_output(resolve_output(cfg, output_override), body.str());
  if (io != kExitOk) return io;
  if (outcome.tolerance_breached) {
    std::cerr << "tolerance breach: max engine deviation "
              << qheis::format_double(outcome.max_pair_deviation)
              << " exceeds max_deviation\n";
    return kExitTolerance;
  }
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& q_arg,
              const std::string& output_override) {
  qheis::RunConfig cfg;
  std::vector<double> qs;
  try {
    cfg = qheis::load_run_config(config_path);
    qs = parse_q_list(q_arg);
    if (qs.empty()) throw qheis::ConfigError("sweep: empty q list");
  } catch (const qheis::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  std::ostringstream body;
  const qheis::RunOutcome outcome = qheis::sweep_to_csv(cfg, qs, body);
  const int io = write_output(resolve_output(cfg, output_override), body.str());
  if (io != kExitOk) return io;
  if (outcome.tolerance_breached) {
    std::cerr << "tolerance breach: max engine deviation "
              << qheis::format_double(outcome.max_pair_deviation)
              << " exceeds max_deviation\n";
    return kExitTolerance;
  }
  return kExitOk;
}

int run_checks(bool identities_only) {
  int failures = 0;
  if (!identities_only) {
    const auto results = qheis::run_verification_suite();
    std::size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.name.size());
    for (const auto& r : results) {
      std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name
                << std::string(width - r.name.size() + 2, ' ') << r.detail << "\n";
      if (!r.passed) ++failures;
    }
    std::cout << "\n";
  }
  std::cout << qheis::bracket_convention_table() << "\n";
  if (!identities_only) {
    std::cout << (failures == 0 ? "verification suite: all checks passed\n"
                                : "verification suite: " + std::to_string(failures) +
                                      " check(s) FAILED\n");
  }
  return failures == 0 ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-deformed Heisenberg-picture dynamics toolkit"};
  app.require_subcommand(1);

  std::string config_path, q_arg, output_override;

  auto* run = app.add_subcommand("run", "run a scenario from a config file");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("-o,--output", output_override, "output CSV path");

  auto* sweep = app.add_subcommand("sweep", "run a scenario over a list of q values");
  sweep->add_option("config", config_path, "config file")->required();
  sweep->add_option("--q", q_arg, "comma-separated q values")->required();
  sweep->add_option("-o,--output", output_override, "output CSV path");

  auto* verify = app.add_subcommand("verify", "run the full verification suite");
  auto* identities =
      app.add_subcommand("verify-identities", "print the symbolic identity tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (run->parsed()) return cmd_run(config_path, output_override);
    if (sweep->parsed()) return cmd_sweep(config_path, q_arg, output_override);
    if (verify->parsed()) return run_checks(false);
    if (identities->parsed()) return run_checks(true);
  } catch (const qheis::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
