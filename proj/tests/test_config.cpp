#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "qheis/config.hpp"
#include "qheis/qnum.hpp"
#include "qheis/runner.hpp"

using namespace qheis;

TEST_CASE("minimal oscillator config resolves defaults") {
  const RunConfig cfg = parse_run_config("scenario = q_oscillator\n");
  CHECK(cfg.scenario.kind == ScenarioKind::q_oscillator);
  CHECK(cfg.scenario.bracket_id == "one_q");
  CHECK(cfg.engines == std::vector<std::string>{"closed", "ode", "liouville"});
  CHECK(cfg.observable == "a");
  CHECK(cfg.state_spec.rfind("coherent:", 0) == 0);
  CHECK_FALSE(cfg.max_deviation.has_value());
}

TEST_CASE("full config parses") {
  const std::string text = R"(# comment line
scenario = q_oscillator
q = 1.1
omega = 2.0
levels = 8
t_end = 3.0
steps = 150
engines = ode,closed
observable = x
state = basis:2
max_deviation = 1e-5
paper_mode = true
)";
  const RunConfig cfg = parse_run_config(text);
  CHECK(cfg.scenario.q == 1.1);
  CHECK(cfg.scenario.omega == 2.0);
  CHECK(cfg.scenario.fock_levels == 8);
  CHECK(cfg.scenario.grid.steps == 150);
  CHECK(cfg.scenario.paper_mode);
  CHECK(cfg.engines == std::vector<std::string>{"closed", "ode"});
  CHECK(cfg.observable == "x");
  CHECK(*cfg.max_deviation == 1e-5);
}

TEST_CASE("strict parsing rejects bad input") {
  CHECK_THROWS_AS(parse_run_config(""), ConfigError);  // missing scenario
  CHECK_THROWS_AS(parse_run_config("scenario = warp_drive\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("scenario = q_oscillator\nomegaa = 2\n"),
                  ConfigError);
  // key valid for another scenario is inapplicable here
  CHECK_THROWS_AS(parse_run_config("scenario = free_particle\nomega = 2\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config("scenario = q_oscillator\nq = abc\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config("scenario = q_oscillator\nq = 1.2\nq = 1.3\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config("scenario = q_oscillator\njust a line\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config("scenario = q_oscillator\nengines = warp\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config("scenario = q_oscillator\nsteps = 0\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config("scenario = q_oscillator\nstate = nope\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config("scenario = free_particle\nq = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("scenario = poly_dynamics\nengines = all\n"),
                  ConfigError);
}

TEST_CASE("echo round-trips for every scenario") {
  const std::vector<std::string> configs = {
      "scenario = q_oscillator\nq = 1.3\nomega = 0.7\nlevels = 12\n",
      "scenario = free_particle\nq = 1.5\nmass = 2.0\np0 = 0.5\nhalf_width = 6\n"
      "observable = p\nstate = basis:3\n",
      "scenario = spin_precession\nq = 0.9\nb_field = 1.4\nlambda = 0.8\n"
      "spin0 = 0.6,-0.8,0.1\nengines = closed,liouville\n",
      "scenario = poly_dynamics\nq = 1.2\nb = 0.4\nc = 1.5\nalpha10 = 1.0,0.25\n"
      "quad_steps = 32\n",
  };
  for (const auto& text : configs) {
    const RunConfig cfg = parse_run_config(text);
    const std::string echoed = echo_config(cfg);
    const RunConfig back = reparse_echo(echoed);
    CHECK(back == cfg);
  }
}

TEST_CASE("echoed header appears in CSV output and parses back") {
  const RunConfig cfg = parse_run_config(
      "scenario = spin_precession\nq = 1.1\nt_end = 2.0\nsteps = 40\n");
  std::ostringstream out;
  run_to_csv(cfg, out);
  const std::string body = out.str();
  CHECK(body.find("# scenario = spin_precession") != std::string::npos);
  CHECK(body.find("t,closed_sx") != std::string::npos);

  // extract comment lines and reparse
  std::istringstream in(body);
  std::string line, header;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') header += line + "\n";
  }
  CHECK(reparse_echo(header) == cfg);
}

TEST_CASE("csv is deterministic") {
  const RunConfig cfg = parse_run_config(
      "scenario = q_oscillator\nq = 1.2\nlevels = 6\nt_end = 1.0\nsteps = 50\n");
  std::ostringstream a, b;
  run_to_csv(cfg, a);
  run_to_csv(cfg, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("q_omega_q") != std::string::npos);
}

TEST_CASE("tolerance breach is reported") {
  RunConfig cfg = parse_run_config(
      "scenario = free_particle\nq = 1.5\nhalf_width = 4\nt_end = 2.0\nsteps = 100\n"
      "max_deviation = 1e-12\n");
  std::ostringstream out;
  const RunOutcome outcome = run_to_csv(cfg, out);
  CHECK(outcome.tolerance_breached);  // closed vs integrated gap dominates

  cfg.max_deviation = 1e6;
  std::ostringstream out2;
  CHECK_FALSE(run_to_csv(cfg, out2).tolerance_breached);
}

TEST_CASE("sweep writes one block per q and skips singular points") {
  const RunConfig cfg = parse_run_config(
      "scenario = free_particle\nq = 1.5\nhalf_width = 4\nt_end = 0.5\nsteps = 20\n");
  std::ostringstream out;
  sweep_to_csv(cfg, {0.9, 1.0, 1.1}, out);
  const std::string body = out.str();
  CHECK(body.find("# q = 9.0000000000000002e-01") != std::string::npos);
  CHECK(body.find("# q = 1.1000000000000001e+00") != std::string::npos);
  CHECK(body.find("# warning = q 1.0000000000000000e+00 skipped") !=
        std::string::npos);
  CHECK_THROWS_AS(sweep_to_csv(cfg, {}, out), ConfigError);
}

TEST_CASE("oscillator sweep records the deformed rate") {
  const RunConfig cfg = parse_run_config(
      "scenario = q_oscillator\nlevels = 4\nt_end = 0.2\nsteps = 5\nengines = closed\n");
  std::ostringstream out;
  sweep_to_csv(cfg, {0.9, 1.0, 1.1}, out);
  std::istringstream in(out.str());
  std::string line;
  std::vector<double> rates;
  bool in_data = false;
  while (std::getline(in, line)) {
    if (line.rfind("t,", 0) == 0) {
      in_data = true;
      continue;
    }
    if (line.empty() || line[0] == '#') {
      in_data = false;
      continue;
    }
    if (in_data) {
      const auto comma = line.rfind(',');
      rates.push_back(std::stod(line.substr(comma + 1)));
      in_data = false;  // first data row of the block is enough
    }
  }
  REQUIRE(rates.size() == 3);
  CHECK(rates[0] == doctest::Approx(0.9 * q_frequency_osc(1.0, 0.9)));
  CHECK(rates[1] == doctest::Approx(1.0 * q_frequency_osc(1.0, 1.0)));
  CHECK(rates[2] == doctest::Approx(1.1 * q_frequency_osc(1.0, 1.1)));
}
