#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QHEIS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "qheis_test_cli";
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("run produces byte-identical CSV on repeat") {
  const fs::path dir = temp_dir();
  const fs::path cfg = dir / "osc.cfg";
  write_file(cfg, "scenario = q_oscillator\nq = 1.2\nlevels = 6\nt_end = 1.0\n"
                  "steps = 40\n");
  const fs::path out1 = dir / "a.csv";
  const fs::path out2 = dir / "b.csv";
  REQUIRE(run_cli("run " + cfg.string() + " -o " + out1.string()) == 0);
  REQUIRE(run_cli("run " + cfg.string() + " -o " + out2.string()) == 0);
  const std::string body1 = read_file(out1);
  CHECK(!body1.empty());
  CHECK(body1 == read_file(out2));
  CHECK(body1.find("# scenario = q_oscillator") != std::string::npos);
}

TEST_CASE("config errors exit with the config code") {
  const fs::path dir = temp_dir();
  const fs::path cfg = dir / "bad.cfg";
  write_file(cfg, "q = 1.2\n");  // missing scenario
  CHECK(run_cli("run " + cfg.string()) == 2);

  write_file(cfg, "scenario = q_oscillator\nbogus_key = 3\n");
  CHECK(run_cli("run " + cfg.string()) == 2);

  CHECK(run_cli("run " + (dir / "missing.cfg").string()) == 2);
}

TEST_CASE("tolerance breach exits with the numeric code") {
  const fs::path dir = temp_dir();
  const fs::path cfg = dir / "breach.cfg";
  write_file(cfg, "scenario = free_particle\nq = 1.5\nhalf_width = 4\n"
                  "t_end = 2.0\nsteps = 100\nmax_deviation = 1e-12\n");
  CHECK(run_cli("run " + cfg.string() + " -o " + (dir / "breach.csv").string()) == 3);
}

TEST_CASE("io failure exits with the io code") {
  const fs::path dir = temp_dir();
  const fs::path cfg = dir / "osc_io.cfg";
  write_file(cfg, "scenario = q_oscillator\nlevels = 4\nsteps = 5\nt_end = 0.5\n");
  CHECK(run_cli("run " + cfg.string() + " -o /nonexistent_dir_qheis/out.csv") == 4);
}

TEST_CASE("sweep skips invalid points and honors the list") {
  const fs::path dir = temp_dir();
  const fs::path cfg = dir / "sweep.cfg";
  write_file(cfg, "scenario = free_particle\nq = 1.5\nhalf_width = 4\n"
                  "t_end = 0.5\nsteps = 20\n");
  const fs::path out = dir / "sweep.csv";
  REQUIRE(run_cli("sweep " + cfg.string() + " --q 0.9,1.0,1.1 -o " + out.string()) ==
          0);
  const std::string body = read_file(out);
  CHECK(body.find("skipped") != std::string::npos);
  CHECK(body.find("# q = 1.1000000000000001e+00") != std::string::npos);

  CHECK(run_cli("sweep " + cfg.string() + " --q , -o " + out.string()) == 2);
}

TEST_CASE("output directory env override applies to relative paths") {
  const fs::path dir = temp_dir() / "envout";
  fs::create_directories(dir);
  const fs::path cfg = temp_dir() / "env.cfg";
  write_file(cfg, "scenario = spin_precession\nt_end = 0.5\nsteps = 10\n"
                  "output = env_rel.csv\n");
  const std::string cmd = std::string("QHEIS_OUT_DIR=") + dir.string() + " " +
                          QHEIS_CLI_PATH + " run " + cfg.string() +
                          " >/dev/null 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(fs::exists(dir / "env_rel.csv"));
}

TEST_CASE("verify-identities prints the convention table") {
  const fs::path dir = temp_dir();
  const fs::path out = dir / "identities.txt";
  const std::string cmd = std::string(QHEIS_CLI_PATH) + " verify-identities > " +
                          out.string() + " 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  const std::string body = read_file(out);
  CHECK(body.find("plain") != std::string::npos);
  CHECK(body.find("one_q") != std::string::npos);
  CHECK(body.find("symmetric") != std::string::npos);
  CHECK(body.find("rate match") != std::string::npos);
}
