#include "qheis/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace qheis {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  }
  if (used != v.size()) {
    throw ConfigError("key '" + key + "': trailing junk in number '" + v + "'");
  }
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long out = 0;
  try {
    out = std::stol(v, &used);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  }
  if (used != v.size()) {
    throw ConfigError("key '" + key + "': trailing junk in integer '" + v + "'");
  }
  return static_cast<int>(out);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

std::vector<std::string> split(const std::string& v, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!v.empty() && v.back() == sep) out.push_back("");
  return out;
}

Cplx to_complex(const std::string& key, const std::string& v) {
  const auto parts = split(v, ',');
  if (parts.size() == 1) return {to_double(key, parts[0]), 0.0};
  if (parts.size() == 2) {
    return {to_double(key, parts[0]), to_double(key, parts[1])};
  }
  throw ConfigError("key '" + key + "': expected RE or RE,IM, got '" + v + "'");
}

Eigen::Vector3d to_vec3(const std::string& key, const std::string& v) {
  const auto parts = split(v, ',');
  if (parts.size() != 3) {
    throw ConfigError("key '" + key + "': expected X,Y,Z, got '" + v + "'");
  }
  return {to_double(key, parts[0]), to_double(key, parts[1]),
          to_double(key, parts[2])};
}

class KeyBag {
 public:
  KeyBag(std::map<std::string, std::string> kv, std::string source)
      : kv_(std::move(kv)), source_(std::move(source)) {}

  std::optional<std::string> take(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return std::nullopt;
    std::string v = it->second;
    kv_.erase(it);
    return v;
  }

  void reject_leftovers(const std::string& scenario) const {
    if (kv_.empty()) return;
    std::ostringstream os;
    os << source_ << ": unknown or inapplicable key(s) for scenario '" << scenario
       << "':";
    for (const auto& [k, _] : kv_) os << " '" << k << "'";
    throw ConfigError(os.str());
  }

 private:
  std::map<std::string, std::string> kv_;
  std::string source_;
};

const std::vector<std::string> kAllEngines = {"closed", "ode", "liouville"};

std::vector<std::string> resolve_engines(const std::string& key,
                                         const std::string& v) {
  if (v == "all") return kAllEngines;
  std::vector<std::string> out;
  for (const auto& name : split(v, ',')) {
    if (std::find(kAllEngines.begin(), kAllEngines.end(), name) ==
        kAllEngines.end()) {
      throw ConfigError("key '" + key + "': unknown engine '" + name + "'");
    }
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  }
  if (out.empty()) throw ConfigError("key '" + key + "': empty engine list");
  // canonical order
  std::vector<std::string> canon;
  for (const auto& name : kAllEngines) {
    if (std::find(out.begin(), out.end(), name) != out.end()) canon.push_back(name);
  }
  return canon;
}

void validate_state_spec(const RunConfig& cfg) {
  const auto parts = split(cfg.state_spec, ':');
  const std::string head = parts.empty() ? "" : parts[0];
  if (head == "uniform" && parts.size() == 1) return;
  if (head == "basis" && parts.size() == 2) {
    (void)to_int("state", parts[1]);
    return;
  }
  if (head == "coherent" && parts.size() == 2 &&
      cfg.scenario.kind == ScenarioKind::q_oscillator) {
    (void)to_complex("state", parts[1]);
    return;
  }
  throw ConfigError("key 'state': bad specification '" + cfg.state_spec + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

bool RunConfig::operator==(const RunConfig& o) const {
  const Scenario& a = scenario;
  const Scenario& b = o.scenario;
  return a.kind == b.kind && a.q == b.q && a.hbar == b.hbar &&
         a.grid.t_end == b.grid.t_end && a.grid.steps == b.grid.steps &&
         a.bracket_id == b.bracket_id && a.paper_mode == b.paper_mode &&
         a.mass == b.mass && a.p0 == b.p0 &&
         a.lattice_half_width == b.lattice_half_width && a.b_field == b.b_field &&
         a.electron_mass == b.electron_mass && a.light_speed == b.light_speed &&
         a.lambda == b.lambda && a.charge_factor == b.charge_factor &&
         a.spin0 == b.spin0 && a.omega == b.omega && a.fock_levels == b.fock_levels &&
         a.coeff_b == b.coeff_b && a.coeff_c == b.coeff_c && a.alpha10 == b.alpha10 &&
         a.alpha01 == b.alpha01 && a.quad_steps == b.quad_steps &&
         engines == o.engines && observable == o.observable &&
         state_spec == o.state_spec && max_deviation == o.max_deviation;
}

RunConfig parse_run_config(const std::string& text, const std::string& source) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(lineno) +
                        ": expected 'key = value', got '" + t + "'");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key");
    }
    if (!kv.emplace(key, value).second) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": duplicate key '" +
                        key + "'");
    }
  }

  KeyBag bag(std::move(kv), source);
  RunConfig cfg;

  const auto name = bag.take("scenario");
  if (!name) throw ConfigError(source + ": missing required key 'scenario'");
  const auto kind = scenario_from_name(*name);
  if (!kind) throw ConfigError(source + ": unknown scenario '" + *name + "'");
  Scenario& sc = cfg.scenario;
  sc.kind = *kind;

  if (auto v = bag.take("q")) sc.q = to_double("q", *v);
  if (auto v = bag.take("hbar")) sc.hbar = to_double("hbar", *v);
  if (auto v = bag.take("t_end")) sc.grid.t_end = to_double("t_end", *v);
  if (auto v = bag.take("steps")) sc.grid.steps = to_int("steps", *v);
  if (auto v = bag.take("paper_mode")) sc.paper_mode = to_bool("paper_mode", *v);
  if (auto v = bag.take("output")) cfg.output_path = *v;
  if (auto v = bag.take("max_deviation")) {
    cfg.max_deviation = to_double("max_deviation", *v);
  }

  const bool matrix_scenario = sc.kind == ScenarioKind::free_particle ||
                               sc.kind == ScenarioKind::q_oscillator;
  const bool has_engines = sc.kind != ScenarioKind::poly_dynamics;

  if (matrix_scenario) {
    if (auto v = bag.take("bracket")) sc.bracket_id = *v;
  }
  std::string engines_value = "all";
  if (has_engines) {
    if (auto v = bag.take("engines")) engines_value = *v;
  }

  switch (sc.kind) {
    case ScenarioKind::free_particle:
      if (auto v = bag.take("mass")) sc.mass = to_double("mass", *v);
      if (auto v = bag.take("p0")) sc.p0 = to_double("p0", *v);
      if (auto v = bag.take("half_width")) {
        sc.lattice_half_width = to_int("half_width", *v);
      }
      cfg.observable = "x";
      if (auto v = bag.take("observable")) cfg.observable = *v;
      if (cfg.observable != "x" && cfg.observable != "p") {
        throw ConfigError("key 'observable': expected x or p");
      }
      cfg.state_spec = "uniform";
      if (auto v = bag.take("state")) cfg.state_spec = *v;
      break;
    case ScenarioKind::spin_precession:
      if (auto v = bag.take("b_field")) sc.b_field = to_double("b_field", *v);
      if (auto v = bag.take("electron_mass")) {
        sc.electron_mass = to_double("electron_mass", *v);
      }
      if (auto v = bag.take("light_speed")) {
        sc.light_speed = to_double("light_speed", *v);
      }
      if (auto v = bag.take("lambda")) sc.lambda = to_double("lambda", *v);
      if (auto v = bag.take("charge_factor")) {
        sc.charge_factor = to_double("charge_factor", *v);
      }
      if (auto v = bag.take("spin0")) sc.spin0 = to_vec3("spin0", *v);
      break;
    case ScenarioKind::q_oscillator:
      if (auto v = bag.take("omega")) sc.omega = to_double("omega", *v);
      if (auto v = bag.take("mass")) sc.mass = to_double("mass", *v);
      if (auto v = bag.take("levels")) sc.fock_levels = to_int("levels", *v);
      cfg.observable = "a";
      if (auto v = bag.take("observable")) cfg.observable = *v;
      if (cfg.observable != "a" && cfg.observable != "x" && cfg.observable != "p") {
        throw ConfigError("key 'observable': expected a, x or p");
      }
      cfg.state_spec = "coherent:5.0000000000000000e-01,0.0000000000000000e+00";
      if (auto v = bag.take("state")) cfg.state_spec = *v;
      break;
    case ScenarioKind::poly_dynamics:
      if (auto v = bag.take("b")) sc.coeff_b = to_double("b", *v);
      if (auto v = bag.take("c")) sc.coeff_c = to_double("c", *v);
      if (auto v = bag.take("alpha10")) sc.alpha10 = to_complex("alpha10", *v);
      if (auto v = bag.take("alpha01")) sc.alpha01 = to_complex("alpha01", *v);
      if (auto v = bag.take("quad_steps")) sc.quad_steps = to_int("quad_steps", *v);
      if (auto v = bag.take("lambda")) sc.lambda = to_double("lambda", *v);
      break;
  }

  bag.reject_leftovers(scenario_name(sc.kind));

  if (has_engines) cfg.engines = resolve_engines("engines", engines_value);
  if (matrix_scenario) {
    sc.bracket_id = sc.resolved_bracket();
    validate_state_spec(cfg);
  }

  try {
    sc.validate();
    if (sc.kind != ScenarioKind::poly_dynamics) {
      TimeGrid check(sc.grid.t_end, sc.grid.steps);
      (void)check;
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), path);
}

std::string echo_config(const RunConfig& cfg) {
  const Scenario& sc = cfg.scenario;
  std::ostringstream os;
  auto put = [&os](const std::string& key, const std::string& value) {
    os << "# " << key << " = " << value << "\n";
  };
  auto put_d = [&put](const std::string& key, double v) { put(key, format_double(v)); };
  auto put_i = [&put](const std::string& key, int v) { put(key, std::to_string(v)); };
  auto put_c = [&put](const std::string& key, Cplx v) {
    put(key, format_double(v.real()) + "," + format_double(v.imag()));
  };

  put("scenario", scenario_name(sc.kind));
  put_d("q", sc.q);
  put_d("hbar", sc.hbar);
  put_d("t_end", sc.grid.t_end);
  put_i("steps", sc.grid.steps);
  put("paper_mode", sc.paper_mode ? "true" : "false");

  switch (sc.kind) {
    case ScenarioKind::free_particle:
      put_d("mass", sc.mass);
      put_d("p0", sc.p0);
      put_i("half_width", sc.lattice_half_width);
      break;
    case ScenarioKind::spin_precession:
      put_d("b_field", sc.b_field);
      put_d("electron_mass", sc.electron_mass);
      put_d("light_speed", sc.light_speed);
      put_d("lambda", sc.lambda);
      put_d("charge_factor", sc.charge_factor);
      put("spin0", format_double(sc.spin0.x()) + "," + format_double(sc.spin0.y()) +
                       "," + format_double(sc.spin0.z()));
      break;
    case ScenarioKind::q_oscillator:
      put_d("omega", sc.omega);
      put_d("mass", sc.mass);
      put_i("levels", sc.fock_levels);
      break;
    case ScenarioKind::poly_dynamics:
      put_d("b", sc.coeff_b);
      put_d("c", sc.coeff_c);
      put_c("alpha10", sc.alpha10);
      put_c("alpha01", sc.alpha01);
      put_i("quad_steps", sc.quad_steps);
      put_d("lambda", sc.lambda);
      break;
  }

  if (sc.kind == ScenarioKind::free_particle ||
      sc.kind == ScenarioKind::q_oscillator) {
    put("bracket", sc.resolved_bracket());
    put("observable", cfg.observable);
    put("state", cfg.state_spec);
  }
  if (sc.kind != ScenarioKind::poly_dynamics) {
    std::string joined;
    for (const auto& e : cfg.engines) {
      if (!joined.empty()) joined += ",";
      joined += e;
    }
    put("engines", joined);
  }
  if (cfg.max_deviation) put_d("max_deviation", *cfg.max_deviation);
  return os.str();
}

RunConfig reparse_echo(const std::string& echoed) {
  std::istringstream in(echoed);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.rfind("# ", 0) == 0) t = t.substr(2);
    out << t << "\n";
  }
  return parse_run_config(out.str(), "echo");
}

}  // namespace qheis
