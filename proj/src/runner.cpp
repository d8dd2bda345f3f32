#include "qheis/runner.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "qheis/qnum.hpp"

namespace qheis {

namespace {

const Cplx kI{0.0, 1.0};

std::vector<std::string> split_spec(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) out.push_back(item);
  return out;
}

Vector make_state(const RunConfig& cfg, Eigen::Index dim) {
  const auto parts = split_spec(cfg.state_spec);
  if (parts[0] == "uniform") {
    return Vector::Constant(dim, Cplx{1.0, 0.0}) / std::sqrt(double(dim));
  }
  if (parts[0] == "basis") {
    const long k = std::stol(parts[1]);
    if (k < 0 || k >= dim) {
      throw ConfigError("state basis index " + std::to_string(k) +
                        " out of range for dimension " + std::to_string(dim));
    }
    Vector v = Vector::Zero(dim);
    v(k) = 1.0;
    return v;
  }
  // coherent-like seed: psi_n = alpha^n / sqrt(n!), normalized
  std::size_t comma = parts[1].find(',');
  const double re = std::stod(parts[1].substr(0, comma));
  const double im = comma == std::string::npos
                        ? 0.0
                        : std::stod(parts[1].substr(comma + 1));
  const Cplx alpha{re, im};
  Vector v(dim);
  Cplx amp{1.0, 0.0};
  for (Eigen::Index n = 0; n < dim; ++n) {
    if (n > 0) amp *= alpha / std::sqrt(double(n));
    v(n) = amp;
  }
  v.normalize();
  return v;
}

struct EngineSeries {
  std::string name;
  std::vector<Matrix> observables;
};

struct Row {
  std::vector<double> cells;
};

void write_csv(std::ostream& out, const RunConfig& cfg,
               const std::vector<std::string>& columns,
               const std::vector<Row>& rows) {
  out << echo_config(cfg);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out << (c ? "," : "") << columns[c];
  }
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.cells.size(); ++c) {
      out << (c ? "," : "") << format_double(row.cells[c]);
    }
    out << "\n";
  }
}

double track_max(RunOutcome& outcome, double v) {
  if (v > outcome.max_pair_deviation) outcome.max_pair_deviation = v;
  return v;
}

RunOutcome run_matrix_scenario(const RunConfig& cfg, std::ostream& out) {
  const Scenario& sc = cfg.scenario;
  RunOutcome outcome;

  Matrix interior;
  Operator b0, hamiltonian;
  double q_omega_q = 0.0;
  const bool oscillator = sc.kind == ScenarioKind::q_oscillator;

  FockRep fock;
  LatticeRep lattice;
  double x_scale = 0.0, p_scale = 0.0;
  if (oscillator) {
    fock = make_fock(sc.fock_levels, sc.q, sc.omega, sc.hbar);
    interior = fock.interior;
    b0 = fock.a;
    hamiltonian = fock.hamiltonian;
    q_omega_q = sc.q * fock.omega_q;
    x_scale = std::sqrt(sc.hbar / (2.0 * sc.mass * fock.omega_q));
    p_scale = std::sqrt(sc.mass * fock.omega_q * sc.hbar / 2.0);
  } else {
    lattice = make_lattice(sc.lattice_half_width, sc.q, sc.p0, sc.hbar);
    interior = lattice.interior;
    b0 = cfg.observable == "p" ? lattice.p : lattice.x;
    hamiltonian = Operator(lattice.p.m * lattice.p.m / (2.0 * sc.mass), "H");
  }

  const auto times = sc.grid.times();
  const Vector state = make_state(cfg, b0.dim());
  const BracketSpec spec = sc.bracket_spec();

  // The oscillator engines evolve the lowering operator and derive x and p
  // from it, mirroring the closed-form construction.
  auto derive = [&](const Matrix& a_t) -> Matrix {
    if (!oscillator || cfg.observable == "a") return a_t;
    const Matrix a_dag_t = a_t.adjoint();
    if (cfg.observable == "x") return x_scale * (a_t + a_dag_t);
    return kI * p_scale * (a_t - a_dag_t);
  };

  std::vector<EngineSeries> series;
  for (const auto& engine : cfg.engines) {
    EngineSeries s;
    s.name = engine;
    s.observables.reserve(times.size());
    if (engine == "closed") {
      for (double t : times) {
        if (oscillator) {
          const auto closed = closed_oscillator(fock, t, sc.mass, sc.paper_mode);
          if (cfg.observable == "a") {
            s.observables.push_back(closed.a_t.m);
          } else if (cfg.observable == "x") {
            s.observables.push_back(closed.x_t.m);
          } else {
            s.observables.push_back(closed.p_t.m);
          }
        } else {
          s.observables.push_back(cfg.observable == "p"
                                      ? closed_free_particle_p(lattice, t).m
                                      : closed_free_particle_x(lattice, sc.mass, t).m);
        }
      }
    } else if (engine == "ode") {
      auto res = evolve_ode(b0, hamiltonian, spec, sc.q, sc.grid, sc.hbar);
      for (const auto& m : res.observables) s.observables.push_back(derive(m));
    } else {
      auto res = evolve_liouville(b0, hamiltonian, spec, sc.q, sc.grid, sc.hbar);
      for (const auto& m : res.observables) s.observables.push_back(derive(m));
    }
    series.push_back(std::move(s));
  }

  std::vector<std::string> columns{"t"};
  for (const auto& s : series) {
    columns.push_back(s.name + "_re");
    columns.push_back(s.name + "_im");
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (std::size_t j = i + 1; j < series.size(); ++j) {
      columns.push_back("dev_" + series[i].name + "_" + series[j].name);
    }
  }
  if (oscillator) columns.push_back("q_omega_q");

  std::vector<Row> rows;
  rows.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    Row row;
    row.cells.push_back(times[k]);
    for (const auto& s : series) {
      const Cplx e = expectation(state, Operator(s.observables[k]));
      row.cells.push_back(e.real());
      row.cells.push_back(e.imag());
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
      for (std::size_t j = i + 1; j < series.size(); ++j) {
        const double d =
            ((series[i].observables[k] - series[j].observables[k]) * interior).norm();
        row.cells.push_back(track_max(outcome, d));
      }
    }
    if (oscillator) row.cells.push_back(q_omega_q);
    rows.push_back(std::move(row));
  }

  write_csv(out, cfg, columns, rows);
  return outcome;
}

RunOutcome run_spin_scenario(const RunConfig& cfg, std::ostream& out) {
  const Scenario& sc = cfg.scenario;
  RunOutcome outcome;
  const double w = spin_omega_q(sc.b_field, sc.q, sc.lambda, sc.electron_mass,
                                sc.light_speed, sc.charge_factor);
  const auto times = sc.grid.times();

  std::vector<std::pair<std::string, std::vector<Eigen::Vector3d>>> series;
  for (const auto& engine : cfg.engines) {
    std::vector<Eigen::Vector3d> v;
    if (engine == "closed") {
      v.reserve(times.size());
      for (double t : times) v.push_back(closed_spin(sc.spin0, w, t, sc.paper_mode));
    } else if (engine == "ode") {
      v = spin_rk4(sc.spin0, w, sc.grid);
    } else {
      v = spin_exp(sc.spin0, w, sc.grid);
    }
    series.emplace_back(engine, std::move(v));
  }

  std::vector<std::string> columns{"t"};
  for (const auto& [name, _] : series) {
    columns.push_back(name + "_sx");
    columns.push_back(name + "_sy");
    columns.push_back(name + "_sz");
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (std::size_t j = i + 1; j < series.size(); ++j) {
      columns.push_back("dev_" + series[i].first + "_" + series[j].first);
    }
  }

  std::vector<Row> rows;
  rows.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    Row row;
    row.cells.push_back(times[k]);
    for (const auto& [_, v] : series) {
      row.cells.push_back(v[k].x());
      row.cells.push_back(v[k].y());
      row.cells.push_back(v[k].z());
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
      for (std::size_t j = i + 1; j < series.size(); ++j) {
        row.cells.push_back(
            track_max(outcome, (series[i].second[k] - series[j].second[k]).norm()));
      }
    }
    rows.push_back(std::move(row));
  }

  write_csv(out, cfg, columns, rows);
  return outcome;
}

RunOutcome run_poly_scenario(const RunConfig& cfg, std::ostream& out) {
  const Scenario& sc = cfg.scenario;
  RunOutcome outcome;
  const auto times = sc.grid.times();

  std::vector<AlphaProfile> alphas;
  const Cplx a10 = sc.alpha10;
  const Cplx a01 = sc.alpha01;
  if (a10 != Cplx{0.0, 0.0}) alphas.push_back({1, 0, [a10](double) { return a10; }});
  if (a01 != Cplx{0.0, 0.0}) alphas.push_back({0, 1, [a01](double) { return a01; }});

  const std::vector<std::string> columns{
      "t",           "exp_x_re",      "exp_x_im", "first_order_x_re",
      "first_order_x_im", "gap_x",    "exp_y_re", "exp_y_im",
      "first_order_y_re", "first_order_y_im", "gap_y"};

  std::vector<Row> rows;
  rows.reserve(times.size());
  for (double t : times) {
    PolyDynamicsParams params;
    params.q = sc.q;
    params.hbar = sc.hbar;
    params.lambda = sc.lambda;
    params.b = sc.coeff_b;
    params.c = sc.coeff_c;
    params.t = t;
    params.quad_steps = sc.quad_steps;
    const auto rep = poly_coeff_evolution(alphas, params);
    Row row;
    row.cells = {t,
                 rep.channel_x.exp_factor.real(),
                 rep.channel_x.exp_factor.imag(),
                 rep.channel_x.first_order_factor.real(),
                 rep.channel_x.first_order_factor.imag(),
                 track_max(outcome, rep.channel_x.exp_vs_first_order),
                 rep.channel_y.exp_factor.real(),
                 rep.channel_y.exp_factor.imag(),
                 rep.channel_y.first_order_factor.real(),
                 rep.channel_y.first_order_factor.imag(),
                 track_max(outcome, rep.channel_y.exp_vs_first_order)};
    rows.push_back(std::move(row));
  }

  write_csv(out, cfg, columns, rows);
  return outcome;
}

}  // namespace

RunOutcome run_to_csv(const RunConfig& cfg, std::ostream& out) {
  RunOutcome outcome;
  switch (cfg.scenario.kind) {
    case ScenarioKind::free_particle:
    case ScenarioKind::q_oscillator:
      outcome = run_matrix_scenario(cfg, out);
      break;
    case ScenarioKind::spin_precession:
      outcome = run_spin_scenario(cfg, out);
      break;
    case ScenarioKind::poly_dynamics:
      outcome = run_poly_scenario(cfg, out);
      break;
  }
  if (cfg.max_deviation && outcome.max_pair_deviation > *cfg.max_deviation) {
    outcome.tolerance_breached = true;
  }
  if (!out) throw std::runtime_error("run_to_csv: output stream failure");
  return outcome;
}

RunOutcome sweep_to_csv(const RunConfig& cfg, const std::vector<double>& q_values,
                        std::ostream& out) {
  if (q_values.empty()) throw ConfigError("sweep: empty q list");
  RunOutcome outcome;
  bool first = true;
  for (double q : q_values) {
    if (!first) out << "\n";
    first = false;
    RunConfig point = cfg;
    point.scenario.q = q;
    try {
      point.scenario.validate();
    } catch (const std::invalid_argument& e) {
      out << "# warning = q " << format_double(q) << " skipped: " << e.what()
          << "\n";
      continue;
    }
    const RunOutcome one = run_to_csv(point, out);
    outcome.max_pair_deviation =
        std::max(outcome.max_pair_deviation, one.max_pair_deviation);
    outcome.tolerance_breached = outcome.tolerance_breached || one.tolerance_breached;
  }
  return outcome;
}

}  // namespace qheis
