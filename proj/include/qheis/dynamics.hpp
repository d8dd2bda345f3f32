#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qheis/opcore.hpp"
#include "qheis/qsymb.hpp"
#include "qheis/reps.hpp"

namespace qheis {

// Uniform grid on [0, t_end] with `steps` integrator steps (steps + 1
// recorded points, the first being t = 0).
struct TimeGrid {
  double t_end = 1.0;
  int steps = 200;

  TimeGrid() = default;
  TimeGrid(double t_end_, int steps_);

  double dt() const { return t_end / steps; }
  std::vector<double> times() const;
};

struct EvolutionResult {
  std::string engine;
  std::string bracket;
  std::vector<double> times;
  std::vector<Matrix> observables;
  // Max Frobenius distance to a half-step re-integration (RK4 engine only).
  double error_estimate = 0.0;
};

// Fixed-step classical RK4 for dB/dt = (1/i hbar) [B, qH]_spec. The result
// holds the configured-step trajectory; a half-step rerun feeds the
// Richardson error estimate.
EvolutionResult evolve_ode(const Operator& b0, const Operator& h,
                           const BracketSpec& spec, double q, const TimeGrid& grid,
                           double hbar);

enum class LiouvilleForm {
  // Generator (1/i hbar)[., qH]_spec: integrates the same right-hand side
  // as evolve_ode, so the two engines are directly comparable.
  heisenberg,
  // Integrates df/du = q f H - q H f literally, with no 1/(i hbar) factor.
  literal_plain,
};

// Propagates vec(B0) with the exponential of the superoperator generator;
// one dense exponential of the step propagator, then matrix-vector hops.
EvolutionResult evolve_liouville(const Operator& b0, const Operator& h,
                                 const BracketSpec& spec, double q,
                                 const TimeGrid& grid, double hbar,
                                 LiouvilleForm form = LiouvilleForm::heisenberg);

// Undeformed reference: U^+ B U with U = exp(-i t H / hbar).
Operator heisenberg_transform(const Operator& b, const Operator& h, double t,
                              double hbar);

// --------------------------------------------------------------------------
// Closed forms

// x_H(t) = x + (q(q+1)/2m) p L t on a shared lattice representation;
// the momentum is conserved. The formula integrates the equation of motion
// with its right-hand side frozen at t = 0, so it is first-order exact in t.
Operator closed_free_particle_x(const LatticeRep& rep, double mass, double t);
Operator closed_free_particle_p(const LatticeRep& rep, double t);

// Precession rate B q^2 lambda / (m_e c), optionally multiplied by the
// electron charge factor.
double spin_omega_q(double b_field, double q, double lambda, double electron_mass,
                    double light_speed, double charge_factor = 1.0);

// Exact rotation of the (Sx, Sy, Sz) coefficient vector. Default mode
// solves dSx/dt = +w Sy, dSy/dt = -w Sx, dSz/dt = 0; paper mode returns the
// printed solution instead (opposite rotation sense, Sz pinned to zero).
Eigen::Vector3d closed_spin(const Eigen::Vector3d& s0, double omega_q, double t,
                            bool paper_mode = false);

std::vector<Eigen::Vector3d> spin_rk4(const Eigen::Vector3d& s0, double omega_q,
                                      const TimeGrid& grid);
std::vector<Eigen::Vector3d> spin_exp(const Eigen::Vector3d& s0, double omega_q,
                                      const TimeGrid& grid);

struct OscillatorClosed {
  Operator a_t;
  Operator a_dag_t;
  Operator x_t;
  Operator p_t;
};

// a_H(t) = a exp(-i q w_q t) and its adjoint, plus the derived position and
// momentum. Paper mode keeps the printed text: the raised solution starts
// from a(0), and x/p take the printed cosine/sine forms.
OscillatorClosed closed_oscillator(const FockRep& rep, double t, double mass = 1.0,
                                   bool paper_mode = false);

// --------------------------------------------------------------------------
// Polynomial dynamical functions for H = b x + c y

struct AlphaProfile {
  int n = 0;
  int m = 0;
  std::function<Cplx(double)> value;  // coefficient as a function of u
};

struct ChannelAudit {
  Cplx printed_derivative_coeff{};  // stated first-order rate (per unit alpha)
  Cplx series_coeff{};              // rate the general series formula assigns
  Cplx exponent{};                  // closed-form exponent via quadrature
  Cplx exp_factor{1.0, 0.0};
  Cplx first_order_factor{1.0, 0.0};
  double exp_vs_first_order = 0.0;
  double coeff_gap = 0.0;  // |printed - series|
};

struct PolyDynamicsReport {
  std::map<symb::Word, Cplx> initial_terms;
  std::map<symb::Word, Cplx> integral_terms;
  std::map<symb::Word, Cplx> evolved_terms;
  ChannelAudit channel_x;  // (n, m) = (1, 0)
  ChannelAudit channel_y;  // (n, m) = (0, 1)
};

struct PolyDynamicsParams {
  double q = 1.3;
  double hbar = 1.0;
  double lambda = 1.0;  // central scalar standing in for the dilatation symbol
  double b = 0.0;
  double c = 1.0;
  double t = 1.0;
  int quad_steps = 64;  // composite-Simpson subdivisions (even, >= 2)
};

// Evaluates the stated series solution by quadrature and audits the (1,0)
// and (0,1) exponential closed forms against their first-order expansions.
// This is an evaluator, not a solver.
PolyDynamicsReport poly_coeff_evolution(const std::vector<AlphaProfile>& alphas,
                                        const PolyDynamicsParams& params);

// --------------------------------------------------------------------------
// Scenarios

enum class ScenarioKind { free_particle, spin_precession, q_oscillator, poly_dynamics };

const char* scenario_name(ScenarioKind kind);
std::optional<ScenarioKind> scenario_from_name(const std::string& name);

struct Scenario {
  ScenarioKind kind = ScenarioKind::q_oscillator;
  double q = 1.3;
  double hbar = 1.0;
  TimeGrid grid{1.0, 200};
  std::string bracket_id;  // "plain" | "one_q" | "symmetric"; empty = default
  bool paper_mode = false;

  // free_particle
  double mass = 1.0;
  double p0 = 1.0;
  int lattice_half_width = 8;

  // spin_precession
  double b_field = 1.0;
  double electron_mass = 1.0;
  double light_speed = 1.0;
  double lambda = 1.0;
  double charge_factor = 1.0;
  Eigen::Vector3d spin0{1.0, 0.0, 0.0};

  // q_oscillator
  double omega = 1.0;
  int fock_levels = 16;

  // poly_dynamics
  double coeff_b = 0.0;
  double coeff_c = 1.0;
  Cplx alpha10{1.0, 0.0};
  Cplx alpha01{0.0, 0.0};
  int quad_steps = 64;

  std::string resolved_bracket() const;
  BracketSpec bracket_spec() const;
  void validate() const;
};

struct PairDeviation {
  std::string first_engine;
  std::string second_engine;
  double max_deviation = 0.0;
  double at_time = 0.0;
};

struct CrossValidationReport {
  std::string scenario;
  std::string bracket;
  bool paper_mode = false;
  std::vector<PairDeviation> deviations;
  std::vector<std::string> notes;  // truncation defects, error estimates
};

// Runs every engine pair the scenario supports and reports deviations as
// data; nothing here throws on a large deviation.
CrossValidationReport cross_validate(const Scenario& sc);

}  // namespace qheis
