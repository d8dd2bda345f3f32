#include "qheis/reps.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qheis/qnum.hpp"

namespace qheis {

namespace {
constexpr double kSingularTol = 1e-12;
const Cplx kI{0.0, 1.0};
}  // namespace

Matrix FockRep::interior_margin(int margin) const {
  if (margin < 0 || margin > dim) {
    throw std::invalid_argument("FockRep::interior_margin: bad margin");
  }
  Matrix p = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim - margin; ++n) p(n, n) = 1.0;
  return p;
}

Matrix FockRep::ladder_defect() const {
  return a.m * a_dag.m - q * (a_dag.m * a.m) - Matrix::Identity(dim, dim);
}

FockRep make_fock(int n_levels, double q, double omega, double hbar) {
  if (n_levels < 3) {
    throw std::invalid_argument("make_fock: need at least 3 levels, got " +
                                std::to_string(n_levels));
  }
  if (!(q > 0.0)) throw std::domain_error("make_fock: q must be positive");

  FockRep rep;
  rep.dim = n_levels;
  rep.q = q;
  rep.omega = omega;
  rep.omega_q = q_frequency_osc(omega, q);
  rep.hbar = hbar;

  Matrix a = Matrix::Zero(n_levels, n_levels);
  for (int n = 1; n < n_levels; ++n) {
    a(n - 1, n) = std::sqrt(basic_number_osc(n, q));
  }
  Matrix num = Matrix::Zero(n_levels, n_levels);
  for (int n = 0; n < n_levels; ++n) num(n, n) = static_cast<double>(n);

  rep.a = Operator(a, "a");
  rep.a_dag = Operator(a.adjoint(), "a^+");
  rep.number_op = Operator(num, "n");
  rep.hamiltonian = Operator(
      (hbar * rep.omega_q / 2.0) * (a * a.adjoint() + a.adjoint() * a), "H");
  rep.interior = rep.interior_margin(1);
  return rep;
}

Matrix LatticeRep::dilatation_p_defect() const {
  return lambda_op.m * p.m - q * (p.m * lambda_op.m);
}

Matrix LatticeRep::dilatation_x_defect() const {
  return lambda_op.m * x.m - (1.0 / q) * (x.m * lambda_op.m);
}

Matrix LatticeRep::heisenberg_defect() const {
  return x.m * p.m - p.m * x.m - kI * hbar * lambda_op.m;
}

Matrix LatticeRep::inverse_defect_upper() const {
  return lambda_op.m * lambda_inv.m - Matrix::Identity(dim, dim);
}

Matrix LatticeRep::inverse_defect_lower() const {
  return lambda_inv.m * lambda_op.m - Matrix::Identity(dim, dim);
}

LatticeRep make_lattice(int half_width, double q, double p0, double hbar) {
  if (half_width < 2) {
    throw std::invalid_argument("make_lattice: need half_width >= 2, got " +
                                std::to_string(half_width));
  }
  if (!(q > 0.0)) throw std::domain_error("make_lattice: q must be positive");
  if (std::abs(q - 1.0) < kSingularTol) {
    throw std::domain_error("make_lattice: singular at q = 1 (band amplitude "
                            "diverges); use q away from 1");
  }
  if (!(p0 > 0.0)) throw std::domain_error("make_lattice: p0 must be positive");

  LatticeRep rep;
  rep.half_width = half_width;
  rep.dim = 2 * half_width + 1;
  rep.q = q;
  rep.p0 = p0;
  rep.hbar = hbar;

  const int d = rep.dim;
  auto idx = [half_width](int n) { return n + half_width; };

  Matrix p = Matrix::Zero(d, d);
  Matrix lam = Matrix::Zero(d, d);
  Matrix lam_inv = Matrix::Zero(d, d);
  Matrix x = Matrix::Zero(d, d);
  for (int n = -half_width; n <= half_width; ++n) {
    p(idx(n), idx(n)) = p0 * std::pow(q, n);
    if (n > -half_width) {
      lam(idx(n - 1), idx(n)) = 1.0;
      x(idx(n - 1), idx(n)) = kI * hbar * std::pow(q, 1 - n) / (p0 * (q - 1.0));
    }
    if (n < half_width) lam_inv(idx(n + 1), idx(n)) = 1.0;
  }

  rep.p = Operator(p, "p");
  rep.lambda_op = Operator(lam, "L");
  rep.lambda_inv = Operator(lam_inv, "Linv");
  rep.x = Operator(x, "x");

  rep.interior = Matrix::Zero(d, d);
  for (int n = -half_width + 1; n <= half_width - 1; ++n) {
    rep.interior(idx(n), idx(n)) = 1.0;
  }
  return rep;
}

Eigen::Vector3d SpinRep::bracket_channel(int i, int j) const {
  if (i < 0 || i > 2 || j < 0 || j > 2) {
    throw std::invalid_argument("SpinRep::bracket_channel: axis out of range");
  }
  return {c[i][j][0], c[i][j][1], c[i][j][2]};
}

SpinRep make_spin(double lambda) {
  SpinRep rep;
  rep.lambda = lambda;
  constexpr int X = 0, Y = 1, Z = 2;
  // Listed ordered pairs; note the non-standard signs relative to an
  // all-positive cyclic table.
  rep.c[X][Y][Z] = -1.0;
  rep.c[Y][Z][X] = +1.0;
  rep.c[X][Z][Y] = -1.0;
  // Antisymmetric closure for the unlisted orderings.
  rep.c[Y][X][Z] = +1.0;
  rep.c[Z][Y][X] = -1.0;
  rep.c[Z][X][Y] = +1.0;
  return rep;
}

SpinMatrices standard_spin_half(double hbar) {
  Matrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -kI, kI, 0;
  sz << 1, 0, 0, -1;
  const double h = hbar / 2.0;
  return {Operator(h * sx, "Sx"), Operator(h * sy, "Sy"), Operator(h * sz, "Sz")};
}

}  // namespace qheis
