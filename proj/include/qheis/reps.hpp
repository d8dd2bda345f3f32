#pragma once

#include <Eigen/Dense>

#include "qheis/opcore.hpp"

namespace qheis {

// Truncated ladder-operator representation on the number basis |0..N-1>,
// built from the q-recursion [n+1] = 1 + q [n]. The defining relation
// a a^+ - q a^+ a = 1 holds exactly off the top state; the truncation
// defect sits in the (N-1, N-1) entry.
struct FockRep {
  int dim = 0;
  double q = 1.0;
  double omega = 1.0;
  double omega_q = 1.0;
  double hbar = 1.0;

  Operator a;
  Operator a_dag;
  Operator number_op;      // diag(0..N-1)
  Operator hamiltonian;    // (hbar omega_q / 2)(a a^+ + a^+ a)

  // Projector onto span{|0..N-2>}, where the defining relation is exact.
  Matrix interior;
  // Projector excluding the top `margin` states; words of degree d need
  // margin d to stay clear of the truncation boundary.
  Matrix interior_margin(int margin) const;

  Matrix ladder_defect() const;  // a a^+ - q a^+ a - 1
};

FockRep make_fock(int n_levels, double q, double omega, double hbar = 1.0);

// Geometric momentum-lattice representation of the dilatation algebra on
// basis |n>, n = -N..N: p |n> = p0 q^n |n>, the dilatation operator shifts
// |n> -> |n-1>, and x is the unique one-band operator satisfying
// x p - p x = i hbar L and L x = q^{-1} x L, with band amplitude
// xi_n = i hbar q^{1-n} / (p0 (q - 1)). Singular at q = 1.
struct LatticeRep {
  int half_width = 0;
  int dim = 0;  // 2 half_width + 1
  double q = 2.0;
  double p0 = 1.0;
  double hbar = 1.0;

  Operator x;
  Operator p;
  Operator lambda_op;
  Operator lambda_inv;

  // Projector excluding both boundary basis states |-N> and |N>.
  Matrix interior;

  Matrix dilatation_p_defect() const;   // L p - q p L
  Matrix dilatation_x_defect() const;   // L x - q^{-1} x L
  Matrix heisenberg_defect() const;     // x p - p x - i hbar L
  Matrix inverse_defect_upper() const;  // L Linv - 1
  Matrix inverse_defect_lower() const;  // Linv L - 1
};

LatticeRep make_lattice(int half_width, double q, double p0, double hbar = 1.0);

// Spin sector: no rewriting, only the bracket table
//   [S_i, S_j]_q = i hbar lambda sum_k c[i][j][k] S_k
// with the dilatation operator reduced to the central scalar lambda.
// The table is antisymmetrized over argument order.
struct SpinRep {
  double lambda = 1.0;
  double c[3][3][3] = {};  // indices: first, second, output channel

  // Coefficient 3-vector v with [S_i, S_j]_q = i hbar lambda (v . S).
  Eigen::Vector3d bracket_channel(int i, int j) const;
};

SpinRep make_spin(double lambda);

// Standard spin-1/2 matrices S_k = (hbar/2) sigma_k, used as the
// undeformed reference in the q -> 1 cross-checks.
struct SpinMatrices {
  Operator sx, sy, sz;
};
SpinMatrices standard_spin_half(double hbar = 1.0);

}  // namespace qheis
