#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace qheis {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Dense square operator with an optional label. Construction rejects
// non-square shapes and non-finite entries.
struct Operator {
  Matrix m;
  std::string label;

  Operator() = default;
  explicit Operator(Matrix entries, std::string name = {});

  Eigen::Index dim() const { return m.rows(); }

  static Operator identity(Eigen::Index n, std::string name = "I");
  static Operator zero(Eigen::Index n, std::string name = "0");
};

// Generalized bracket [A, B]_{alpha,beta} = alpha A B - beta B A.
// (1,1) is the plain commutator, (1,q) the weighted form used for the
// ladder algebra, (q^{1/2}, q^{-1/2}) the symmetric half-power form.
struct BracketSpec {
  Cplx alpha{1.0, 0.0};
  Cplx beta{1.0, 0.0};

  static BracketSpec commutator() { return {}; }
  static BracketSpec q_commutator(double q) { return {Cplx(1.0, 0.0), Cplx(q, 0.0)}; }
  static BracketSpec symmetric(double q);

  std::string describe() const;
};

// dim^2 x dim^2 linear map acting on column-stacked operators.
struct Superoperator {
  Matrix m;
  Eigen::Index op_dim = 0;

  Vector apply(const Vector& v) const;
};

Operator bracket(const Operator& a, const Operator& b, const BracketSpec& spec);

Operator adjoint(const Operator& a);

// Scaling-and-squaring matrix exponential with a truncated-series core;
// accurate to tol in the max norm for the target dimensions (<= ~64).
Operator matrix_exp(const Operator& a, double tol = 1e-13);

// Column stacking: vec(M) concatenates the columns of M.
Vector vec_stack(const Matrix& m);
Matrix unstack(const Vector& v, Eigen::Index dim);

Matrix kron(const Matrix& a, const Matrix& b);

// Superoperator L with L vec(F) = vec(bracket(q H, F, spec)) for all F,
// under the column-stacking convention above.
Superoperator build_liouvillian(const Operator& h, const BracketSpec& spec, double q);

// <psi|A|psi> / <psi|psi>; rejects the zero state.
Cplx expectation(const Vector& state, const Operator& a);

}  // namespace qheis
