#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qheis/opcore.hpp"

using namespace qheis;

namespace {

const Cplx I{0.0, 1.0};

Operator pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return Operator(m, "sx");
}

Operator pauli_y() {
  Matrix m(2, 2);
  m << 0, -I, I, 0;
  return Operator(m, "sy");
}

Operator pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return Operator(m, "sz");
}

Matrix random_matrix(std::mt19937& rng, int dim, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Cplx{u(rng), u(rng)} * scale;
  return m;
}

}  // namespace

TEST_CASE("Operator construction validates shape and finiteness") {
  CHECK_THROWS_AS(Operator(Matrix::Zero(2, 3)), std::invalid_argument);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Operator{bad}, std::invalid_argument);
  Matrix nan = Matrix::Zero(2, 2);
  nan(1, 1) = Cplx(std::nan(""), 0.0);
  CHECK_THROWS_AS(Operator{nan}, std::invalid_argument);
}

TEST_CASE("bracket examples") {
  std::mt19937 rng(42u);
  const Operator any{random_matrix(rng, 3)};
  const auto plain = BracketSpec::commutator();

  CHECK(bracket(Operator::identity(3), any, plain).m.norm() == doctest::Approx(0.0));

  // [sx, sy] = 2 i sz, by hand
  const Matrix got = bracket(pauli_x(), pauli_y(), plain).m;
  const Matrix want = 2.0 * I * pauli_z().m;
  CHECK((got - want).norm() < 1e-14);

  // [A, A]_(1,q) = (1 - q) A^2
  const double q = 1.7;
  const Matrix self = bracket(any, any, BracketSpec::q_commutator(q)).m;
  CHECK((self - (1.0 - q) * (any.m * any.m)).norm() < 1e-12);

  CHECK_THROWS_AS(bracket(Operator::identity(2), Operator::identity(3), plain),
                  std::invalid_argument);
}

TEST_CASE("adjoint examples") {
  std::mt19937 rng(7u);
  const Operator a{random_matrix(rng, 4)};
  CHECK((adjoint(adjoint(a)).m - a.m).norm() == doctest::Approx(0.0));
  CHECK((adjoint(Operator::identity(3)).m - Matrix::Identity(3, 3)).norm() ==
        doctest::Approx(0.0));

  // sigma+ = (sx + i sy)/2 has adjoint sigma- with the single lower entry
  const Operator sigma_plus{0.5 * (pauli_x().m + I * pauli_y().m)};
  Matrix sigma_minus(2, 2);
  sigma_minus << 0, 0, 1, 0;
  CHECK((adjoint(sigma_plus).m - sigma_minus).norm() < 1e-15);
}

TEST_CASE("matrix_exp examples") {
  CHECK((matrix_exp(Operator::zero(4)).m - Matrix::Identity(4, 4)).norm() <
        1e-14);

  Matrix diag = Matrix::Zero(3, 3);
  diag(0, 0) = I * 0.3;
  diag(1, 1) = I * 1.9;
  diag(2, 2) = I * (-2.5);
  const Matrix e = matrix_exp(Operator(diag)).m;
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(e(k, k) - std::exp(diag(k, k))) < 1e-13);
  }
  CHECK(std::abs(e(0, 1)) == 0.0);

  // Euler identity: exp(-i pi/2 sx) = -i sx
  const Matrix rot = matrix_exp(Operator((-I * (M_PI / 2.0)) * pauli_x().m)).m;
  CHECK((rot - (-I * pauli_x().m)).norm() < 1e-12);
}

TEST_CASE("matrix_exp inverse and unitarity properties") {
  std::mt19937 rng(11u);
  for (int rep = 0; rep < 12; ++rep) {
    const int dim = 2 + rep % 5;
    const Operator a{random_matrix(rng, dim, 0.9)};
    CHECK((matrix_exp(a).m * matrix_exp(Operator(-a.m)).m - Matrix::Identity(dim, dim))
              .norm() < 1e-9);

    Matrix h = random_matrix(rng, dim);
    h = (h + h.adjoint()).eval();
    const Matrix u = matrix_exp(Operator(-I * 0.8 * h)).m;
    CHECK((u.adjoint() * u - Matrix::Identity(dim, dim)).norm() < 1e-9);
  }
}

TEST_CASE("build_liouvillian examples") {
  CHECK(build_liouvillian(Operator::zero(3), BracketSpec::commutator(), 1.0)
            .m.norm() == doctest::Approx(0.0));

  // [sz, sigma+] = 2 sigma+
  const Operator sigma_plus{0.5 * (pauli_x().m + I * pauli_y().m)};
  const Superoperator l = build_liouvillian(pauli_z(), BracketSpec::commutator(), 1.0);
  const Vector got = l.apply(vec_stack(sigma_plus.m));
  CHECK((unstack(got, 2) - 2.0 * sigma_plus.m).norm() < 1e-14);

  CHECK_THROWS_AS(l.apply(Vector::Zero(9)), std::invalid_argument);
}

TEST_CASE("build_liouvillian contract on random pairs") {
  std::mt19937 rng(99u);
  std::uniform_real_distribution<double> qdist(0.5, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    const int dim = 2 + rep % 5;
    const double q = qdist(rng);
    const Operator h{random_matrix(rng, dim)};
    const Operator f{random_matrix(rng, dim)};
    const BracketSpec spec = rep % 2 ? BracketSpec::q_commutator(q)
                                     : BracketSpec::symmetric(q);
    const Superoperator s = build_liouvillian(h, spec, q);
    const Vector lhs = s.apply(vec_stack(f.m));
    const Vector rhs = vec_stack(bracket(Operator(q * h.m), f, spec).m);
    CHECK((lhs - rhs).norm() < 1e-12);
  }
}

TEST_CASE("expectation examples") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 5.0;
  Vector e0 = Vector::Zero(2);
  e0(0) = 1.0;
  CHECK(expectation(e0, Operator(d)).real() == doctest::Approx(3.0));

  std::mt19937 rng(3u);
  Vector psi(3);
  psi << Cplx{0.2, 0.4}, Cplx{-0.7, 0.1}, Cplx{0.5, -0.3};
  CHECK(expectation(psi, Operator::identity(3)).real() == doctest::Approx(1.0));
  CHECK(std::abs(expectation(psi, Operator::identity(3)).imag()) < 1e-15);

  Vector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK(expectation(plus, pauli_x()).real() == doctest::Approx(1.0));

  CHECK_THROWS_AS(expectation(Vector::Zero(2), pauli_x()), std::invalid_argument);
  CHECK_THROWS_AS(expectation(Vector::Ones(3), pauli_x()), std::invalid_argument);
}

TEST_CASE("vectorization is column stacking") {
  Matrix m(2, 2);
  m << Cplx{1, 0}, Cplx{3, 0}, Cplx{2, 0}, Cplx{4, 0};
  const Vector v = vec_stack(m);
  CHECK(v(0).real() == 1.0);  // column 0 first
  CHECK(v(1).real() == 2.0);
  CHECK(v(2).real() == 3.0);
  CHECK(v(3).real() == 4.0);
  CHECK((unstack(v, 2) - m).norm() == doctest::Approx(0.0));
}
