#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qheis/qnum.hpp"
#include "qheis/qsymb.hpp"
#include "qheis/reps.hpp"

using namespace qheis;

TEST_CASE("fock ladder matches the classical ladder at q = 1") {
  const FockRep rep = make_fock(24, 1.0, 1.0);
  for (int n = 1; n < 24; ++n) {
    CHECK(rep.a.m(n - 1, n).real() == doctest::Approx(std::sqrt(double(n))));
  }
}

TEST_CASE("fock ladder entries at q = 2") {
  const FockRep rep = make_fock(4, 2.0, 1.0);
  CHECK(rep.a.m(0, 1).real() == doctest::Approx(1.0));
  CHECK(rep.a.m(1, 2).real() == doctest::Approx(std::sqrt(3.0)));
  CHECK(rep.a.m(2, 3).real() == doctest::Approx(std::sqrt(7.0)));
}

TEST_CASE("fock truncation defect is confined to the top corner") {
  for (double q : {0.5, 1.3, 2.0}) {
    const int n = 8;
    const FockRep rep = make_fock(n, q, 1.0);
    Matrix defect = rep.ladder_defect();
    CHECK(std::abs(defect(n - 1, n - 1) + basic_number_osc(n, q)) < 1e-10);
    defect(n - 1, n - 1) = 0.0;
    CHECK(defect.cwiseAbs().maxCoeff() < 1e-12);
    CHECK((rep.ladder_defect() * rep.interior).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("fock hamiltonian is hermitian with the expected diagonal") {
  const FockRep rep = make_fock(10, 1.3, 0.7);
  CHECK((rep.hamiltonian.m - rep.hamiltonian.m.adjoint()).norm() < 1e-13);
  for (int n = 0; n + 1 < 10; ++n) {
    const double want = rep.hbar * rep.omega_q / 2.0 *
                        (basic_number_osc(n + 1, 1.3) + basic_number_osc(n, 1.3));
    CHECK(rep.hamiltonian.m(n, n).real() == doctest::Approx(want));
  }
}

TEST_CASE("make_fock rejects bad arguments") {
  CHECK_THROWS_AS(make_fock(2, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_fock(8, -1.0, 1.0), std::domain_error);
}

TEST_CASE("lattice relations hold on the interior") {
  for (double q : {0.5, 0.9, 1.5, 2.0}) {
    for (int n : {4, 8, 16}) {
      const LatticeRep rep = make_lattice(n, q, 1.0);
      CHECK((rep.dilatation_p_defect() * rep.interior).cwiseAbs().maxCoeff() <
            1e-12);
      CHECK((rep.dilatation_x_defect() * rep.interior).cwiseAbs().maxCoeff() <
            1e-12);
      CHECK((rep.heisenberg_defect() * rep.interior).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((rep.inverse_defect_upper() * rep.interior).cwiseAbs().maxCoeff() <
            1e-12);
      CHECK((rep.inverse_defect_lower() * rep.interior).cwiseAbs().maxCoeff() <
            1e-12);
    }
  }
}

TEST_CASE("lattice band amplitude solves the two defining constraints") {
  // xi_n = i hbar q^{1-n} / (p0 (q-1)) is forced by x p - p x = i hbar L
  // and L x = q^{-1} x L on the geometric momentum lattice.
  const double q = 1.7, p0 = 0.3, hbar = 2.0;
  const LatticeRep rep = make_lattice(6, q, p0, hbar);
  const int half = 6;
  auto idx = [half](int n) { return n + half; };
  for (int n = -half + 1; n <= half; ++n) {
    const Cplx xi = rep.x.m(idx(n - 1), idx(n));
    CHECK(std::abs(xi - Cplx{0.0, 1.0} * hbar * std::pow(q, 1 - n) /
                            (p0 * (q - 1.0))) < 1e-12);
  }
}

TEST_CASE("make_lattice rejects the singular point q = 1") {
  CHECK_THROWS_AS(make_lattice(4, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(make_lattice(4, 1.0 + 1e-13, 1.0), std::domain_error);
  CHECK_THROWS_AS(make_lattice(1, 1.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_lattice(4, 1.5, 0.0), std::domain_error);
}

TEST_CASE("spin bracket table matches the listed channels") {
  const SpinRep spin = make_spin(0.8);
  CHECK(spin.lambda == 0.8);
  CHECK(spin.bracket_channel(0, 1) == Eigen::Vector3d(0, 0, -1));
  CHECK(spin.bracket_channel(1, 2) == Eigen::Vector3d(1, 0, 0));
  CHECK(spin.bracket_channel(0, 2) == Eigen::Vector3d(0, -1, 0));
  CHECK_THROWS_AS(spin.bracket_channel(3, 0), std::invalid_argument);
}

TEST_CASE("spin table is antisymmetric and H = c Sz commutes with Sz") {
  const SpinRep spin = make_spin(1.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(spin.bracket_channel(i, j) == (-spin.bracket_channel(j, i)).eval());
    }
  }
  // the Hamiltonian is proportional to Sz, so [Sz, H] maps through
  // bracket_channel(2, 2) = 0
  CHECK(spin.bracket_channel(2, 2) == Eigen::Vector3d(0, 0, 0));
}

TEST_CASE("spin table signs relative to the all-positive cyclic table") {
  const SpinRep spin = make_spin(1.0);
  // listed ordered pairs: (x,y) -> z, (y,z) -> x, (x,z) -> y
  const double sxy = spin.bracket_channel(0, 1).z();
  const double syz = spin.bracket_channel(1, 2).x();
  const double sxz = spin.bracket_channel(0, 2).y();
  CHECK(sxy == -1.0);  // differs from +1
  CHECK(syz == +1.0);  // agrees
  CHECK(sxz == -1.0);  // differs from +1
}

TEST_CASE("symbolic identities evaluate to zero on the lattice interior") {
  // The canonical forms from the rewriting engine, evaluated entrywise on
  // the lattice matrices, must vanish where truncation cannot interfere.
  using namespace qheis::symb;
  const double q = 1.5, hbar = 1.0;
  const LatticeRep rep = make_lattice(8, q, 1.0, hbar);
  const auto eval = [&](const QPolynomial& poly) {
    Matrix sum = Matrix::Zero(rep.dim, rep.dim);
    for (const auto& [w, coeff] : substitute_numeric(poly, q, hbar)) {
      Matrix prod = Matrix::Identity(rep.dim, rep.dim);
      for (Gen g : w) {
        switch (g) {
          case Gen::X: prod *= rep.x.m; break;
          case Gen::P: prod *= rep.p.m; break;
          case Gen::Lambda: prod *= rep.lambda_op.m; break;
          case Gen::LambdaInv: prod *= rep.lambda_inv.m; break;
          default: FAIL("unexpected generator");
        }
      }
      sum += coeff * prod;
    }
    return sum;
  };
  for (const char* identity :
       {"x*p - p*x - i*hbar*L", "L*x - q^(-1)*x*L", "L*p - q*p*L",
        "x*p^2 - p^2*x - i*hbar*(1+q)*p*L"}) {
    const QPolynomial canon = normal_order(parse(identity), pm_rules());
    // margin 3 keeps degree-3 words away from both boundaries
    Matrix proj = rep.interior;
    const int half = rep.half_width;
    for (int k = 0; k < rep.dim; ++k) {
      if (k < 3 || k >= rep.dim - 3) proj(k, k) = 0.0;
    }
    CHECK((eval(canon) * proj).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((eval(parse(identity)) * proj).cwiseAbs().maxCoeff() < 1e-10);
  }
}
