#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qheis/qnum.hpp"

using namespace qheis;

TEST_CASE("basic_number_paper known values") {
  CHECK(basic_number_paper(1, 2.0) == doctest::Approx(1.0));
  CHECK(basic_number_paper(0, 3.0) == doctest::Approx(0.0));
  // (16 - 1) / (4 - 1) = 5; cross-check as the power sum q^0 + q^2.
  CHECK(basic_number_paper(2, 2.0) == doctest::Approx(5.0));
  CHECK(basic_number_paper(2, 2.0) == doctest::Approx(1.0 + 4.0));
}

TEST_CASE("basic_number_osc known values") {
  CHECK(basic_number_osc(1, 5.0) == doctest::Approx(1.0));
  // nested recursion 1 + q(1 + q*1) at q = 2
  CHECK(basic_number_osc(3, 2.0) == doctest::Approx(7.0));
  CHECK(basic_number_osc(4, 1.0) == doctest::Approx(4.0));
}

TEST_CASE("basic number domain errors") {
  CHECK_THROWS_AS(basic_number_paper(2, 0.0), std::domain_error);
  CHECK_THROWS_AS(basic_number_paper(2, -1.0), std::domain_error);
  CHECK_THROWS_AS(basic_number_osc(2, -0.5), std::domain_error);
  CHECK_THROWS_AS(basic_number_paper(-1, 2.0), std::domain_error);
  CHECK_THROWS_AS(basic_number_osc(-3, 2.0), std::domain_error);
}

TEST_CASE("q_frequency_osc values and errors") {
  CHECK(q_frequency_osc(1.0, 1.0) == 1.0);  // exact at q = 1
  // 2 * 5 / (2 * 4): [2] at q=2 is (16-1)/3 = 5
  CHECK(q_frequency_osc(2.0, 2.0) == doctest::Approx(1.25));
  CHECK_THROWS_AS(q_frequency_osc(0.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(q_frequency_osc(-1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(q_frequency_osc(1.0, 0.0), std::domain_error);
}

TEST_CASE("q_frequency_osc approaches omega monotonically from below") {
  const double w1 = q_frequency_osc(1.0, 1.1);
  const double w2 = q_frequency_osc(1.0, 1.01);
  const double w3 = q_frequency_osc(1.0, 1.001);
  CHECK(w1 < w2);
  CHECK(w2 < w3);
  CHECK(w3 < 1.0);
  CHECK(std::abs(w3 - 1.0) < 1e-2);
}

TEST_CASE("recursion invariants over a q grid") {
  for (double q : {0.5, 0.9, 1.000001, 1.5, 2.0}) {
    for (int n = 0; n < 10; ++n) {
      CHECK(basic_number_paper(n + 1, q) ==
            doctest::Approx(1.0 + q * q * basic_number_paper(n, q)));
      CHECK(basic_number_osc(n + 1, q) ==
            doctest::Approx(1.0 + q * basic_number_osc(n, q)));
    }
  }
}

TEST_CASE("classical limit within 1e-2") {
  for (double q : {1.0 - 1e-3, 1.0 + 1e-3, 1.0 - 1e-6, 1.0 + 1e-6}) {
    for (int n = 1; n <= 8; ++n) {
      CHECK(std::abs(basic_number_paper(n, q) / n - 1.0) <= 1e-2);
      CHECK(std::abs(basic_number_osc(n, q) / n - 1.0) <= 1e-2);
    }
  }
}

TEST_CASE("QParams validation") {
  CHECK_THROWS_AS(QParams(0.0), std::domain_error);
  CHECK_THROWS_AS(QParams(-2.0), std::domain_error);
  CHECK_THROWS_AS(QParams(1.0, 1.0, 0.0), std::domain_error);
  const QParams p(1.3);
  CHECK(p.hbar == 1.0);
  CHECK(p.limit_tol == 1e-12);
}
