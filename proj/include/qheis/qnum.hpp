#pragma once

#include <stdexcept>

namespace qheis {

// Deformation parameters shared across the toolkit. Natural units: hbar = 1
// unless a scenario overrides it. All formulas that are singular at q = 1
// switch to their analytic limit once |q - 1| < limit_tol.
struct QParams {
  double q = 1.0;
  double hbar = 1.0;
  double limit_tol = 1e-12;

  QParams() = default;
  QParams(double q_, double hbar_ = 1.0, double limit_tol_ = 1e-12);
};

// Basic number [n] = (q^{2n} - 1) / (q^2 - 1); returns n at q = 1.
// Satisfies [n+1] = 1 + q^2 [n].
double basic_number_paper(int n, double q);

// Basic number [n] = (q^n - 1) / (q - 1); returns n at q = 1.
// This is the variant forced by the ladder relation a a^+ - q a^+ a = 1,
// i.e. [n+1] = 1 + q [n]; it fixes the oscillator spectrum.
double basic_number_osc(int n, double q);

// Deformed oscillator frequency omega_q = omega (q^2 + 1) / (2 q^2),
// equal to omega [2] / (2 q^2) with the (q^2 - 1)-based basic number.
// Reduces to omega exactly at q = 1.
double q_frequency_osc(double omega, double q);

}  // namespace qheis
