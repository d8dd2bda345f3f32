#include "qheis/qnum.hpp"

#include <cmath>
#include <string>

namespace qheis {

namespace {
constexpr double kLimitTol = 1e-12;

void require_positive_q(double q, const char* where) {
  if (!(q > 0.0)) {
    throw std::domain_error(std::string(where) + ": q must be positive, got " +
                            std::to_string(q));
  }
}

void require_nonnegative_n(int n, const char* where) {
  if (n < 0) {
    throw std::domain_error(std::string(where) + ": n must be >= 0, got " +
                            std::to_string(n));
  }
}
}  // namespace

QParams::QParams(double q_, double hbar_, double limit_tol_)
    : q(q_), hbar(hbar_), limit_tol(limit_tol_) {
  require_positive_q(q, "QParams");
  if (!(limit_tol > 0.0)) {
    throw std::domain_error("QParams: limit_tol must be positive");
  }
}

double basic_number_paper(int n, double q) {
  require_nonnegative_n(n, "basic_number_paper");
  require_positive_q(q, "basic_number_paper");
  if (std::abs(q - 1.0) < kLimitTol) return static_cast<double>(n);
  return (std::pow(q, 2 * n) - 1.0) / (q * q - 1.0);
}

double basic_number_osc(int n, double q) {
  require_nonnegative_n(n, "basic_number_osc");
  require_positive_q(q, "basic_number_osc");
  if (std::abs(q - 1.0) < kLimitTol) return static_cast<double>(n);
  return (std::pow(q, n) - 1.0) / (q - 1.0);
}

double q_frequency_osc(double omega, double q) {
  require_positive_q(q, "q_frequency_osc");
  if (!(omega > 0.0)) {
    throw std::domain_error("q_frequency_osc: omega must be positive, got " +
                            std::to_string(omega));
  }
  if (std::abs(q - 1.0) < kLimitTol) return omega;
  return omega * basic_number_paper(2, q) / (2.0 * q * q);
}

}  // namespace qheis
