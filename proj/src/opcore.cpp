#include "qheis/opcore.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qheis {

namespace {
void require_same_dim(const Operator& a, const Operator& b, const char* where) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << where << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw std::invalid_argument(os.str());
  }
}
}  // namespace

Operator::Operator(Matrix entries, std::string name)
    : m(std::move(entries)), label(std::move(name)) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("Operator: matrix must be square");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("Operator: entries must be finite");
  }
}

Operator Operator::identity(Eigen::Index n, std::string name) {
  return Operator(Matrix::Identity(n, n), std::move(name));
}

Operator Operator::zero(Eigen::Index n, std::string name) {
  return Operator(Matrix::Zero(n, n), std::move(name));
}

BracketSpec BracketSpec::symmetric(double q) {
  const double r = std::sqrt(q);
  return {Cplx(r, 0.0), Cplx(1.0 / r, 0.0)};
}

std::string BracketSpec::describe() const {
  std::ostringstream os;
  os << "[A,B] = (" << alpha.real();
  if (alpha.imag() != 0.0) os << (alpha.imag() > 0 ? "+" : "") << alpha.imag() << "i";
  os << ")AB - (" << beta.real();
  if (beta.imag() != 0.0) os << (beta.imag() > 0 ? "+" : "") << beta.imag() << "i";
  os << ")BA";
  return os.str();
}

Operator bracket(const Operator& a, const Operator& b, const BracketSpec& spec) {
  require_same_dim(a, b, "bracket");
  return Operator(spec.alpha * (a.m * b.m) - spec.beta * (b.m * a.m));
}

Operator adjoint(const Operator& a) {
  return Operator(a.m.adjoint(), a.label.empty() ? std::string{} : a.label + "^+");
}

Operator matrix_exp(const Operator& a, double tol) {
  const Eigen::Index n = a.dim();
  // 1-norm drives the scaling exponent.
  const double norm1 = a.m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  }
  const double scale = std::ldexp(1.0, -squarings);

  Matrix b = a.m * scale;
  Matrix term = Matrix::Identity(n, n);
  Matrix sum = term;
  // Scaled norm <= 0.5, so the series terms decay at least geometrically.
  for (int k = 1; k <= 64; ++k) {
    term = (term * b) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < tol * 0.125) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return Operator(std::move(sum));
}

Vector vec_stack(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unstack(const Vector& v, Eigen::Index dim) {
  if (v.size() != dim * dim) {
    throw std::invalid_argument("unstack: vector length does not match dim^2");
  }
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Superoperator build_liouvillian(const Operator& h, const BracketSpec& spec, double q) {
  const Eigen::Index n = h.dim();
  const Matrix qh = q * h.m;
  const Matrix id = Matrix::Identity(n, n);
  Superoperator s;
  s.op_dim = n;
  // vec(qH F) = (I (x) qH) vec F, vec(F qH) = (qH^T (x) I) vec F.
  s.m = spec.alpha * kron(id, qh) - spec.beta * kron(qh.transpose(), id);
  return s;
}

Vector Superoperator::apply(const Vector& v) const {
  if (v.size() != m.cols()) {
    throw std::invalid_argument(
        "Superoperator::apply: vector length does not match superoperator");
  }
  return m * v;
}

Cplx expectation(const Vector& state, const Operator& a) {
  if (state.size() != a.dim()) {
    throw std::invalid_argument("expectation: state dimension mismatch");
  }
  const double nrm2 = state.squaredNorm();
  if (nrm2 <= 0.0) {
    throw std::invalid_argument("expectation: zero state vector");
  }
  const Cplx num = state.dot(a.m * state);  // Eigen's dot conjugates the left side
  return num / nrm2;
}

}  // namespace qheis
