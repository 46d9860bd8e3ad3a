#include "qwl/numerics.hpp"

#include "qwl/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace qwl {

namespace {

void require_square(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::DimMismatch, std::string(what) + ": matrix is " + std::to_string(a.rows()) +
                                            "x" + std::to_string(a.cols()) + ", expected square");
  }
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimMismatch, std::string(what) + ": shapes differ");
  }
}

}  // namespace

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NotSkewHermitian: return "NotSkewHermitian";
    case ErrorKind::NonNormalInput: return "NonNormalInput";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::NotBijective: return "NotBijective";
    case ErrorKind::NotAnEdge: return "NotAnEdge";
    case ErrorKind::EdgeCollision: return "EdgeCollision";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::NotLaplacian: return "NotLaplacian";
    case ErrorKind::Unstable: return "Unstable";
    case ErrorKind::DomainExceeded: return "DomainExceeded";
    case ErrorKind::NotScalarAtZero: return "NotScalarAtZero";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorKind::ToleranceViolation: return "ToleranceViolation";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

double hermitian_residual(const CMatrix& a) {
  if (a.rows() != a.cols()) return INFINITY;
  return (a - a.adjoint()).norm();
}

double skew_hermitian_residual(const CMatrix& a) {
  if (a.rows() != a.cols()) return INFINITY;
  return (a + a.adjoint()).norm();
}

double unitary_residual(const CMatrix& a) {
  if (a.rows() != a.cols()) return INFINITY;
  return (a.adjoint() * a - identity(a.rows())).norm();
}

bool is_hermitian(const CMatrix& a, double tol) { return hermitian_residual(a) <= tol; }
bool is_skew_hermitian(const CMatrix& a, double tol) { return skew_hermitian_residual(a) <= tol; }
bool is_unitary(const CMatrix& a, double tol) { return unitary_residual(a) <= tol; }

bool is_permutation(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  // Round to the nearest 0/1 pattern and measure the distance to it.
  CMatrix pattern = CMatrix::Zero(a.rows(), a.cols());
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    Eigen::Index best = 0;
    a.col(c).cwiseAbs().maxCoeff(&best);
    pattern(best, c) = 1.0;
  }
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    if (pattern.row(r).sum() != Complex(1.0)) return false;
  }
  return (a - pattern).norm() <= tol;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  require_square(a, "commutator");
  require_same_shape(a, b, "commutator");
  return a * b - b * a;
}

double hs_inner(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "hs_inner");
  // Re tr(a^dagger b) = sum over entries of Re(conj(a_ij) b_ij).
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

HermitianEigen hermitian_eig(const CMatrix& h) {
  require_square(h, "hermitian_eig");
  const double residual = hermitian_residual(h);
  if (residual > kHermitianTol) {
    throw Error(ErrorKind::NonHermitian, "hermitian_eig: residual " + std::to_string(residual));
  }
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ToleranceViolation, "hermitian_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix expm_hermitian(const CMatrix& h, double s) {
  const auto [values, vectors] = hermitian_eig(h);
  // Zero time is exactly the identity; V V^dagger would carry roundoff.
  if (s == 0.0) return identity(h.rows());
  CVector phases(values.size());
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    phases(k) = std::exp(Complex(0.0, -s * values(k)));
  }
  return vectors * phases.asDiagonal() * vectors.adjoint();
}

double distance(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "distance");
  return (a - b).norm();
}

}  // namespace qwl
