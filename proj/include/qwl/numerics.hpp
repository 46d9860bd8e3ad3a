#pragma once

// Dense complex linear algebra shared by every other module. Operators are
// plain Eigen matrices; the functions here add the checks and the
// Hilbert-Schmidt geometry the walk and Lie algebra code relies on.

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace qwl {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;

CMatrix identity(Eigen::Index n);

// Predicates compare the Frobenius norm of the defining residual with tol.
bool is_hermitian(const CMatrix& a, double tol = kHermitianTol);
bool is_skew_hermitian(const CMatrix& a, double tol = kHermitianTol);
bool is_unitary(const CMatrix& a, double tol = kHermitianTol);
bool is_permutation(const CMatrix& a, double tol = kHermitianTol);

double hermitian_residual(const CMatrix& a);
double skew_hermitian_residual(const CMatrix& a);
double unitary_residual(const CMatrix& a);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// ab - ba. Throws DimMismatch unless both are square of equal size.
CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// Re tr(a^dagger b), the real inner product on skew-Hermitian matrices.
double hs_inner(const CMatrix& a, const CMatrix& b);

struct HermitianEigen {
  RVector values;   // ascending
  CMatrix vectors;  // columns, unitary
};

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized after
/// the Hermiticity check so roundoff never reaches the solver.
HermitianEigen hermitian_eig(const CMatrix& h);

/// exp(-i s h) for Hermitian h, from the eigendecomposition.
CMatrix expm_hermitian(const CMatrix& h, double s);

/// Frobenius distance, for tests and reports.
double distance(const CMatrix& a, const CMatrix& b);

}  // namespace qwl
