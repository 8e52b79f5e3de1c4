#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace hcf {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// (M + M^dagger) / 2
CMatrix hermitize(const CMatrix& m);

/// Inverse of a Hermitian matrix computed from its eigendecomposition.
/// Eigenvalues are reported so callers can decide on positivity; the
/// inverse is only meaningful when no eigenvalue is zero.
struct HermitianInverse {
  CMatrix inverse;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  /// max|lambda| / min|lambda|, +inf when singular.
  double condition = 0.0;
};

HermitianInverse hermitian_inverse(const CMatrix& m);

double min_hermitian_eigenvalue(const CMatrix& m);
bool is_positive_definite(const CMatrix& m);

/// Determinant of a Hermitian matrix (real, product of eigenvalues).
double hermitian_det(const CMatrix& m);

double max_abs(const CMatrix& m);

/// Largest sine of the principal angles between the column spans of two
/// matrices with orthonormal columns (0 when the spans coincide).
double max_principal_angle_sine(const CMatrix& q1, const CMatrix& q2);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

}  // namespace hcf
