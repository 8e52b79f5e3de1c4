#include "hcf/linalg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

namespace hcf {

CMatrix hermitize(const CMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

HermitianInverse hermitian_inverse(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitize(m));
  const RVector& values = eig.eigenvalues();
  HermitianInverse out;
  out.min_eigenvalue = values.minCoeff();
  out.max_eigenvalue = values.maxCoeff();
  const double smallest = values.cwiseAbs().minCoeff();
  const double largest = values.cwiseAbs().maxCoeff();
  out.condition = smallest > 0.0 ? largest / smallest
                                 : std::numeric_limits<double>::infinity();
  RVector inv_values = values.unaryExpr([](double v) { return 1.0 / v; });
  const CMatrix& q = eig.eigenvectors();
  out.inverse = hermitize(q * inv_values.cast<cplx>().asDiagonal() * q.adjoint());
  return out;
}

double min_hermitian_eigenvalue(const CMatrix& m) {
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitize(m), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

bool is_positive_definite(const CMatrix& m) {
  if (!m.allFinite()) return false;
  return min_hermitian_eigenvalue(m) > 0.0;
}

double hermitian_det(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitize(m), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().prod();
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_principal_angle_sine(const CMatrix& q1, const CMatrix& q2) {
  if (q1.cols() != q2.cols()) return 1.0;
  if (q1.cols() == 0) return 0.0;
  CMatrix residual = q1 - q2 * (q2.adjoint() * q1);
  Eigen::JacobiSVD<CMatrix> svd(residual);
  return std::min(1.0, svd.singularValues()(0));
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

}  // namespace hcf
