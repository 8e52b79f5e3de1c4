#include "hcf/limit_static.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hcf/error.hpp"

namespace hcf {

namespace {

std::string subscript(int value) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string out;
  for (char ch : std::to_string(value)) out += digits[ch - '0'];
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

double rank_threshold(const RVector& eigenvalues) {
  const double scale = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return kRankTol * std::max(1.0, scale);
}

}  // namespace

LimitForm limit_form(const CSpaceModel& model, const InvariantMetric& init, double tie_tol) {
  validate_metric(model, init);
  const int k = model.k();
  const Extinction ext = extinction_time(init.h_base, tie_tol);
  const double A = ext.T / 2.0;
  const GammaSystem gamma = gamma_system(model);
  std::set<int> collapsed(ext.p_set.begin(), ext.p_set.end());

  LimitForm out;
  out.T = ext.T;
  out.p_set = ext.p_set;
  for (int i = 0; i < model.s(); ++i) {
    out.base_limits.push_back(collapsed.count(i) ? 0.0 : init.h_base[i] - A);
  }

  CMatrix theta_p = CMatrix::Zero(k, k);
  for (int j : ext.p_set) theta_p += gamma.Gamma[j];
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitize(theta_p));
  const RVector& values = eig.eigenvalues();
  const double tol = rank_threshold(values);

  // Descending order puts the non-zero eigenvalues first.
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = k - 1 - i;
  CMatrix Q(k, k);
  for (int i = 0; i < k; ++i) Q.col(i) = eig.eigenvectors().col(idx[i]);
  out.q_hat = 0;
  for (int i = 0; i < k; ++i) {
    if (values(idx[i]) > tol) ++out.q_hat;
  }
  out.mu = RVector(out.q_hat);
  for (int i = 0; i < out.q_hat; ++i) out.mu(i) = values(idx[i]);
  out.U = Q.adjoint();
  out.Zp_basis = Q.leftCols(out.q_hat);
  out.fiber_rank = k - out.q_hat;

  out.Lambda_hat = hermitian_inverse(init.H).inverse;
  for (int j = 0; j < model.s(); ++j) {
    if (collapsed.count(j)) continue;
    out.Lambda_hat += gamma_integral(init.h_base[j], ext.T) * gamma.Gamma[j];
  }
  out.Lambda_hat = hermitize(out.Lambda_hat);
  const CMatrix lambda_u = out.U * out.Lambda_hat * out.U.adjoint();
  out.Lambda_o = lambda_u.bottomRightCorner(out.fiber_rank, out.fiber_rank);

  CMatrix block = CMatrix::Zero(k, k);
  if (out.fiber_rank > 0) {
    block.bottomRightCorner(out.fiber_rank, out.fiber_rank) =
        hermitian_inverse(out.Lambda_o).inverse;
  }
  out.fiber_limit = hermitize(out.U.adjoint() * block * out.U);

  std::vector<std::string> parts, group;
  for (int i : ext.p_set) {
    parts.push_back("n" + subscript(i + 1) + "^c");
    group.push_back("G" + subscript(i + 1));
  }
  if (out.q_hat > 0) {
    parts.push_back("Z_p");
    parts.push_back("conj(Z_p)");
  }
  out.kernel_description = join(parts, " ⊕ ") + " (dim_C Z_p = " + std::to_string(out.q_hat) + ")";
  out.collapsing_group = join(group, "·");
  return out;
}

StaticMetric static_metric(const CSpaceModel& model, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::NoStaticForNonpositiveLambda,
                "lambda=" + format_double(lambda) + " <= 0 admits no static metric");
  }
  const GammaSystem gamma = gamma_system(model);
  const HermitianInverse theta = hermitian_inverse(gamma.Theta_s);
  const double scale = std::max(1.0, std::abs(theta.max_eigenvalue));
  if (!(theta.min_eigenvalue > kRankTol * scale)) {
    throw Error(ErrorCode::ThetaSingular, "Theta_s is singular (smallest eigenvalue " +
                                              format_double(theta.min_eigenvalue) + ")");
  }
  StaticMetric out;
  out.lambda = lambda;
  out.metric.h_base.assign(model.s(), 1.0 / (2.0 * lambda));
  out.metric.H = theta.inverse / (4.0 * lambda);

  const KTensor K = k_tensor(model, out.metric);
  double residual = 0.0;
  for (int i = 0; i < model.s(); ++i) {
    residual = std::max(residual, std::abs(K.base[i] + lambda * out.metric.h_base[i]));
  }
  residual = std::max(residual, max_abs(K.fiber + lambda * out.metric.H));
  out.residual = residual;
  return out;
}

StaticFit static_residual(const CSpaceModel& model, const InvariantMetric& metric) {
  const KTensor K = k_tensor(model, metric);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < model.s(); ++i) {
    num += metric.h_base[i] * K.base[i];
    den += metric.h_base[i] * metric.h_base[i];
  }
  num += (metric.H.conjugate().cwiseProduct(K.fiber)).sum().real();
  den += metric.H.squaredNorm();
  StaticFit fit;
  fit.lambda_fit = -num / den;
  double residual = 0.0;
  for (int i = 0; i < model.s(); ++i) {
    residual = std::max(residual, std::abs(K.base[i] + fit.lambda_fit * metric.h_base[i]));
  }
  residual = std::max(residual, max_abs(K.fiber + fit.lambda_fit * metric.H));
  fit.residual = residual;
  return fit;
}

NormalizedState normalized_state(const CSpaceModel& model, const InvariantMetric& init, double t,
                                 double V, double tie_tol) {
  if (!(V > 0.0) || !std::isfinite(V)) throw Error(ErrorCode::InvalidArgument, "V must be > 0");
  validate_metric(model, init);
  const Extinction ext = extinction_time(init.h_base, tie_tol);
  if (static_cast<int>(ext.p_set.size()) != model.s()) {
    throw Error(ErrorCode::UnequalA,
                "normalized flow requires all A_i equal (within tie_tol)");
  }
  const double two_a = ext.T;
  const int k = model.k();
  const int m = model.total_dim();

  const InvariantMetric h_t = closed_form_solution(model, init, t);
  const CMatrix scaled_inverse = (two_a - t) * closed_form_inverse_form(model, init, t);

  NormalizedState out;
  out.t = t;
  out.V_const = V;
  out.xi_of_t = std::pow(hermitian_det(scaled_inverse) / V, 1.0 / m);
  out.c_of_t = out.xi_of_t / (two_a - t);
  out.normalized_metric.h_base = h_t.h_base;
  for (double& v : out.normalized_metric.h_base) v *= out.c_of_t;
  out.normalized_metric.H = out.c_of_t * h_t.H;

  const double det_theta = hermitian_det(gamma_system(model).Theta_s);
  out.xi_limit = det_theta > 0.0 ? std::pow(std::pow(4.0, k) * det_theta / V, 1.0 / m) : 0.0;
  return out;
}

CollapseReport collapse_structure_ce(const CSpaceModel& model, const InvariantMetric& init,
                                     double tie_tol) {
  const int s = model.s();
  const auto& blocks = model.ce_blocks();
  if (blocks.empty()) throw Error(ErrorCode::NotCEProduct, "model has no Calabi-Eckmann pairing");
  if (2 * static_cast<int>(blocks.size()) != s) {
    throw Error(ErrorCode::NotCEProduct, "pairing does not cover every factor");
  }
  if (model.k() != static_cast<int>(blocks.size())) {
    throw Error(ErrorCode::NotCEProduct, "fiber dimension must equal the number of blocks");
  }
  CollapseReport out;
  out.sigma.assign(s, -1);
  for (const auto& [a, b] : blocks) {
    out.sigma[a] = b;
    out.sigma[b] = a;
    const CVector& ca = model.fiber().c[a];
    const CVector& cb = model.fiber().c[b];
    const double na = ca.norm(), nb = cb.norm();
    if (na == 0.0 || nb == 0.0) {
      throw Error(ErrorCode::NotCEProduct, "a paired coefficient vector vanishes");
    }
    if (std::abs(std::abs(ca.dot(cb)) - na * nb) > 1e-10 * na * nb) {
      throw Error(ErrorCode::NotCEProduct, "paired coefficient vectors are not complex-parallel");
    }
  }
  if (std::find(out.sigma.begin(), out.sigma.end(), -1) != out.sigma.end()) {
    throw Error(ErrorCode::NotCEProduct, "pairing does not cover every factor");
  }

  validate_metric(model, init);
  out.p_set = extinction_time(init.h_base, tie_tol).p_set;
  std::set<int> collapsed(out.p_set.begin(), out.p_set.end());
  std::set<int> survivors;
  for (int i = 0; i < s; ++i) {
    if (!collapsed.count(i)) survivors.insert(i);
  }
  for (int i : survivors) {
    if (survivors.count(out.sigma[i])) {
      out.I1.push_back(i);
    } else {
      out.I2.push_back(i);
    }
  }

  if (survivors.empty()) {
    out.description = "point";
    return out;
  }
  std::vector<std::string> parts;
  for (int i : out.I2) parts.push_back("G" + subscript(i + 1) + "/K" + subscript(i + 1));
  if (!out.I1.empty()) {
    std::vector<std::string> g, l;
    for (int i : out.I1) {
      g.push_back("G" + subscript(i + 1));
      l.push_back("L" + subscript(i + 1));
    }
    std::string mprime = join(g, "·") + "/" + join(l, "·");
    parts.push_back(out.I2.empty() ? mprime : "(" + mprime + ")");
  }
  out.description = join(parts, " × ");
  return out;
}

std::vector<double> near_extinction_grid(double T, int count) {
  std::vector<double> out;
  for (int n = 1; n <= count; ++n) out.push_back(T * (1.0 - std::ldexp(1.0, -n)));
  return out;
}

}  // namespace hcf
