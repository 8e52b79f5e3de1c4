#pragma once

#include <string>
#include <vector>

#include "hcf/cspace_model.hpp"
#include "hcf/flow_engine.hpp"
#include "hcf/linalg.hpp"

namespace hcf {

/// Absolute eigenvalue threshold for rank decisions, applied after scaling
/// the matrix so that its largest eigenvalue is at most one.
inline constexpr double kRankTol = 1e-10;

/// Limit of the flow at the extinction time T = 2 min A.
struct LimitForm {
  double T = 0.0;
  std::vector<int> p_set;
  /// A_i - min A: zero exactly on p_set.
  std::vector<double> base_limits;
  /// Orthonormal columns spanning Z_p = span{c^j : j in p_set}.
  CMatrix Zp_basis;
  /// Limit of H(t); positive semidefinite with kernel Z_p.
  CMatrix fiber_limit;
  int q_hat = 0;
  int fiber_rank = 0;

  /// Rows of U diagonalise Theta_p: U Theta_p U^dagger = diag(mu, 0).
  CMatrix U;
  RVector mu;
  /// Limit of the regular part of the inverse fiber form and its block
  /// orthogonal to Z_p in the U-frame.
  CMatrix Lambda_hat;
  CMatrix Lambda_o;

  /// Complexified kernel of the limit form, e.g. "n_1^c + Z_p + conj(Z_p)".
  std::string kernel_description;
  /// Product of the simple factors whose complexification sweeps the leaves.
  std::string collapsing_group;
};

/// Algebraic limit: Theta_p is diagonalised, the trailing block of
/// Lambda_hat = H0^{-1} + sum_{j not in p} gamma_integral(A_j, T) Gamma^j
/// is inverted and everything else is zero.
LimitForm limit_form(const CSpaceModel& model, const InvariantMetric& init,
                     double tie_tol = kDefaultTieTol);

struct StaticMetric {
  double lambda = 0.0;
  InvariantMetric metric;
  /// |K(metric) + lambda metric|_inf
  double residual = 0.0;
};

/// h_i = 1/(2 lambda), H = Theta_s^{-1} / (4 lambda).
/// Errors: NoStaticForNonpositiveLambda, ThetaSingular.
StaticMetric static_metric(const CSpaceModel& model, double lambda);

struct StaticFit {
  double residual = 0.0;
  double lambda_fit = 0.0;
};

/// Least-squares lambda for -K(h) = lambda h over the components
/// (h_1..h_s, all entries of H) and the sup-norm of what is left.
StaticFit static_residual(const CSpaceModel& model, const InvariantMetric& metric);

/// Volume-normalised flow c(t) h(t) with c(t) = xi(t) / (2A - t).
struct NormalizedState {
  double t = 0.0;
  double c_of_t = 0.0;
  double xi_of_t = 0.0;
  InvariantMetric normalized_metric;
  double V_const = 1.0;
  /// (V^{-1} 4^k det Theta_s)^{1/m}; zero when Theta_s is singular.
  double xi_limit = 0.0;
};

/// Errors: UnequalA when the A_i are not all tied, PastExtinction,
/// InvalidArgument for V <= 0.
NormalizedState normalized_state(const CSpaceModel& model, const InvariantMetric& init, double t,
                                 double V = 1.0, double tie_tol = kDefaultTieTol);

/// Collapse of a product of Calabi-Eckmann blocks.
struct CollapseReport {
  /// sigma[i] is the partner of factor i (0-based).
  std::vector<int> sigma;
  std::vector<int> p_set;
  /// Surviving factors whose partner also survives, and the rest.
  std::vector<int> I1;
  std::vector<int> I2;
  std::string description;
};

/// Errors: NotCEProduct when the model carries no valid block pairing
/// (perfect matching, k = s/2, partner coefficient vectors complex-parallel
/// and non-zero).
CollapseReport collapse_structure_ce(const CSpaceModel& model, const InvariantMetric& init,
                                     double tie_tol = kDefaultTieTol);

/// Geometric near-extinction grid t_n = T (1 - 2^{-n}), n = 1..count.
std::vector<double> near_extinction_grid(double T, int count = 20);

}  // namespace hcf
