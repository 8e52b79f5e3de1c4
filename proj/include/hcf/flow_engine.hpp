#pragma once

#include <span>
#include <string>
#include <vector>

#include "hcf/cspace_model.hpp"
#include "hcf/linalg.hpp"

namespace hcf {

inline constexpr double kDefaultTieTol = 1e-12;

/// Rank-one fiber matrices Gamma^j = n_j c^j (c^j)^dagger and their partial
/// sums along the ordering of factors by increasing A_j.
struct GammaSystem {
  std::vector<CMatrix> Gamma;
  /// Factor indices sorted by A (stable).
  std::vector<int> order;
  /// Theta[p-1] = sum of Gamma over the first p indices of `order`.
  std::vector<CMatrix> Theta;
  CMatrix Theta_s;
};

GammaSystem gamma_system(const CSpaceModel& model);

/// Gamma(t) = sum_j Gamma^j / h_j^2 at the given base coefficients.
CMatrix gamma_at(const GammaSystem& gamma, std::span<const double> h_base);

/// Flow tensor -S + Q(T) on an invariant metric: -1/2 on each normalised
/// root direction, -H Gamma H on the fiber, zero on the mixed block.
struct KTensor {
  std::vector<double> base;
  CMatrix fiber;
};

/// Errors: ShapeMismatch, NonPositiveMetric.
KTensor k_tensor(const CSpaceModel& model, const InvariantMetric& metric);

/// h_i(t) = A_i - t/2. Errors: PastExtinction if t >= 2 min A.
std::vector<double> base_solution(std::span<const double> A, double t);

/// Integral of (A - u/2)^{-2} over [0, t], i.e. 2t / (A (2A - t)).
/// t = 2A returns +inf only when allow_improper is set.
/// Errors: OutOfDomain for t > 2A (or t = 2A without allow_improper).
double gamma_integral(double A, double t, bool allow_improper = false);

struct Extinction {
  double T = 0.0;
  /// Indices (0-based) whose A_i ties the minimum within tie_tol.
  std::vector<int> p_set;
};

Extinction extinction_time(std::span<const double> A, double tie_tol = kDefaultTieTol);

/// H^{-1}(t) = H0^{-1} + sum_j gamma_integral(A_j, t) Gamma^j, the exact
/// fiber Riccati solution; the base part is base_solution.
/// Errors: PastExtinction (t >= T), NotPositive (negative t with the inverse
/// form no longer positive definite).
InvariantMetric closed_form_solution(const CSpaceModel& model, const InvariantMetric& init,
                                     double t);

/// The inverse fiber form H^{-1}(t) itself (no positivity check).
/// Errors: PastExtinction.
CMatrix closed_form_inverse_form(const CSpaceModel& model, const InvariantMetric& init, double t);

/// Inverse fiber form at time t with eigenvalue diagnostics.
HermitianInverse closed_form_fiber_inverse(const CSpaceModel& model, const InvariantMetric& init,
                                           double t);

struct Trajectory {
  std::vector<double> times;
  std::vector<InvariantMetric> states;
  std::string method;
  int steps = 0;
  double step_size = 0.0;
};

/// Fixed-step classical RK4 for h_i' = -1/2, H' = -H Gamma H, storing every
/// step. H is re-Hermitized after each step.
/// Errors: InvalidArgument (steps < 1 or t_end <= 0), PastExtinction,
/// LostPositivity.
Trajectory integrate_rk4(const CSpaceModel& model, const InvariantMetric& init, double t_end,
                         int steps);

/// Closed form sampled on a uniform grid of steps+1 points on [0, t_end].
Trajectory sample_closed_form(const CSpaceModel& model, const InvariantMetric& init,
                              double t_end, int steps);

}  // namespace hcf
