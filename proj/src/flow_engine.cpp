#include "hcf/flow_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hcf/error.hpp"

namespace hcf {

GammaSystem gamma_system(const CSpaceModel& model) {
  const int k = model.k();
  GammaSystem out;
  for (int j = 0; j < model.s(); ++j) {
    const CVector& c = model.fiber().c[j];
    const double n = static_cast<double>(model.factors()[j].dim_n);
    // Upper triangle mirrored so that Gamma^j is Hermitian to the bit.
    CMatrix g(k, k);
    for (int l = 0; l < k; ++l) {
      g(l, l) = n * std::norm(c(l));
      for (int m = l + 1; m < k; ++m) {
        g(l, m) = n * (c(l) * std::conj(c(m)));
        g(m, l) = std::conj(g(l, m));
      }
    }
    out.Gamma.push_back(g);
  }
  out.order.resize(model.s());
  std::iota(out.order.begin(), out.order.end(), 0);
  std::stable_sort(out.order.begin(), out.order.end(), [&](int a, int b) {
    return model.factors()[a].A < model.factors()[b].A;
  });
  CMatrix running = CMatrix::Zero(k, k);
  for (int idx : out.order) {
    running += out.Gamma[idx];
    out.Theta.push_back(running);
  }
  out.Theta_s = running;
  return out;
}

CMatrix gamma_at(const GammaSystem& gamma, std::span<const double> h_base) {
  const Eigen::Index k = gamma.Theta_s.rows();
  CMatrix out = CMatrix::Zero(k, k);
  for (std::size_t j = 0; j < gamma.Gamma.size(); ++j) {
    out += gamma.Gamma[j] / (h_base[j] * h_base[j]);
  }
  return out;
}

KTensor k_tensor(const CSpaceModel& model, const InvariantMetric& metric) {
  validate_metric(model, metric);
  const GammaSystem gamma = gamma_system(model);
  KTensor out;
  out.base.assign(model.s(), -0.5);
  out.fiber = -hermitize(metric.H * gamma_at(gamma, metric.h_base) * metric.H);
  return out;
}

std::vector<double> base_solution(std::span<const double> A, double t) {
  if (A.empty()) throw Error(ErrorCode::ShapeMismatch, "no base coefficients");
  const double T = 2.0 * *std::min_element(A.begin(), A.end());
  if (!(t < T)) throw Error(ErrorCode::PastExtinction, "T=" + format_double(T));
  std::vector<double> out;
  out.reserve(A.size());
  for (double a : A) out.push_back(a - 0.5 * t);
  return out;
}

double gamma_integral(double A, double t, bool allow_improper) {
  if (!(A > 0.0)) throw Error(ErrorCode::InvalidArgument, "A must be positive");
  const double end = 2.0 * A;
  if (t > end || std::isnan(t)) {
    throw Error(ErrorCode::OutOfDomain, "t=" + format_double(t) + " > 2A=" + format_double(end));
  }
  if (t == end) {
    if (!allow_improper) {
      throw Error(ErrorCode::OutOfDomain, "t=2A is an improper endpoint");
    }
    return std::numeric_limits<double>::infinity();
  }
  return 2.0 * t / (A * (end - t));
}

Extinction extinction_time(std::span<const double> A, double tie_tol) {
  if (A.empty()) throw Error(ErrorCode::ShapeMismatch, "no base coefficients");
  for (double a : A) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw Error(ErrorCode::InvalidArgument, "A_i must be positive and finite");
    }
  }
  const double a_min = *std::min_element(A.begin(), A.end());
  Extinction out;
  out.T = 2.0 * a_min;
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (A[i] <= a_min * (1.0 + tie_tol)) out.p_set.push_back(static_cast<int>(i));
  }
  return out;
}

CMatrix closed_form_inverse_form(const CSpaceModel& model, const InvariantMetric& init, double t) {
  validate_metric(model, init);
  const Extinction ext = extinction_time(init.h_base);
  if (!(t < ext.T)) throw Error(ErrorCode::PastExtinction, "T=" + format_double(ext.T));
  const GammaSystem gamma = gamma_system(model);
  CMatrix inverse_form = hermitian_inverse(init.H).inverse;
  for (int j = 0; j < model.s(); ++j) {
    inverse_form += gamma_integral(init.h_base[j], t) * gamma.Gamma[j];
  }
  return hermitize(inverse_form);
}

HermitianInverse closed_form_fiber_inverse(const CSpaceModel& model, const InvariantMetric& init,
                                           double t) {
  return hermitian_inverse(closed_form_inverse_form(model, init, t));
}

InvariantMetric closed_form_solution(const CSpaceModel& model, const InvariantMetric& init,
                                     double t) {
  const HermitianInverse fiber = closed_form_fiber_inverse(model, init, t);
  if (!(fiber.min_eigenvalue > 0.0)) {
    throw Error(ErrorCode::NotPositive,
                "inverse fiber form is not positive definite at t=" + format_double(t));
  }
  return InvariantMetric{base_solution(init.h_base, t), fiber.inverse};
}

namespace {

struct FlowRhs {
  const GammaSystem& gamma;

  CMatrix operator()(std::span<const double> h, const CMatrix& H) const {
    return -(H * gamma_at(gamma, h) * H);
  }
};

std::vector<double> shifted(const std::vector<double>& h, double dt) {
  std::vector<double> out(h);
  for (double& v : out) v -= 0.5 * dt;
  return out;
}

}  // namespace

Trajectory integrate_rk4(const CSpaceModel& model, const InvariantMetric& init, double t_end,
                         int steps) {
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "steps must be >= 1");
  if (!(t_end > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_end must be > 0");
  validate_metric(model, init);
  const Extinction ext = extinction_time(init.h_base);
  if (!(t_end < ext.T)) throw Error(ErrorCode::PastExtinction, "T=" + format_double(ext.T));

  const GammaSystem gamma = gamma_system(model);
  const FlowRhs rhs{gamma};
  const double dt = t_end / steps;

  Trajectory traj;
  traj.method = "rk4";
  traj.steps = steps;
  traj.step_size = dt;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(init);

  std::vector<double> h = init.h_base;
  CMatrix H = init.H;
  for (int n = 0; n < steps; ++n) {
    const std::vector<double> h_mid = shifted(h, 0.5 * dt);
    const std::vector<double> h_end = shifted(h, dt);
    const CMatrix k1 = rhs(h, H);
    const CMatrix k2 = rhs(h_mid, H + 0.5 * dt * k1);
    const CMatrix k3 = rhs(h_mid, H + 0.5 * dt * k2);
    const CMatrix k4 = rhs(h_end, H + dt * k3);
    H = hermitize(H + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    h = h_end;
    const double t = (n + 1 == steps) ? t_end : (n + 1) * dt;
    if (!is_positive_definite(H)) {
      throw Error(ErrorCode::LostPositivity,
                  "fiber metric not positive definite at t=" + format_double(t) +
                      " (step size too coarse near extinction)");
    }
    traj.times.push_back(t);
    traj.states.push_back(InvariantMetric{h, H});
  }
  return traj;
}

Trajectory sample_closed_form(const CSpaceModel& model, const InvariantMetric& init,
                              double t_end, int steps) {
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "steps must be >= 1");
  if (!(t_end > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_end must be > 0");
  Trajectory traj;
  traj.method = "closed-form";
  traj.steps = steps;
  traj.step_size = t_end / steps;
  for (int n = 0; n <= steps; ++n) {
    const double t = (n == steps) ? t_end : n * traj.step_size;
    traj.times.push_back(t);
    traj.states.push_back(closed_form_solution(model, init, t));
  }
  return traj;
}

}  // namespace hcf
