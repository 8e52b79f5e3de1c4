#include "hcf/hss_roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hcf/error.hpp"

namespace hcf {

double ResidualReport::max() const {
  double out = 0.0;
  for (const auto& e : entries) out = std::max(out, std::isnan(e.value) ? INFINITY : e.value);
  return out;
}

double ResidualReport::at(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return e.value;
  }
  throw std::out_of_range("no residual named " + name);
}

double RootRealization::killing(const CMatrix& x, const CMatrix& y) const {
  return killing_c(x, y).real();
}

cplx RootRealization::killing_c(const CMatrix& x, const CMatrix& y) const {
  return kappa_scale * (x * y).trace();
}

cplx RootRealization::root_value(const Root& root, const CMatrix& v) const {
  return v(root.i, root.i) - v(root.j, root.j);
}

namespace {

CMatrix unit(int n, int i, int j) {
  CMatrix m = CMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

CMatrix bracket(const CMatrix& x, const CMatrix& y) {
  return x * y - y * x;
}

// Conjugation of sl(N, C) with respect to the compact real form su(N).
CMatrix compact_conj(const CMatrix& x) {
  return -x.adjoint();
}

}  // namespace

RootRealization grassmannian_realization(int p, int q) {
  if (p < 1 || q < 1) throw Error(ErrorCode::InvalidArgument, "p and q must be >= 1");
  if (p + q > kMaxRealizationSize) {
    throw Error(ErrorCode::SizeLimit, "p+q=" + std::to_string(p + q) + " exceeds " +
                                          std::to_string(kMaxRealizationSize));
  }
  if (p * q < 2) {
    throw Error(ErrorCode::SizeLimit, "pq=" + std::to_string(p * q) + " < 2 (inadmissible factor)");
  }
  RootRealization r;
  r.p = p;
  r.q = q;
  r.N = p + q;
  r.kappa_scale = 2.0 * r.N;
  const double norm = 1.0 / std::sqrt(r.kappa_scale);
  for (int i = 0; i < p; ++i) {
    for (int j = p; j < r.N; ++j) {
      r.roots_plus_n.push_back({i, j});
      r.E_pos.push_back(norm * unit(r.N, i, j));
      r.E_neg.push_back(norm * unit(r.N, j, i));
      r.H.push_back(bracket(r.E_pos.back(), r.E_neg.back()));
    }
  }
  r.Z = CMatrix::Zero(r.N, r.N);
  for (int i = 0; i < r.N; ++i) {
    const double d = i < p ? static_cast<double>(q) / r.N : -static_cast<double>(p) / r.N;
    r.Z(i, i) = cplx(0.0, d);
  }
  return r;
}

ResidualReport verify_root_identities(const RootRealization& r) {
  const cplx I(0.0, 1.0);
  const int N = r.N;
  ResidualReport report;
  report.add("count(R+_n) - dim_n",
             std::abs(static_cast<double>(r.roots_plus_n.size()) - r.p * r.q));

  CMatrix sum_H = CMatrix::Zero(N, N);
  for (const auto& h : r.H) sum_H += h;
  report.add("sum H_a + (i/2) Z", max_abs(sum_H + 0.5 * I * r.Z));

  double kappa_norm = 0.0, bracket_h = 0.0, dual = 0.0, conj = 0.0, alpha_z = 0.0, ad_z = 0.0;
  // Cartan subalgebra of sl(N): traceless diagonals.
  std::vector<CMatrix> cartan;
  for (int l = 0; l + 1 < N; ++l) cartan.push_back(unit(N, l, l) - unit(N, l + 1, l + 1));
  cartan.push_back(r.Z);

  for (std::size_t a = 0; a < r.roots_plus_n.size(); ++a) {
    const auto& root = r.roots_plus_n[a];
    kappa_norm = std::max(kappa_norm, std::abs(r.killing_c(r.E_pos[a], r.E_neg[a]) - 1.0));
    bracket_h = std::max(bracket_h, max_abs(bracket(r.E_pos[a], r.E_neg[a]) - r.H[a]));
    for (const auto& v : cartan) {
      dual = std::max(dual, std::abs(r.killing_c(r.H[a], v) - r.root_value(root, v)));
    }
    conj = std::max(conj, max_abs(compact_conj(r.E_pos[a]) + r.E_neg[a]));
    const cplx az = r.root_value(root, r.Z);
    alpha_z = std::max(alpha_z, std::abs(az - I));
    ad_z = std::max(ad_z, max_abs(bracket(r.Z, r.E_pos[a]) - az * r.E_pos[a]));
  }
  report.add("kappa(E_a, E_-a) - 1", kappa_norm);
  report.add("[E_a, E_-a] - H_a", bracket_h);
  report.add("kappa(H_a, v) - a(v)", dual);
  report.add("conj(E_a) + E_-a", conj);
  report.add("a(Z) - i", alpha_z);
  report.add("[Z, E_a] - a(Z) E_a", ad_z);

  // Symmetric pair: [n+, n+] = 0 and [n, n] inside k.
  double nn_plus = 0.0, nn_k = 0.0;
  auto off_block = [&](const CMatrix& x) {
    double out = 0.0;
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        if ((i < r.p) != (j < r.p)) out = std::max(out, std::abs(x(i, j)));
      }
    }
    return out;
  };
  for (std::size_t a = 0; a < r.E_pos.size(); ++a) {
    for (std::size_t b = 0; b < r.E_pos.size(); ++b) {
      nn_plus = std::max(nn_plus, max_abs(bracket(r.E_pos[a], r.E_pos[b])));
      nn_k = std::max(nn_k, off_block(bracket(r.E_pos[a], r.E_neg[b])));
    }
  }
  report.add("[E_a, E_b] for a, b in R+_n", nn_plus);
  report.add("[E_a, E_-b] outside k", nn_k);

  double central = 0.0;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if ((i < r.p) == (j < r.p)) central = std::max(central, max_abs(bracket(r.Z, unit(N, i, j))));
    }
  }
  report.add("[Z, k]", central);
  return report;
}

CERealization ce_realization(int p1, int q1, int p2, int q2) {
  RMatrix IF(2, 2);
  IF << 0.0, -1.0, 1.0, 0.0;
  return ce_realization(p1, q1, p2, q2, IF);
}

CERealization ce_realization(int p1, int q1, int p2, int q2, const RMatrix& IF) {
  ComplexStructureInput structure;
  structure.IF = IF;
  structure.zf_coords = {RVector::Unit(2, 0), RVector::Unit(2, 1)};
  return ce_realization(p1, q1, p2, q2, structure);
}

CERealization ce_realization(int p1, int q1, int p2, int q2,
                             const ComplexStructureInput& structure) {
  if (structure.IF.rows() != 2 || structure.IF.cols() != 2 || structure.zf_coords.size() != 2 ||
      structure.zf_coords[0].size() != 2 || structure.zf_coords[1].size() != 2) {
    throw Error(ErrorCode::ShapeMismatch, "Calabi-Eckmann realizations have a 2-dimensional real fiber");
  }
  RMatrix zc(2, 2);
  zc.row(0) = structure.zf_coords[0].transpose();
  zc.row(1) = structure.zf_coords[1].transpose();
  if (std::abs(zc.determinant()) < 1e-12) {
    throw Error(ErrorCode::DegenerateBasis, "Z_1, Z_2 must span the fiber");
  }
  CERealization ce;
  ce.block1 = grassmannian_realization(p1, q1);
  ce.block2 = grassmannian_realization(p2, q2);
  ce.structure = structure;
  ce.factors = {FactorSpec::make(FactorType::grassmannian(p1, q1), 1.0),
                FactorSpec::make(FactorType::grassmannian(p2, q2), 1.0)};
  ce.fiber = fiber_coeffs_from_complex_structure(ce.structure, ce.factors);
  return ce;
}

CERealization ce25_realization() {
  return ce_realization(1, 2, 1, 2);
}

CSpaceModel ce_model(const CERealization& ce, double A1, double A2) {
  std::vector<FactorSpec> factors = ce.factors;
  factors[0].A = A1;
  factors[1].A = A2;
  return build_cspace(std::move(factors), ce.fiber, {{0, 1}});
}

}  // namespace hcf
