#pragma once

#include <string>
#include <vector>

#include "hcf/cspace_model.hpp"
#include "hcf/linalg.hpp"

namespace hcf {

/// Named residuals from a verification pass.
struct ResidualReport {
  struct Entry {
    std::string name;
    double value = 0.0;
  };
  std::vector<Entry> entries;

  void add(std::string name, double value) { entries.push_back({std::move(name), value}); }
  double max() const;
  /// Value of the entry with this name; throws std::out_of_range if absent.
  double at(const std::string& name) const;
};

/// Chevalley data of su(p+q) adapted to the Hermitian symmetric pair
/// (su(p+q), s(u(p)+u(q))). Matrices are (p+q)x(p+q).
///
/// Positive non-compact roots are e_i - e_j with i < p <= j (0-based).
/// Root vectors are E_{ij}/sqrt(2N) so that kappa(E_a, E_-a) = 1 with
/// kappa(X, Y) = 2N tr(XY).
struct RootRealization {
  struct Root {
    int i = 0;
    int j = 0;
  };

  int p = 0;
  int q = 0;
  int N = 0;
  std::vector<Root> roots_plus_n;
  std::vector<CMatrix> E_pos;  // E_alpha
  std::vector<CMatrix> E_neg;  // E_{-alpha}
  std::vector<CMatrix> H;      // H_alpha = [E_alpha, E_{-alpha}]
  CMatrix Z;                   // center of k, alpha(Z) = i
  double kappa_scale = 0.0;    // 2N

  double killing(const CMatrix& x, const CMatrix& y) const;
  cplx killing_c(const CMatrix& x, const CMatrix& y) const;
  /// alpha(v) for a diagonal v.
  cplx root_value(const Root& root, const CMatrix& v) const;
};

inline constexpr int kMaxRealizationSize = 8;
inline constexpr double kRootTolerance = 1e-12;

/// Errors: InvalidArgument (p or q < 1), SizeLimit (p+q > 8 or pq < 2).
RootRealization grassmannian_realization(int p, int q);

/// Residuals of the Chevalley normalisation and of the identities used in
/// the tensor computation (sum of H_alpha, alpha(Z), symmetric-pair
/// brackets).
ResidualReport verify_root_identities(const RootRealization& r);

/// Calabi-Eckmann model: two Grassmannian blocks on the diagonal, fiber f
/// spanned over R by Z_1, Z_2 with complex structure IF (k = 1).
struct CERealization {
  RootRealization block1;
  RootRealization block2;
  ComplexStructureInput structure;
  std::vector<FactorSpec> factors;
  FiberSpec fiber;
};

/// Default IF = [[0,-1],[1,0]] maps Z_1 to Z_2.
CERealization ce_realization(int p1, int q1, int p2, int q2);
CERealization ce_realization(int p1, int q1, int p2, int q2, const RMatrix& IF);
/// General real data: zf_coords are the coordinates of Z_1, Z_2 in the real
/// basis of f and must be linearly independent (DegenerateBasis otherwise).
CERealization ce_realization(int p1, int q1, int p2, int q2,
                             const ComplexStructureInput& structure);

/// Gr(1,2) x Gr(1,2) with the default IF: c^1 = -i/4, c^2 = -1/4.
CERealization ce25_realization();

/// The CSpaceModel of a CE realization with initial coefficients A.
CSpaceModel ce_model(const CERealization& ce, double A1, double A2);

/// Builds the Nomizu operator of the Chern connection on m^c from raw
/// brackets, J-invariance, metric compatibility and the vanishing of the
/// (1,1) torsion, then evaluates torsion, curvature, S, Q and K and reports
/// the residual against every closed-form claim.
/// Errors: ShapeMismatch, NonPositiveMetric.
ResidualReport verify_chern_tensors(const CERealization& ce, const InvariantMetric& metric);

}  // namespace hcf
