#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hcf/catalog.hpp"
#include "hcf/linalg.hpp"

namespace hcf {

/// One irreducible Hermitian symmetric factor G_j/K_j of the base together
/// with its initial coefficient A_j (the initial metric is -A_j times the
/// Killing form on n_j).
struct FactorSpec {
  FactorType type;
  int dim_n = 0;
  double A = 1.0;

  /// dim_n filled in from the catalog.
  static FactorSpec make(const FactorType& type, double A);
};

/// Fiber data: complex dimension k and one coefficient vector c^j per
/// factor, the V-bar coordinates of H_alpha^{01} for alpha in R^+_{n_j}.
struct FiberSpec {
  int k = 0;
  std::vector<CVector> c;
};

/// Real data that determines the fiber coefficients: coordinates of the
/// projections (Z_j)_f in a real basis of f (dimension 2k) and the fiber
/// complex structure I_F in that basis.
struct ComplexStructureInput {
  std::vector<RVector> zf_coords;
  RMatrix IF;
};

/// Index pairs (0-based) grouping factors into Calabi-Eckmann blocks.
using CEBlocks = std::vector<std::pair<int, int>>;

/// Validated C-space skeleton. Immutable after build_cspace.
class CSpaceModel {
 public:
  const std::vector<FactorSpec>& factors() const noexcept { return factors_; }
  const FiberSpec& fiber() const noexcept { return fiber_; }
  int s() const noexcept { return static_cast<int>(factors_.size()); }
  int k() const noexcept { return fiber_.k; }
  /// m = k + sum n_j
  int total_dim() const noexcept { return total_dim_m_; }
  std::vector<double> initial_A() const;
  const CEBlocks& ce_blocks() const noexcept { return ce_blocks_; }
  /// Non-fatal findings, e.g. coefficient vectors that no complex
  /// structure on a real 2k-dimensional fiber can produce.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  friend CSpaceModel build_cspace(std::vector<FactorSpec> factors, FiberSpec fiber,
                                  CEBlocks ce_blocks);

 private:
  CSpaceModel() = default;

  std::vector<FactorSpec> factors_;
  FiberSpec fiber_;
  int total_dim_m_ = 0;
  CEBlocks ce_blocks_;
  std::vector<std::string> warnings_;
};

/// Errors: QuadricNotSupported, DimensionTooSmall, ShapeMismatch,
/// InvalidArgument (non-finite data, A <= 0, bad CE indices).
CSpaceModel build_cspace(std::vector<FactorSpec> factors, FiberSpec fiber,
                         CEBlocks ce_blocks = {});

/// Plain metric data. Validated by validate_metric / the operations that
/// consume it.
struct InvariantMetric {
  std::vector<double> h_base;
  CMatrix H;
};

/// Throws ShapeMismatch on wrong sizes, NonPositiveMetric when some h_i <= 0
/// or H is not Hermitian positive definite.
void validate_metric(const CSpaceModel& model, const InvariantMetric& metric);

/// The initial metric (A_1..A_s, H0) of a model.
InvariantMetric initial_metric(const CSpaceModel& model, const CMatrix& H0);

inline constexpr double kComplexStructureTol = 1e-10;

/// Fiber coefficients from real complex-structure data.
///
/// Basis convention: X_a (a < k) are the first k vectors of the real basis,
/// V_a = (X_a - i IF X_a)/2 spans f^{10}, and a real vector v projects to
/// v^{01} = (v + i IF v)/2, which is expanded in the V-bar_a. Then
/// c^j = -i/(2 n_j) * coordinates((Z_j)_f^{01}).
///
/// Errors: ShapeMismatch, NotAComplexStructure (|IF^2 + 1|_max > 1e-10),
/// DegenerateBasis ({X_a, IF X_a} not a basis).
FiberSpec fiber_coeffs_from_complex_structure(const ComplexStructureInput& input,
                                              const std::vector<FactorSpec>& factors);

/// V-bar coordinates of v^{01} for a real fiber vector v (helper shared with
/// the Lie-theoretic realization).
CVector project_01_coords(const RVector& v, const RMatrix& IF);

/// Warnings for fiber data that cannot come from a real 2k-dimensional
/// fiber spanned by the (Z_j)_f: the vectors 2 i n_j c^j must span C^k
/// over the reals.
std::vector<std::string> realizability_warnings(const std::vector<FactorSpec>& factors,
                                                const FiberSpec& fiber);

}  // namespace hcf
