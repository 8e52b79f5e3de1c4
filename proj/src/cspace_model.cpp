#include "hcf/cspace_model.hpp"

#include <cmath>
#include <set>

#include "hcf/error.hpp"

namespace hcf {

FactorSpec FactorSpec::make(const FactorType& type, double A) {
  return FactorSpec{type, catalog_lookup(type).dim_n, A};
}

std::vector<double> CSpaceModel::initial_A() const {
  std::vector<double> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.A);
  return out;
}

namespace {

void validate_factor(const FactorSpec& f, std::size_t index) {
  const std::string where = "factor " + std::to_string(index + 1);
  if (f.type.kind == FactorKind::Quadric) {
    throw Error(ErrorCode::QuadricNotSupported, where + " is a complex quadric");
  }
  const CatalogEntry entry = catalog_lookup(f.type);
  if (entry.dim_n != f.dim_n) {
    throw Error(ErrorCode::ShapeMismatch,
                where + ": dim_n=" + std::to_string(f.dim_n) + " but " +
                    factor_label(f.type) + " has dimension " + std::to_string(entry.dim_n));
  }
  if (f.dim_n < 2) {
    throw Error(ErrorCode::DimensionTooSmall,
                where + ": complex dimension " + std::to_string(f.dim_n) + " < 2");
  }
  if (!std::isfinite(f.A) || f.A <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, where + ": A must be positive and finite");
  }
}

}  // namespace

CSpaceModel build_cspace(std::vector<FactorSpec> factors, FiberSpec fiber, CEBlocks ce_blocks) {
  if (factors.empty()) throw Error(ErrorCode::ShapeMismatch, "no factors given");
  if (fiber.k < 1) throw Error(ErrorCode::ShapeMismatch, "fiber dimension k must be >= 1");
  for (std::size_t j = 0; j < factors.size(); ++j) validate_factor(factors[j], j);

  if (fiber.c.size() != factors.size()) {
    throw Error(ErrorCode::ShapeMismatch,
                "expected " + std::to_string(factors.size()) + " coefficient vectors, got " +
                    std::to_string(fiber.c.size()));
  }
  for (std::size_t j = 0; j < fiber.c.size(); ++j) {
    if (fiber.c[j].size() != fiber.k) {
      throw Error(ErrorCode::ShapeMismatch, "coefficient vector " + std::to_string(j + 1) +
                                                " has length " + std::to_string(fiber.c[j].size()) +
                                                ", expected k=" + std::to_string(fiber.k));
    }
    if (!fiber.c[j].allFinite()) {
      throw Error(ErrorCode::InvalidArgument,
                  "coefficient vector " + std::to_string(j + 1) + " has non-finite entries");
    }
  }

  const int s = static_cast<int>(factors.size());
  std::set<int> seen;
  for (const auto& [a, b] : ce_blocks) {
    if (a < 0 || b < 0 || a >= s || b >= s || a == b || !seen.insert(a).second ||
        !seen.insert(b).second) {
      throw Error(ErrorCode::InvalidArgument, "ce_blocks must pair distinct factor indices");
    }
  }

  CSpaceModel model;
  model.total_dim_m_ = fiber.k;
  for (const auto& f : factors) model.total_dim_m_ += f.dim_n;
  model.warnings_ = realizability_warnings(factors, fiber);
  model.factors_ = std::move(factors);
  model.fiber_ = std::move(fiber);
  model.ce_blocks_ = std::move(ce_blocks);
  return model;
}

void validate_metric(const CSpaceModel& model, const InvariantMetric& metric) {
  if (static_cast<int>(metric.h_base.size()) != model.s()) {
    throw Error(ErrorCode::ShapeMismatch, "metric has " + std::to_string(metric.h_base.size()) +
                                              " base coefficients, model has s=" +
                                              std::to_string(model.s()));
  }
  if (metric.H.rows() != model.k() || metric.H.cols() != model.k()) {
    throw Error(ErrorCode::ShapeMismatch, "fiber matrix must be " + std::to_string(model.k()) +
                                              "x" + std::to_string(model.k()));
  }
  for (std::size_t i = 0; i < metric.h_base.size(); ++i) {
    if (!std::isfinite(metric.h_base[i]) || metric.h_base[i] <= 0.0) {
      throw Error(ErrorCode::NonPositiveMetric, "h_" + std::to_string(i + 1) + " must be > 0");
    }
  }
  const double scale = std::max(1.0, max_abs(metric.H));
  if (!metric.H.allFinite() || max_abs(metric.H - metric.H.adjoint()) > 1e-12 * scale) {
    throw Error(ErrorCode::NonPositiveMetric, "fiber matrix is not Hermitian");
  }
  if (!is_positive_definite(metric.H)) {
    throw Error(ErrorCode::NonPositiveMetric, "fiber matrix is not positive definite");
  }
}

InvariantMetric initial_metric(const CSpaceModel& model, const CMatrix& H0) {
  InvariantMetric m{model.initial_A(), H0};
  validate_metric(model, m);
  return m;
}

CVector project_01_coords(const RVector& v, const RMatrix& IF) {
  const Eigen::Index k = IF.rows() / 2;
  // Columns X_a = e_a followed by IF X_a.
  RMatrix basis(IF.rows(), 2 * k);
  basis.leftCols(k) = RMatrix::Identity(IF.rows(), k);
  basis.rightCols(k) = IF.leftCols(k);
  const RVector ab = basis.fullPivLu().solve(v);
  // X^{01} = Vbar, (IF X)^{01} = -i Vbar.
  CVector out(k);
  for (Eigen::Index a = 0; a < k; ++a) out(a) = cplx(ab(a), -ab(k + a));
  return out;
}

FiberSpec fiber_coeffs_from_complex_structure(const ComplexStructureInput& input,
                                              const std::vector<FactorSpec>& factors) {
  const RMatrix& IF = input.IF;
  if (IF.rows() != IF.cols() || IF.rows() == 0 || IF.rows() % 2 != 0) {
    throw Error(ErrorCode::ShapeMismatch, "IF must be a non-empty 2k x 2k matrix");
  }
  if (input.zf_coords.size() != factors.size()) {
    throw Error(ErrorCode::ShapeMismatch,
                "expected one (Z_j)_f coordinate vector per factor");
  }
  const Eigen::Index dim = IF.rows();
  const RMatrix square = IF * IF + RMatrix::Identity(dim, dim);
  if (!IF.allFinite() || square.cwiseAbs().maxCoeff() > kComplexStructureTol) {
    throw Error(ErrorCode::NotAComplexStructure, "IF*IF differs from -Id");
  }
  const Eigen::Index k = dim / 2;
  RMatrix basis(dim, 2 * k);
  basis.leftCols(k) = RMatrix::Identity(dim, k);
  basis.rightCols(k) = IF.leftCols(k);
  Eigen::FullPivLU<RMatrix> lu(basis);
  lu.setThreshold(1e-10);
  if (lu.rank() != dim) {
    throw Error(ErrorCode::DegenerateBasis,
                "{X_a, IF X_a} built from the first k basis vectors do not span the fiber");
  }

  FiberSpec fiber;
  fiber.k = static_cast<int>(k);
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const RVector& z = input.zf_coords[j];
    if (z.size() != dim) {
      throw Error(ErrorCode::ShapeMismatch, "(Z_" + std::to_string(j + 1) + ")_f must have " +
                                                std::to_string(dim) + " coordinates");
    }
    const CVector coords = project_01_coords(z, IF);
    fiber.c.push_back(coords * cplx(0.0, -1.0 / (2.0 * factors[j].dim_n)));
  }
  return fiber;
}

std::vector<std::string> realizability_warnings(const std::vector<FactorSpec>& factors,
                                                const FiberSpec& fiber) {
  std::vector<std::string> out;
  if (fiber.c.size() != factors.size() || fiber.k < 1) return out;
  const int k = fiber.k;
  RMatrix real_span(2 * k, static_cast<Eigen::Index>(factors.size()));
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (fiber.c[j].size() != k) return out;
    const CVector z = fiber.c[j] * cplx(0.0, 2.0 * factors[j].dim_n);
    real_span.col(static_cast<Eigen::Index>(j)) << z.real(), z.imag();
    if (fiber.c[j].norm() == 0.0) {
      out.push_back("c^" + std::to_string(j + 1) + " = 0: (Z_" + std::to_string(j + 1) +
                    ")_f vanishes");
    }
  }
  Eigen::FullPivLU<RMatrix> lu(real_span);
  lu.setThreshold(1e-10);
  if (lu.rank() < 2 * k) {
    out.push_back("coefficient vectors span a real subspace of dimension " +
                  std::to_string(lu.rank()) + " < 2k=" + std::to_string(2 * k) +
                  "; not realizable by a complex structure on the fiber");
  }
  return out;
}

}  // namespace hcf
