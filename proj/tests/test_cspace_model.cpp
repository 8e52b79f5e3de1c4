#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hcf/error.hpp"
#include "test_support.hpp"

using namespace hcf;
using namespace hcf::testing;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no hcf::Error raised");
  return ErrorCode::ConfigError;
}

RMatrix standard_J(int k) {
  RMatrix J = RMatrix::Zero(2 * k, 2 * k);
  for (int a = 0; a < k; ++a) {
    J(k + a, a) = 1.0;
    J(a, k + a) = -1.0;
  }
  return J;
}

}  // namespace

TEST_CASE("build_cspace: CE25 has s=2, m=5") {
  const CSpaceModel m = ce25();
  CHECK(m.s() == 2);
  CHECK(m.k() == 1);
  CHECK(m.total_dim() == 1 + 2 + 2);
  CHECK(m.warnings().empty());
}

TEST_CASE("build_cspace: total dimension sums factor dimensions") {
  FiberSpec fiber{2, {CVector::Ones(2), CVector::Ones(2), CVector::Ones(2)}};
  const CSpaceModel m = build_cspace(
      {gr(2, 3, 1.0), FactorSpec::make(FactorType::e7(), 1.0), FactorSpec::make(FactorType::sp_over_u(3), 2.0)},
      fiber);
  CHECK(m.total_dim() == 2 + 6 + 27 + 6);
}

TEST_CASE("build_cspace: error cases") {
  FiberSpec one{1, {CVector::Ones(1)}};
  CHECK(code_of([&] { build_cspace({gr(1, 1, 1.0)}, one); }) == ErrorCode::DimensionTooSmall);

  FactorSpec so = FactorSpec::make(FactorType::so_over_u(5), 1.0);
  so.dim_n = 9;
  CHECK(code_of([&] { build_cspace({so}, one); }) == ErrorCode::ShapeMismatch);

  const FactorSpec quad{FactorType::quadric(3), 3, 1.0};
  CHECK(code_of([&] { build_cspace({quad}, one); }) == ErrorCode::QuadricNotSupported);

  CHECK(code_of([&] { build_cspace({gr(1, 2, 1.0), gr(1, 2, 1.0)}, one); }) ==
        ErrorCode::ShapeMismatch);
  FiberSpec wrong_len{1, {CVector::Ones(2)}};
  CHECK(code_of([&] { build_cspace({gr(1, 2, 1.0)}, wrong_len); }) == ErrorCode::ShapeMismatch);
  CHECK(code_of([&] { build_cspace({gr(1, 2, 0.0)}, one); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { build_cspace({}, one); }) == ErrorCode::ShapeMismatch);
  FiberSpec nan{1, {CVector::Constant(1, cplx(std::nan(""), 0.0))}};
  CHECK(code_of([&] { build_cspace({gr(1, 2, 1.0)}, nan); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] {
          build_cspace({gr(1, 2, 1.0), gr(1, 2, 1.0)},
                       FiberSpec{1, {CVector::Ones(1), CVector::Ones(1)}}, {{0, 0}});
        }) == ErrorCode::InvalidArgument);
}

TEST_CASE("build_cspace: rebuilding from its own output is idempotent") {
  const CSpaceModel a = ce25(1.0, 2.0);
  const CSpaceModel b = build_cspace(a.factors(), a.fiber(), a.ce_blocks());
  CHECK(b.total_dim() == a.total_dim());
  CHECK(b.initial_A() == a.initial_A());
  for (int j = 0; j < a.s(); ++j) CHECK(b.fiber().c[j] == a.fiber().c[j]);
}

TEST_CASE("realizability: zero coefficient vector is flagged, not rejected") {
  FiberSpec fiber{1, {CVector::Zero(1), CVector::Constant(1, cplx(-0.25, 0.0))}};
  const CSpaceModel m = build_cspace({gr(1, 2, 1.0), gr(1, 2, 2.0)}, fiber);
  CHECK_FALSE(m.warnings().empty());
}

TEST_CASE("realizability: complex-parallel coefficients cannot span a real 2k-dim fibre") {
  // c^2 = 2 c^1 spans one real direction (times i) only.
  FiberSpec fiber{1, {CVector::Constant(1, cplx(0.3, 0.1)), CVector::Constant(1, cplx(0.6, 0.2))}};
  const CSpaceModel m = build_cspace({gr(1, 2, 1.0), gr(1, 2, 1.0)}, fiber);
  CHECK_FALSE(m.warnings().empty());
}

TEST_CASE("validate_metric") {
  const CSpaceModel m = ce25();
  CHECK_NOTHROW(validate_metric(m, ce25_init()));
  CHECK(code_of([&] { validate_metric(m, InvariantMetric{{1.0, 0.0}, CMatrix::Identity(1, 1)}); }) ==
        ErrorCode::NonPositiveMetric);
  CHECK(code_of([&] { validate_metric(m, InvariantMetric{{1.0}, CMatrix::Identity(1, 1)}); }) ==
        ErrorCode::ShapeMismatch);
  CHECK(code_of([&] { validate_metric(m, InvariantMetric{{1.0, 1.0}, CMatrix::Identity(2, 2)}); }) ==
        ErrorCode::ShapeMismatch);
  CHECK(code_of([&] { validate_metric(m, InvariantMetric{{1.0, 1.0}, -CMatrix::Identity(1, 1)}); }) ==
        ErrorCode::NonPositiveMetric);
  CMatrix nonherm(2, 2);
  nonherm << 1.0, 0.5, 0.0, 1.0;
  FiberSpec f2{2, {CVector::Ones(2)}};
  const CSpaceModel m2 = build_cspace({gr(1, 2, 1.0)}, f2);
  CHECK(code_of([&] { validate_metric(m2, InvariantMetric{{1.0}, nonherm}); }) ==
        ErrorCode::NonPositiveMetric);
}

TEST_CASE("fiber coefficients: CE25 hand computation") {
  ComplexStructureInput in;
  in.zf_coords = {RVector::Unit(2, 0), RVector::Unit(2, 1)};
  in.IF = standard_J(1);
  const FiberSpec f = fiber_coeffs_from_complex_structure(in, {gr(1, 2, 1.0), gr(1, 2, 1.0)});
  REQUIRE(f.k == 1);
  CHECK(std::abs(f.c[0](0) - (-0.25 * I)) < 1e-15);
  CHECK(std::abs(f.c[1](0) - cplx(-0.25, 0.0)) < 1e-15);
}

TEST_CASE("fiber coefficients: zero projection gives the zero vector") {
  ComplexStructureInput in;
  in.zf_coords = {RVector::Zero(2), RVector::Unit(2, 1)};
  in.IF = standard_J(1);
  const FiberSpec f = fiber_coeffs_from_complex_structure(in, {gr(1, 2, 1.0), gr(1, 2, 1.0)});
  CHECK(f.c[0].norm() == 0.0);
}

TEST_CASE("fiber coefficients: errors") {
  ComplexStructureInput in;
  in.zf_coords = {RVector::Unit(2, 0), RVector::Unit(2, 1)};
  in.IF = RMatrix::Identity(2, 2);
  const std::vector<FactorSpec> fs{gr(1, 2, 1.0), gr(1, 2, 1.0)};
  CHECK(code_of([&] { fiber_coeffs_from_complex_structure(in, fs); }) ==
        ErrorCode::NotAComplexStructure);

  // IF^2 = -1 but X_1 = e1 and IF e1 = e2 lie in a real 2-plane; X_2 = e2 is IF X_1.
  RMatrix J(4, 4);
  J.setZero();
  J(1, 0) = 1.0;
  J(0, 1) = -1.0;
  J(3, 2) = 1.0;
  J(2, 3) = -1.0;
  ComplexStructureInput deg;
  deg.zf_coords = {RVector::Unit(4, 0), RVector::Unit(4, 1)};
  deg.IF = J;
  CHECK(code_of([&] { fiber_coeffs_from_complex_structure(deg, fs); }) ==
        ErrorCode::DegenerateBasis);

  ComplexStructureInput shape;
  shape.zf_coords = {RVector::Unit(3, 0), RVector::Unit(2, 1)};
  shape.IF = standard_J(1);
  CHECK(code_of([&] { fiber_coeffs_from_complex_structure(shape, fs); }) ==
        ErrorCode::ShapeMismatch);
}

TEST_CASE("fiber coefficients: properties on random complex structures") {
  std::mt19937_64 rng(20261018);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 1 + trial % 3;
    RMatrix P(2 * k, 2 * k);
    for (int i = 0; i < 2 * k; ++i)
      for (int j = 0; j < 2 * k; ++j) P(i, j) = u(rng);
    P += 3.0 * RMatrix::Identity(2 * k, 2 * k);
    const RMatrix IF = P * standard_J(k) * P.inverse();
    // Skip draws where {X_a, IF X_a} (first k basis vectors) fail to span.
    RMatrix basis(2 * k, 2 * k);
    for (int a = 0; a < k; ++a) {
      basis.col(a) = RVector::Unit(2 * k, a);
      basis.col(k + a) = IF * RVector::Unit(2 * k, a);
    }
    if (std::abs(basis.determinant()) < 1e-3) continue;

    const int s = 2 + trial % 2;
    ComplexStructureInput in;
    in.IF = IF;
    std::vector<FactorSpec> fs;
    for (int j = 0; j < s; ++j) {
      RVector z(2 * k);
      for (int i = 0; i < 2 * k; ++i) z(i) = u(rng);
      in.zf_coords.push_back(z);
      fs.push_back(j % 2 ? gr(2, 2, 1.0) : gr(1, 2, 1.0));
    }
    const FiberSpec f = fiber_coeffs_from_complex_structure(in, fs);

    for (int j = 0; j < s; ++j) {
      // Reconstruct the (0,1)-projection from the V-bar coordinates.
      const CVector coords = f.c[j] * (2.0 * fs[j].dim_n) / (-I);
      CVector rebuilt = CVector::Zero(2 * k);
      for (int a = 0; a < k; ++a) {
        const CVector X = RVector::Unit(2 * k, a).cast<cplx>();
        const CVector JX = (IF * RVector::Unit(2 * k, a)).cast<cplx>();
        rebuilt += coords(a) * 0.5 * (X + I * JX);
      }
      const CVector z = in.zf_coords[j].cast<cplx>();
      const CVector v01 = 0.5 * (z + I * (IF * in.zf_coords[j]).cast<cplx>());
      CHECK((rebuilt - v01).norm() < 1e-10 * (1.0 + z.norm()));

      const CMatrix g = gamma_oracle(fs[j].dim_n, f.c[j]);
      CHECK((g - g.adjoint()).norm() == 0.0);
      Eigen::SelfAdjointEigenSolver<CMatrix> es(g);
      CHECK(es.eigenvalues().minCoeff() > -1e-14 * (1.0 + g.norm()));
      int rank = 0;
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > 1e-12 * (1.0 + g.norm())) ++rank;
      CHECK(rank <= 1);
    }

    // Real-linearity: 2.5 z_0 - 1.5 z_1 maps to 2.5 c_0 - 1.5 c_1 (same factor type).
    ComplexStructureInput mix = in;
    mix.zf_coords = {2.5 * in.zf_coords[0] - 1.5 * in.zf_coords[1], in.zf_coords[1]};
    const std::vector<FactorSpec> same{fs[0], fs[0]};
    ComplexStructureInput base = in;
    base.zf_coords.resize(2);
    const FiberSpec a = fiber_coeffs_from_complex_structure(base, same);
    const FiberSpec b = fiber_coeffs_from_complex_structure(mix, same);
    CHECK((b.c[0] - (2.5 * a.c[0] - 1.5 * a.c[1])).norm() < 1e-12 * (1.0 + a.c[0].norm()));
  }
}
