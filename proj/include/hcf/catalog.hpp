#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hcf {

/// Irreducible compact Hermitian symmetric spaces G/K, plus the quadric
/// type so that it can be recognised and rejected.
enum class FactorKind { Grassmannian, SpOverU, SOOverU, EIII, EVII, Quadric };

struct FactorType {
  FactorKind kind = FactorKind::Grassmannian;
  int p = 0;  // Grassmannian only
  int q = 0;  // Grassmannian only
  int n = 0;  // SpOverU, SOOverU, Quadric

  static FactorType grassmannian(int p, int q) { return {FactorKind::Grassmannian, p, q, 0}; }
  static FactorType sp_over_u(int n) { return {FactorKind::SpOverU, 0, 0, n}; }
  static FactorType so_over_u(int n) { return {FactorKind::SOOverU, 0, 0, n}; }
  static FactorType e3() { return {FactorKind::EIII, 0, 0, 0}; }
  static FactorType e7() { return {FactorKind::EVII, 0, 0, 0}; }
  static FactorType quadric(int n) { return {FactorKind::Quadric, 0, 0, n}; }

  bool operator==(const FactorType&) const = default;
};

struct CatalogEntry {
  int dim_n = 0;
  bool admissible = false;
  std::string reason;  // empty when admissible
};

/// Complex dimension of the factor and whether it satisfies the standing
/// hypotheses (dimension at least two, not a quadric).
/// Throws UnknownType for an out-of-range kind, InvalidArgument for
/// non-positive parameters.
CatalogEntry catalog_lookup(const FactorType& type);

/// Config keyword <-> kind. parse throws UnknownType.
FactorKind parse_factor_kind(std::string_view name);
std::string_view factor_kind_name(FactorKind kind);

/// "Gr(1,2)", "Sp(3)/U(3)", ... for reports.
std::string factor_label(const FactorType& type);

/// One representative row per family for the catalog table.
std::vector<FactorType> catalog_representatives();

}  // namespace hcf
