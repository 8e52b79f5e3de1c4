#include "hcf/catalog.hpp"

#include "hcf/error.hpp"

namespace hcf {

namespace {

void require_positive(int value, const char* what) {
  if (value < 1) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be >= 1");
  }
}

}  // namespace

CatalogEntry catalog_lookup(const FactorType& type) {
  CatalogEntry entry;
  switch (type.kind) {
    case FactorKind::Grassmannian:
      require_positive(type.p, "p");
      require_positive(type.q, "q");
      entry.dim_n = type.p * type.q;
      break;
    case FactorKind::SpOverU:
      require_positive(type.n, "n");
      entry.dim_n = type.n * (type.n + 1) / 2;
      break;
    case FactorKind::SOOverU:
      require_positive(type.n, "n");
      entry.dim_n = type.n * (type.n - 1) / 2;
      break;
    case FactorKind::EIII:
      entry.dim_n = 16;
      break;
    case FactorKind::EVII:
      entry.dim_n = 27;
      break;
    case FactorKind::Quadric:
      require_positive(type.n, "n");
      entry.dim_n = type.n;
      entry.admissible = false;
      entry.reason = "complex quadric excluded";
      return entry;
    default:
      throw Error(ErrorCode::UnknownType, "unrecognised factor kind");
  }
  if (entry.dim_n < 2) {
    entry.admissible = false;
    entry.reason = "dimension < 2";
  } else {
    entry.admissible = true;
  }
  return entry;
}

FactorKind parse_factor_kind(std::string_view name) {
  if (name == "grassmannian") return FactorKind::Grassmannian;
  if (name == "sp_over_u") return FactorKind::SpOverU;
  if (name == "so_over_u") return FactorKind::SOOverU;
  if (name == "e3") return FactorKind::EIII;
  if (name == "e7") return FactorKind::EVII;
  if (name == "quadric") return FactorKind::Quadric;
  throw Error(ErrorCode::UnknownType, "unrecognised factor kind '" + std::string(name) + "'");
}

std::string_view factor_kind_name(FactorKind kind) {
  switch (kind) {
    case FactorKind::Grassmannian: return "grassmannian";
    case FactorKind::SpOverU: return "sp_over_u";
    case FactorKind::SOOverU: return "so_over_u";
    case FactorKind::EIII: return "e3";
    case FactorKind::EVII: return "e7";
    case FactorKind::Quadric: return "quadric";
  }
  return "unknown";
}

std::string factor_label(const FactorType& type) {
  auto num = [](int v) { return std::to_string(v); };
  switch (type.kind) {
    case FactorKind::Grassmannian:
      return "SU(" + num(type.p + type.q) + ")/S(U(" + num(type.p) + ")xU(" + num(type.q) + "))";
    case FactorKind::SpOverU:
      return "Sp(" + num(type.n) + ")/U(" + num(type.n) + ")";
    case FactorKind::SOOverU:
      return "SO(" + num(2 * type.n) + ")/U(" + num(type.n) + ")";
    case FactorKind::EIII:
      return "E6/Spin(10)U(1)";
    case FactorKind::EVII:
      return "E7/E6U(1)";
    case FactorKind::Quadric:
      return "SO(" + num(type.n + 2) + ")/SO(2)xSO(" + num(type.n) + ")";
  }
  return "unknown";
}

std::vector<FactorType> catalog_representatives() {
  return {
      FactorType::grassmannian(1, 1), FactorType::grassmannian(1, 2),
      FactorType::grassmannian(1, 3), FactorType::grassmannian(2, 2),
      FactorType::grassmannian(2, 3), FactorType::sp_over_u(1),
      FactorType::sp_over_u(2),       FactorType::sp_over_u(3),
      FactorType::so_over_u(2),       FactorType::so_over_u(3),
      FactorType::so_over_u(5),       FactorType::e3(),
      FactorType::e7(),               FactorType::quadric(3),
      FactorType::quadric(5),
  };
}

}  // namespace hcf
