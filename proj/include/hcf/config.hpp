#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "hcf/cspace_model.hpp"

namespace hcf {

struct RunParams {
  std::optional<double> t_end;
  std::optional<int> steps;
  double V = 1.0;
  double tie_tol = 1e-12;
  std::string output;
};

/// Parsed batch configuration. Complex numbers are [re, im] pairs; factor
/// indices in "ce_blocks" are 1-based in the file and 0-based here.
struct RunConfig {
  std::vector<FactorSpec> factors;
  FiberSpec fiber;
  /// When present the fiber coefficients were derived from it.
  std::optional<ComplexStructureInput> structure;
  CEBlocks ce_blocks;
  CMatrix H0;
  RunParams run;

  CSpaceModel model() const;
  InvariantMetric initial() const;
};

/// Errors: ConfigError naming the offending field, plus whatever
/// fiber_coeffs_from_complex_structure raises.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// Re-parses to an identical configuration (doubles round-trip exactly).
nlohmann::json dump_config(const RunConfig& config);

nlohmann::json complex_to_json(cplx z);
nlohmann::json matrix_to_json(const CMatrix& m);
nlohmann::json vector_to_json(const CVector& v);

}  // namespace hcf
