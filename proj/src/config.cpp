#include "hcf/config.hpp"

#include <fstream>
#include <sstream>

#include "hcf/error.hpp"

namespace hcf {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ConfigError, field + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing");
  return *it;
}

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

int get_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<int>();
}

cplx get_complex(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2) fail(field, "expected [re, im]");
  return {get_number(v[0], field + "[0]"), get_number(v[1], field + "[1]")};
}

CMatrix get_complex_matrix(const json& v, int n, const std::string& field) {
  if (!v.is_array() || static_cast<int>(v.size()) != n) {
    fail(field, "expected " + std::to_string(n) + " rows");
  }
  CMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const std::string row_field = field + "[" + std::to_string(r) + "]";
    if (!v[r].is_array() || static_cast<int>(v[r].size()) != n) {
      fail(row_field, "expected " + std::to_string(n) + " entries");
    }
    for (int c = 0; c < n; ++c) m(r, c) = get_complex(v[r][c], row_field + "[" + std::to_string(c) + "]");
  }
  return m;
}

RMatrix get_real_matrix(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) fail(field, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  if (!v[0].is_array()) fail(field + "[0]", "expected an array");
  const auto cols = static_cast<Eigen::Index>(v[0].size());
  RMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::string row_field = field + "[" + std::to_string(r) + "]";
    if (!v[r].is_array() || static_cast<Eigen::Index>(v[r].size()) != cols) {
      fail(row_field, "expected " + std::to_string(cols) + " entries");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = get_number(v[r][c], row_field + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

FactorSpec parse_factor(const json& f, const std::string& path) {
  if (!f.is_object()) fail(path, "expected an object");
  const json& kind_field = require(f, "kind", path);
  if (!kind_field.is_string()) fail(path + ".kind", "expected a string");
  FactorType type;
  try {
    type.kind = parse_factor_kind(kind_field.get<std::string>());
  } catch (const Error& e) {
    fail(path + ".kind", e.detail());
  }
  switch (type.kind) {
    case FactorKind::Grassmannian:
      type.p = get_int(require(f, "p", path), path + ".p");
      type.q = get_int(require(f, "q", path), path + ".q");
      break;
    case FactorKind::SpOverU:
    case FactorKind::SOOverU:
    case FactorKind::Quadric:
      type.n = get_int(require(f, "n", path), path + ".n");
      break;
    case FactorKind::EIII:
    case FactorKind::EVII:
      break;
  }
  FactorSpec spec;
  spec.type = type;
  try {
    spec.dim_n = catalog_lookup(type).dim_n;
  } catch (const Error& e) {
    fail(path, e.detail());
  }
  if (f.contains("dim_n")) spec.dim_n = get_int(f["dim_n"], path + ".dim_n");
  spec.A = get_number(require(f, "A", path), path + ".A");
  return spec;
}

}  // namespace

CSpaceModel RunConfig::model() const {
  return build_cspace(factors, fiber, ce_blocks);
}

InvariantMetric RunConfig::initial() const {
  return initial_metric(model(), H0);
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) fail("<root>", "expected an object");
  RunConfig cfg;
  const json& model = require(doc, "model", "<root>");
  const json& factors = require(model, "factors", "model");
  if (!factors.is_array() || factors.empty()) fail("model.factors", "expected a non-empty array");
  for (std::size_t j = 0; j < factors.size(); ++j) {
    cfg.factors.push_back(parse_factor(factors[j], "model.factors[" + std::to_string(j) + "]"));
  }

  const json& fiber = require(model, "fiber", "model");
  cfg.fiber.k = get_int(require(fiber, "k", "model.fiber"), "model.fiber.k");
  if (cfg.fiber.k < 1) fail("model.fiber.k", "must be >= 1");
  const bool has_c = fiber.contains("c");
  const bool has_structure = fiber.contains("complex_structure");
  if (has_c == has_structure) {
    fail("model.fiber", "give exactly one of 'c' and 'complex_structure'");
  }
  if (has_c) {
    const json& c = fiber["c"];
    if (!c.is_array()) fail("model.fiber.c", "expected an array of vectors");
    for (std::size_t j = 0; j < c.size(); ++j) {
      const std::string field = "model.fiber.c[" + std::to_string(j) + "]";
      if (!c[j].is_array()) fail(field, "expected an array of [re, im]");
      CVector v(static_cast<Eigen::Index>(c[j].size()));
      for (std::size_t l = 0; l < c[j].size(); ++l) {
        v(static_cast<Eigen::Index>(l)) = get_complex(c[j][l], field + "[" + std::to_string(l) + "]");
      }
      cfg.fiber.c.push_back(v);
    }
  } else {
    const json& cs = fiber["complex_structure"];
    const std::string path = "model.fiber.complex_structure";
    ComplexStructureInput input;
    input.IF = get_real_matrix(require(cs, "IF", path), path + ".IF");
    const RMatrix z = get_real_matrix(require(cs, "zf_coords", path), path + ".zf_coords");
    for (Eigen::Index j = 0; j < z.rows(); ++j) input.zf_coords.push_back(z.row(j).transpose());
    if (input.IF.rows() != 2 * cfg.fiber.k) fail(path + ".IF", "must be 2k x 2k");
    cfg.fiber = fiber_coeffs_from_complex_structure(input, cfg.factors);
    cfg.structure = input;
  }

  if (model.contains("ce_blocks")) {
    const json& blocks = model["ce_blocks"];
    if (!blocks.is_array()) fail("model.ce_blocks", "expected an array of index pairs");
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const std::string field = "model.ce_blocks[" + std::to_string(b) + "]";
      if (!blocks[b].is_array() || blocks[b].size() != 2) fail(field, "expected [i, j]");
      cfg.ce_blocks.emplace_back(get_int(blocks[b][0], field) - 1, get_int(blocks[b][1], field) - 1);
    }
  }

  cfg.H0 = CMatrix::Identity(cfg.fiber.k, cfg.fiber.k);
  if (doc.contains("initial")) {
    const json& init = doc["initial"];
    if (init.contains("H0")) cfg.H0 = get_complex_matrix(init["H0"], cfg.fiber.k, "initial.H0");
  }

  if (doc.contains("run")) {
    const json& run = doc["run"];
    if (!run.is_object()) fail("run", "expected an object");
    if (run.contains("t_end")) cfg.run.t_end = get_number(run["t_end"], "run.t_end");
    if (run.contains("steps")) cfg.run.steps = get_int(run["steps"], "run.steps");
    if (run.contains("V")) cfg.run.V = get_number(run["V"], "run.V");
    if (run.contains("tie_tol")) cfg.run.tie_tol = get_number(run["tie_tol"], "run.tie_tol");
    if (run.contains("output")) {
      if (!run["output"].is_string()) fail("run.output", "expected a string");
      cfg.run.output = run["output"].get<std::string>();
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, path + ": cannot open");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, path + ": " + e.what());
  }
  return parse_config(doc);
}

json complex_to_json(cplx z) {
  return json::array({z.real(), z.imag()});
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

json vector_to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

json dump_config(const RunConfig& config) {
  json factors = json::array();
  for (const auto& f : config.factors) {
    json item;
    item["kind"] = std::string(factor_kind_name(f.type.kind));
    switch (f.type.kind) {
      case FactorKind::Grassmannian:
        item["p"] = f.type.p;
        item["q"] = f.type.q;
        break;
      case FactorKind::SpOverU:
      case FactorKind::SOOverU:
      case FactorKind::Quadric:
        item["n"] = f.type.n;
        break;
      default:
        break;
    }
    item["dim_n"] = f.dim_n;
    item["A"] = f.A;
    factors.push_back(item);
  }
  json fiber;
  fiber["k"] = config.fiber.k;
  if (config.structure) {
    json z = json::array();
    for (const auto& row : config.structure->zf_coords) {
      z.push_back(std::vector<double>(row.data(), row.data() + row.size()));
    }
    json IF = json::array();
    for (Eigen::Index r = 0; r < config.structure->IF.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < config.structure->IF.cols(); ++c) row.push_back(config.structure->IF(r, c));
      IF.push_back(row);
    }
    fiber["complex_structure"] = {{"zf_coords", z}, {"IF", IF}};
  } else {
    json c = json::array();
    for (const auto& v : config.fiber.c) c.push_back(vector_to_json(v));
    fiber["c"] = c;
  }
  json model = {{"factors", factors}, {"fiber", fiber}};
  if (!config.ce_blocks.empty()) {
    json blocks = json::array();
    for (const auto& [a, b] : config.ce_blocks) blocks.push_back({a + 1, b + 1});
    model["ce_blocks"] = blocks;
  }
  json run;
  if (config.run.t_end) run["t_end"] = *config.run.t_end;
  if (config.run.steps) run["steps"] = *config.run.steps;
  run["V"] = config.run.V;
  run["tie_tol"] = config.run.tie_tol;
  if (!config.run.output.empty()) run["output"] = config.run.output;
  return json{{"model", model}, {"initial", {{"H0", matrix_to_json(config.H0)}}}, {"run", run}};
}

}  // namespace hcf
