#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hcf/cli.hpp"
#include "hcf/config.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kCe25 = std::string(HCF_TEST_DATA_DIR) + "/ce25.json";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = hcf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("hcf_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path write_json(const fs::path& path, const json& doc) {
  std::ofstream os(path);
  os << doc.dump(2);
  return path;
}

json ce25_doc() {
  std::ifstream is(kCe25);
  return json::parse(is);
}

}  // namespace

TEST_CASE("simulate --cross-check: closed form and RK4 agree") {
  const Result r = run({"simulate", "--config", kCe25, "--t-end", "1.0", "--steps", "1000", "--cross-check"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 1002);
  const std::vector<std::string> header{"t", "h_1", "h_2", "Re_H_1_1", "Im_H_1_1", "det_H",
                                        "rk4_h_1", "rk4_h_2", "rk4_Re_H_1_1", "rk4_Im_H_1_1",
                                        "rk4_det_H", "abs_diff"};
  CHECK(rows[0] == header);
  double worst = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == header.size());
    worst = std::max(worst, std::stod(rows[i].back()));
  }
  CHECK(worst <= 1e-8);
  CHECK(std::stod(rows.back()[0]) == 1.0);
  CHECK(std::abs(std::stod(rows.back()[3]) - 2.0 / 3.0) < 1e-15);
}

TEST_CASE("simulate: without cross-check and steps default") {
  const Result r = run({"simulate", "--config", kCe25, "--t-end", "0.5"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  CHECK(rows.size() == 1002);
  CHECK(rows[0].size() == 6);
}

TEST_CASE("static --lambda 1.0") {
  const Result r = run({"static", "--config", kCe25, "--lambda", "1.0"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["h"] == json::array({0.5, 0.5}));
  CHECK(std::abs(j["H"][0][0][0].get<double>() - 1.0) < 1e-15);
  CHECK(j["H"][0][0][1].get<double>() == 0.0);
  CHECK(j["residual"].get<double>() <= 1e-12);
}

TEST_CASE("static --check and bad lambda") {
  const Result r = run({"static", "--config", kCe25, "--check"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["static"] == false);
  CHECK(j["residual"].get<double>() > 0.0);

  const Result bad = run({"static", "--config", kCe25, "--lambda", "0"});
  CHECK(bad.code == 2);
  CHECK(bad.err.rfind("NoStaticForNonpositiveLambda", 0) == 0);
  const Result none = run({"static", "--config", kCe25});
  CHECK(none.code == 2);
}

TEST_CASE("simulate past extinction exits 3") {
  const Result r = run({"simulate", "--config", kCe25, "--t-end", "3.0"});
  CHECK(r.code == 3);
  CHECK(r.err == "PastExtinction: T=2\n");
}

TEST_CASE("singular Theta_s exits 3") {
  json doc = ce25_doc();
  doc["model"]["fiber"].erase("complex_structure");
  doc["model"]["fiber"]["c"] = json::array({json::array({json::array({0.0, 0.0})}),
                                            json::array({json::array({0.0, 0.0})})});
  doc["model"].erase("ce_blocks");
  const fs::path p = write_json(scratch_dir() / "zero.json", doc);
  const Result r = run({"static", "--config", p.string(), "--lambda", "1"});
  CHECK(r.code == 3);
  CHECK(r.err.rfind("ThetaSingular", 0) == 0);
}

TEST_CASE("config errors exit 2 and name the field") {
  json doc = ce25_doc();
  doc["model"]["factors"][0].erase("p");
  const fs::path p = write_json(scratch_dir() / "missing.json", doc);
  const Result r = run({"limit", "--config", p.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("model.factors[0].p") != std::string::npos);

  const Result missing = run({"limit", "--config", "/nonexistent/x.json"});
  CHECK(missing.code == 2);

  json quad = ce25_doc();
  quad["model"]["factors"][0] = {{"kind", "quadric"}, {"n", 3}, {"A", 1.0}};
  const fs::path q = write_json(scratch_dir() / "quadric.json", quad);
  const Result rq = run({"limit", "--config", q.string()});
  CHECK(rq.code == 2);
  CHECK(rq.err.rfind("QuadricNotSupported", 0) == 0);

  json notcs = ce25_doc();
  notcs["model"]["fiber"]["complex_structure"]["IF"] = json::array({json::array({1.0, 0.0}), json::array({0.0, 1.0})});
  const fs::path n = write_json(scratch_dir() / "notcs.json", notcs);
  const Result rn = run({"limit", "--config", n.string()});
  CHECK(rn.code == 2);
  CHECK(rn.err.rfind("NotAComplexStructure", 0) == 0);

  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"simulate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("limit report") {
  const Result r = run({"limit", "--config", kCe25});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["T"] == 2.0);
  CHECK(j["p_set"] == json::array({1, 2}));
  CHECK(j["q_hat"] == 1);
  CHECK(j["collapse"]["collapsed_space"] == "point");
  CHECK(j["monotone_nonincreasing"] == true);
  CHECK(j["near_extinction"].size() == 20);
  CHECK(j["collapsing_group"] == "G₁·G₂");
}

TEST_CASE("normalize writes CSV and the limit static metric") {
  const fs::path dir = scratch_dir();
  ::setenv("HCF_OUTPUT_DIR", dir.c_str(), 1);
  const Result r = run({"normalize", "--config", kCe25, "--output", "norm.csv"});
  ::unsetenv("HCF_OUTPUT_DIR");
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(slurp(dir / "norm.csv"));
  REQUIRE(rows.size() == 22);
  CHECK(rows[0][0] == "t");
  CHECK(rows[0][1] == "xi");
  const json lim = json::parse(slurp(dir / "norm.csv.limit.json"));
  CHECK(std::abs(lim["xi_limit"].get<double>() - 1.0) < 1e-12);
  CHECK(std::abs(lim["static_metric"]["h"][0].get<double>() - 0.5) < 1e-12);

  json unequal = ce25_doc();
  unequal["model"]["factors"][1]["A"] = 2.0;
  const fs::path p = write_json(dir / "unequal.json", unequal);
  CHECK(run({"normalize", "--config", p.string()}).code == 2);
}

TEST_CASE("verify: default CE25 and from a config") {
  const Result a = run({"verify"});
  REQUIRE(a.code == 0);
  const json ja = json::parse(a.out);
  CHECK(ja["pass"] == true);
  CHECK(ja["chern_tensors"]["max"].get<double>() <= 1e-12);
  CHECK(ja["root_identities"].contains("Gr(1,2)"));

  const Result b = run({"verify", "--config", kCe25});
  REQUIRE(b.code == 0);
  CHECK(json::parse(b.out)["pass"] == true);
}

TEST_CASE("catalog table") {
  const Result r = run({"catalog"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("complex quadric excluded") != std::string::npos);
  CHECK(r.out.find("e7") != std::string::npos);
}

TEST_CASE("--dump-config round-trips bit-exactly") {
  const fs::path dir = scratch_dir();
  json doc = ce25_doc();
  doc["model"]["fiber"].erase("complex_structure");
  doc["model"]["fiber"]["k"] = 2;
  doc["model"]["fiber"]["c"] = json::array(
      {json::array({json::array({0.1, -1.0 / 3.0}), json::array({2.0 / 7.0, 1e-17})}),
       json::array({json::array({-0.7071067811865476, 0.3}), json::array({5e-300, 0.9999999999999999})})});
  doc["initial"]["H0"] = json::array({json::array({json::array({1.1, 0.0}), json::array({0.2, 0.3})}),
                                      json::array({json::array({0.2, -0.3}), json::array({2.0 / 3.0, 0.0})})});
  doc["model"]["factors"][1]["A"] = 1.0 + 1e-13;
  doc["model"].erase("ce_blocks");
  doc["run"]["t_end"] = 0.123456789012345678;
  const fs::path src = write_json(dir / "src.json", doc);

  for (const fs::path& config : {src, fs::path(kCe25)}) {
    const fs::path dumped = dir / "dumped.json";
    REQUIRE(run({"limit", "--config", config.string(), "--dump-config", dumped.string()}).code == 0);
    const hcf::RunConfig a = hcf::load_config(config.string());
    const hcf::RunConfig b = hcf::load_config(dumped.string());
    REQUIRE(a.factors.size() == b.factors.size());
    for (std::size_t j = 0; j < a.factors.size(); ++j) {
      CHECK(a.factors[j].type == b.factors[j].type);
      CHECK(a.factors[j].dim_n == b.factors[j].dim_n);
      CHECK(a.factors[j].A == b.factors[j].A);
      CHECK(a.fiber.c[j] == b.fiber.c[j]);
    }
    CHECK(a.fiber.k == b.fiber.k);
    CHECK(a.H0 == b.H0);
    CHECK(a.ce_blocks == b.ce_blocks);
    CHECK(a.run.t_end == b.run.t_end);
    CHECK(a.run.V == b.run.V);
    CHECK(a.run.tie_tol == b.run.tie_tol);
    CHECK(hcf::dump_config(a).dump() == hcf::dump_config(b).dump());
  }
}

TEST_CASE("CSV is locale independent") {
  std::locale previous;
  try {
    std::locale::global(std::locale("de_DE.UTF-8"));
  } catch (const std::runtime_error&) {
    std::locale::global(std::locale(std::locale::classic(), new std::numpunct_byname<char>("C")));
  }
  const Result r = run({"simulate", "--config", kCe25, "--t-end", "1.0", "--steps", "4"});
  std::locale::global(previous);
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  for (const auto& row : rows) CHECK(row.size() == rows[0].size());
  CHECK(rows[4][0] == "0.75");
}
