#include "hcf/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hcf/catalog.hpp"
#include "hcf/config.hpp"
#include "hcf/error.hpp"
#include "hcf/flow_engine.hpp"
#include "hcf/hss_roots.hpp"
#include "hcf/limit_static.hpp"

namespace hcf::cli {

using nlohmann::json;

namespace {

struct Options {
  std::string config;
  std::string output;
  std::string dump_config;
  std::optional<double> t_end;
  std::optional<int> steps;
  std::optional<double> tie_tol;
  std::optional<double> V;
  std::optional<double> lambda;
  bool check = false;
  bool cross_check = false;
  int samples = 20;
  std::string limit_output;
};

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("HCF_OUTPUT_DIR"); dir && *dir) {
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

/// Writes to a file when a path is given, otherwise to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    const auto resolved = resolve_output(path);
    file_.open(resolved);
    if (!file_) throw Error(ErrorCode::ConfigError, "output: cannot write " + resolved.string());
    stream_ = &file_;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

std::vector<std::string> metric_header(int s, int k, const std::string& prefix) {
  std::vector<std::string> out;
  for (int i = 1; i <= s; ++i) out.push_back(prefix + "h_" + std::to_string(i));
  for (int a = 1; a <= k; ++a) {
    for (int b = a; b <= k; ++b) {
      const std::string idx = std::to_string(a) + "_" + std::to_string(b);
      out.push_back(prefix + "Re_H_" + idx);
      out.push_back(prefix + "Im_H_" + idx);
    }
  }
  out.push_back(prefix + "det_H");
  return out;
}

std::vector<double> metric_values(const InvariantMetric& m) {
  std::vector<double> out(m.h_base);
  const Eigen::Index k = m.H.rows();
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = a; b < k; ++b) {
      out.push_back(m.H(a, b).real());
      out.push_back(m.H(a, b).imag());
    }
  }
  out.push_back(hermitian_det(m.H));
  return out;
}

void append(std::vector<std::string>& cells, const std::vector<double>& values) {
  for (double v : values) cells.push_back(format_double(v));
}

json metric_json(const InvariantMetric& m) {
  return {{"h", m.h_base}, {"H", matrix_to_json(m.H)}};
}

std::vector<int> one_based(const std::vector<int>& idx) {
  std::vector<int> out(idx);
  for (int& v : out) ++v;
  return out;
}

RunConfig load(const Options& opt) {
  if (opt.config.empty()) throw Error(ErrorCode::ConfigError, "--config: missing");
  RunConfig cfg = load_config(opt.config);
  if (opt.t_end) cfg.run.t_end = opt.t_end;
  if (opt.steps) cfg.run.steps = opt.steps;
  if (opt.tie_tol) cfg.run.tie_tol = *opt.tie_tol;
  if (opt.V) cfg.run.V = *opt.V;
  if (!opt.output.empty()) cfg.run.output = opt.output;
  if (!opt.dump_config.empty()) {
    const auto path = resolve_output(opt.dump_config);
    std::ofstream os(path);
    if (!os) throw Error(ErrorCode::ConfigError, "--dump-config: cannot write " + path.string());
    os << dump_config(cfg).dump(2) << '\n';
  }
  return cfg;
}

int cmd_simulate(const Options& opt, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load(opt);
  if (!cfg.run.t_end) throw Error(ErrorCode::ConfigError, "run.t_end: missing (or pass --t-end)");
  const double t_end = *cfg.run.t_end;
  const int steps = cfg.run.steps.value_or(1000);
  if (steps < 1) throw Error(ErrorCode::ConfigError, "run.steps: must be >= 1");
  const CSpaceModel model = cfg.model();
  const InvariantMetric init = cfg.initial();

  const Extinction ext = extinction_time(init.h_base, cfg.run.tie_tol);
  if (!(t_end < ext.T)) throw Error(ErrorCode::PastExtinction, "T=" + format_double(ext.T));
  const Trajectory closed = sample_closed_form(model, init, t_end, steps);
  std::optional<Trajectory> rk;
  if (opt.cross_check) rk = integrate_rk4(model, init, t_end, steps);

  Sink sink(cfg.run.output, out);
  std::vector<std::string> header{"t"};
  for (auto& h : metric_header(model.s(), model.k(), "")) header.push_back(h);
  if (rk) {
    for (auto& h : metric_header(model.s(), model.k(), "rk4_")) header.push_back(h);
    header.push_back("abs_diff");
  }
  write_csv_row(sink.stream(), header);
  double max_diff = 0.0;
  for (std::size_t n = 0; n < closed.times.size(); ++n) {
    std::vector<std::string> cells{format_double(closed.times[n])};
    const auto cf = metric_values(closed.states[n]);
    append(cells, cf);
    if (rk) {
      const auto rv = metric_values(rk->states[n]);
      append(cells, rv);
      double diff = 0.0;
      for (std::size_t i = 0; i < cf.size(); ++i) diff = std::max(diff, std::abs(cf[i] - rv[i]));
      max_diff = std::max(max_diff, diff);
      cells.push_back(format_double(diff));
    }
    write_csv_row(sink.stream(), cells);
  }
  if (rk) err << "max |closed - rk4| = " << format_double(max_diff) << '\n';
  return kExitOk;
}

int cmd_limit(const Options& opt, std::ostream& out, std::ostream&) {
  const RunConfig cfg = load(opt);
  const CSpaceModel model = cfg.model();
  const InvariantMetric init = cfg.initial();
  const LimitForm lf = limit_form(model, init, cfg.run.tie_tol);

  json report;
  report["T"] = lf.T;
  report["p_set"] = one_based(lf.p_set);
  report["base_limits"] = lf.base_limits;
  report["q_hat"] = lf.q_hat;
  report["fiber_rank"] = lf.fiber_rank;
  report["fiber_limit"] = matrix_to_json(lf.fiber_limit);
  report["Zp_basis"] = matrix_to_json(lf.Zp_basis.transpose());
  report["mu"] = std::vector<double>(lf.mu.data(), lf.mu.data() + lf.mu.size());
  report["Lambda_hat"] = matrix_to_json(lf.Lambda_hat);
  report["kernel"] = lf.kernel_description;
  report["collapsing_group"] = lf.collapsing_group;

  // Approach to the limit on the geometric grid, with a monotonicity
  // certificate H(t_n) >= H(t_{n+1}).
  json samples = json::array();
  bool monotone = true;
  std::optional<CMatrix> previous = init.H;
  for (double t : near_extinction_grid(lf.T)) {
    const InvariantMetric h = closed_form_solution(model, init, t);
    const double scale = std::max(1.0, max_abs(h.H));
    if (min_hermitian_eigenvalue(*previous - h.H) < -1e-12 * scale) monotone = false;
    previous = h.H;
    samples.push_back({{"t", t},
                       {"T_minus_t", lf.T - t},
                       {"fiber_distance", max_abs(h.H - lf.fiber_limit)},
                       {"h", h.h_base}});
  }
  report["near_extinction"] = samples;
  report["monotone_nonincreasing"] = monotone;
  if (!model.ce_blocks().empty()) {
    const CollapseReport cr = collapse_structure_ce(model, init, cfg.run.tie_tol);
    report["collapse"] = {{"sigma", one_based(cr.sigma)},
                          {"I1", one_based(cr.I1)},
                          {"I2", one_based(cr.I2)},
                          {"collapsed_space", cr.description}};
  }
  report["warnings"] = model.warnings();

  Sink sink(cfg.run.output, out);
  sink.stream() << report.dump(2) << '\n';
  return kExitOk;
}

int cmd_static(const Options& opt, std::ostream& out, std::ostream&) {
  const RunConfig cfg = load(opt);
  const CSpaceModel model = cfg.model();
  json report;
  if (opt.lambda) {
    const StaticMetric sm = static_metric(model, *opt.lambda);
    report = {{"lambda", sm.lambda},
              {"h", sm.metric.h_base},
              {"H", matrix_to_json(sm.metric.H)},
              {"residual", sm.residual}};
  } else if (opt.check) {
    const StaticFit fit = static_residual(model, cfg.initial());
    report = {{"lambda_fit", fit.lambda_fit},
              {"residual", fit.residual},
              {"static", fit.residual <= 1e-12}};
  } else {
    throw Error(ErrorCode::ConfigError, "static: pass --lambda <value> or --check");
  }
  Sink sink(cfg.run.output, out);
  sink.stream() << report.dump(2) << '\n';
  return kExitOk;
}

int cmd_normalize(const Options& opt, std::ostream& out, std::ostream&) {
  const RunConfig cfg = load(opt);
  const CSpaceModel model = cfg.model();
  const InvariantMetric init = cfg.initial();
  const Extinction ext = extinction_time(init.h_base, cfg.run.tie_tol);

  std::vector<double> grid{0.0};
  for (double t : near_extinction_grid(ext.T, opt.samples)) grid.push_back(t);

  std::vector<NormalizedState> states;
  for (double t : grid) states.push_back(normalized_state(model, init, t, cfg.run.V, cfg.run.tie_tol));
  const double xi = states.front().xi_limit;
  if (!(xi > 0.0)) throw Error(ErrorCode::ThetaSingular, "Theta_s is singular, xi = 0");
  const StaticMetric limit = static_metric(model, 1.0 / xi);

  {
    Sink sink(cfg.run.output, out);
    std::vector<std::string> header{"t", "xi", "c"};
    for (auto& h : metric_header(model.s(), model.k(), "norm_")) header.push_back(h);
    write_csv_row(sink.stream(), header);
    for (const auto& st : states) {
      std::vector<std::string> cells{format_double(st.t), format_double(st.xi_of_t),
                                     format_double(st.c_of_t)};
      append(cells, metric_values(st.normalized_metric));
      write_csv_row(sink.stream(), cells);
    }
  }

  std::string limit_path = opt.limit_output;
  if (limit_path.empty() && !cfg.run.output.empty()) limit_path = cfg.run.output + ".limit.json";
  if (!limit_path.empty()) {
    Sink sink(limit_path, out);
    json report = {{"xi_limit", xi},
                   {"V", cfg.run.V},
                   {"lambda", limit.lambda},
                   {"static_metric", metric_json(limit.metric)},
                   {"static_residual", limit.residual}};
    sink.stream() << report.dump(2) << '\n';
  }
  return kExitOk;
}

json residual_json(const ResidualReport& r) {
  json entries = json::object();
  for (const auto& e : r.entries) entries[e.name] = e.value;
  return {{"residuals", entries}, {"max", r.max()}};
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream&) {
  CERealization ce;
  InvariantMetric metric;
  std::string output;
  if (!opt.config.empty()) {
    const RunConfig cfg = load(opt);
    output = cfg.run.output;
    if (cfg.factors.size() != 2 || cfg.factors[0].type.kind != FactorKind::Grassmannian ||
        cfg.factors[1].type.kind != FactorKind::Grassmannian || !cfg.structure || cfg.fiber.k != 1) {
      throw Error(ErrorCode::ConfigError,
                  "model: verify needs two Grassmannian factors and a k=1 complex_structure");
    }
    const auto& f = cfg.factors;
    ce = ce_realization(f[0].type.p, f[0].type.q, f[1].type.p, f[1].type.q, *cfg.structure);
    metric = cfg.initial();
  } else {
    output = opt.output;
    ce = ce25_realization();
    metric = InvariantMetric{{1.0, 1.0}, CMatrix::Identity(1, 1)};
  }

  json report;
  json roots = json::object();
  double worst = 0.0;
  for (const RootRealization* r : {&ce.block1, &ce.block2}) {
    const ResidualReport rr = verify_root_identities(*r);
    worst = std::max(worst, rr.max());
    roots["Gr(" + std::to_string(r->p) + "," + std::to_string(r->q) + ")"] = residual_json(rr);
  }
  const ResidualReport chern = verify_chern_tensors(ce, metric);
  worst = std::max(worst, chern.max());
  report["root_identities"] = roots;
  report["chern_tensors"] = residual_json(chern);
  report["metric"] = metric_json(metric);
  report["tolerance"] = kRootTolerance;
  report["pass"] = worst <= kRootTolerance;

  Sink sink(output, out);
  sink.stream() << report.dump(2) << '\n';
  return worst <= kRootTolerance ? kExitOk : kExitNumeric;
}

int cmd_catalog(const Options& opt, std::ostream& out, std::ostream&) {
  Sink sink(opt.output, out);
  std::ostream& os = sink.stream();
  os << std::left << std::setw(14) << "kind" << std::setw(8) << "params" << std::setw(26) << "space"
     << std::setw(7) << "dim_n" << std::setw(11) << "admissible" << "reason\n";
  for (const FactorType& t : catalog_representatives()) {
    const CatalogEntry e = catalog_lookup(t);
    std::string params;
    switch (t.kind) {
      case FactorKind::Grassmannian: params = std::to_string(t.p) + "," + std::to_string(t.q); break;
      case FactorKind::EIII:
      case FactorKind::EVII: params = "-"; break;
      default: params = std::to_string(t.n); break;
    }
    os << std::left << std::setw(14) << factor_kind_name(t.kind) << std::setw(8) << params
       << std::setw(26) << factor_label(t) << std::setw(7) << e.dim_n << std::setw(11)
       << (e.admissible ? "yes" : "no") << e.reason << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariant Hermitian curvature flow on C-spaces"};
  app.require_subcommand(1);
  Options opt;

  auto add_config = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--config,-c", opt.config, "JSON model/run configuration");
    if (required) o->required();
    sub->add_option("--output,-o", opt.output, "output file (default: stdout)");
    sub->add_option("--dump-config", opt.dump_config, "write the parsed configuration here");
    sub->add_option("--tie-tol", opt.tie_tol, "relative tolerance for ties among the A_i");
  };

  auto* simulate = app.add_subcommand("simulate", "closed-form (and RK4) flow as CSV");
  add_config(simulate, true);
  simulate->add_option("--t-end", opt.t_end, "final time (< T)");
  simulate->add_option("--steps", opt.steps, "number of steps / samples");
  simulate->add_flag("--cross-check", opt.cross_check, "also integrate with RK4");

  auto* limit = app.add_subcommand("limit", "limit form at the extinction time as JSON");
  add_config(limit, true);

  auto* stat = app.add_subcommand("static", "static metric for --lambda, or --check the initial metric");
  add_config(stat, true);
  stat->add_option("--lambda", opt.lambda, "scale lambda > 0");
  stat->add_flag("--check", opt.check, "fit lambda to the initial metric");

  auto* normalize = app.add_subcommand("normalize", "volume-normalised flow as CSV");
  add_config(normalize, true);
  normalize->add_option("--V", opt.V, "volume constant");
  normalize->add_option("--samples", opt.samples, "points on the near-extinction grid");
  normalize->add_option("--limit-output", opt.limit_output, "JSON file for the limit static metric");

  auto* verify = app.add_subcommand("verify", "first-principles tensor residuals as JSON");
  add_config(verify, false);

  auto* catalog = app.add_subcommand("catalog", "Hermitian symmetric factor table");
  catalog->add_option("--output,-o", opt.output, "output file (default: stdout)");

  std::vector<const char*> argv{"hcf"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(opt, out, err);
    if (*limit) return cmd_limit(opt, out, err);
    if (*stat) return cmd_static(opt, out, err);
    if (*normalize) return cmd_normalize(opt, out, err);
    if (*verify) return cmd_verify(opt, out, err);
    if (*catalog) return cmd_catalog(opt, out, err);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return is_numeric_failure(e.code()) ? kExitNumeric : kExitConfig;
  } catch (const std::exception& e) {
    err << "ConfigError: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace hcf::cli
