// Command-line front end: simulate, estimate, oracle, evaluate, roc, stability.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dasg/augment.hpp"
#include "dasg/error.hpp"
#include "dasg/estimator.hpp"
#include "dasg/io.hpp"
#include "dasg/irrep.hpp"
#include "dasg/kernels.hpp"
#include "dasg/lcm.hpp"
#include "dasg/operators.hpp"
#include "dasg/simgen.hpp"
#include "dasg/tuning.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using namespace dasg;

struct SolverFlags {
  double rho = 1.0;
  double tol = 1e-6;
  int max_iter = 2000;

  void add(CLI::App* cmd) {
    cmd->add_option("--rho", rho, "ADMM penalty")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--tol", tol, "relative primal and dual tolerance")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", max_iter, "ADMM iteration cap")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  }
  SolverConfig config(double lambda = 0.0) const {
    SolverConfig c;
    c.rho = rho;
    c.tol_primal = tol;
    c.tol_dual = tol;
    c.max_iter = max_iter;
    c.lambda = lambda;
    return c;
  }
};

struct GridFlags {
  int points = 50;
  double ratio = 1e-3;

  void add(CLI::App* cmd) {
    cmd->add_option("--grid-points", points, "number of lambda values")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--grid-ratio", ratio, "smallest / largest lambda")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
  }
};

struct DataFlags {
  std::string data;
  std::string labels;

  void add(CLI::App* cmd) {
    cmd->add_option("--data", data, "dataset CSV")->required();
    cmd->add_option("--labels", labels, "label-map sidecar (fixes the number of levels)");
  }
  Dataset load() const {
    return io::read_dataset(data, labels.empty() ? std::nullopt : std::optional<fs::path>(labels));
  }
};

json metrics_json(const GraphMetrics& m) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"tpr", opt(m.tpr)},
          {"tnr", opt(m.tnr)},
          {"f1", opt(m.f1)},
          {"true_positives", m.true_positives},
          {"estimated_edges", m.estimated_edges},
          {"true_edges", m.true_edges}};
}

json fit_json(const FitResult& fit, const SolverConfig& cfg) {
  return {{"lambda", fit.lambda},
          {"iterations", fit.iterations},
          {"converged", fit.converged},
          {"primal_residual", fit.primal_residual},
          {"dual_residual", fit.dual_residual},
          {"objective", fit.objective},
          {"edges", fit.edges.edge_count()},
          {"rho", cfg.rho},
          {"tol", cfg.tol_primal},
          {"max_iter", cfg.max_iter}};
}

json cv_json(const CVReport& cv, std::uint64_t seed) {
  json rows = json::array();
  for (std::size_t l = 0; l < cv.grid.values.size(); ++l) {
    rows.push_back({{"lambda", cv.grid.values[l]},
                    {"mean_val_loss", cv.mean_val_loss[l]},
                    {"se", cv.se[l]}});
  }
  return {{"folds", cv.folds},
          {"seed", seed},
          {"grid_points", cv.grid.n_points},
          {"grid_ratio", cv.grid.ratio},
          {"chosen_lambda", cv.chosen_lambda},
          {"chosen_index", cv.chosen_index},
          {"path", rows}};
}

std::vector<int> parse_nodes(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
      out.push_back(v - 1);
    } catch (const std::exception&) {
      throw UsageError("bad node list '" + text + "' (expected 1-based indices like 3,4,5)");
    }
  }
  return out;
}

void warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

// --- simulate ---------------------------------------------------------------

struct SimulateCmd {
  CLI::App* cmd = nullptr;
  int model = 1;
  int p = 0;
  int n = 300;
  std::uint64_t seed = 1;
  std::string method;
  int burn_in = GibbsConfig{}.burn_in;
  int thin = GibbsConfig{}.thin;
  std::string out = ".";

  void add(CLI::App& app) {
    CLI::App* c = app.add_subcommand("simulate", "draw a dataset from one of the simulation models");
    c->add_option("--model", model, "model id (1-4)")->required()->check(CLI::Range(1, 4));
    c->add_option("--p", p, "number of nodes")->required()->check(CLI::PositiveNumber);
    c->add_option("--n", n, "sample size")->capture_default_str()->check(CLI::Range(2, 100'000'000));
    c->add_option("--seed", seed, "random seed")->capture_default_str();
    c->add_option("--method", method, "Ising sampler: exact or gibbs (default: exact up to 20 nodes)")
        ->check(CLI::IsMember({"exact", "gibbs"}));
    c->add_option("--burn-in", burn_in, "Gibbs burn-in sweeps")->capture_default_str()->check(CLI::NonNegativeNumber);
    c->add_option("--thin", thin, "Gibbs sweeps between rows")->capture_default_str()->check(CLI::PositiveNumber);
    c->add_option("--out", out, "output directory")->capture_default_str();
    cmd = c;
  }

  void run() const {
    const PatternSpec spec = pattern(model, p);
    std::optional<IsingMethod> m;
    if (method == "exact") m = IsingMethod::exact;
    if (method == "gibbs") m = IsingMethod::gibbs;
    const GibbsConfig gibbs{burn_in, thin};
    const Dataset data = simulate(spec, n, seed, m, gibbs);
    const fs::path dir(out);
    io::write_dataset(dir / "data.csv", data);
    io::write_labels(dir / "labels.txt", data);
    io::write_edges(dir / "truth.tsv", spec.truth);
    json prov = {{"model", model}, {"p", p}, {"n", n}, {"seed", seed}};
    if (spec.ising) {
      const IsingMethod used = m.value_or(p <= kExactIsingMaxNodes ? IsingMethod::exact : IsingMethod::gibbs);
      prov["method"] = method_name(used);
      if (used == IsingMethod::gibbs) {
        prov["burn_in"] = burn_in;
        prov["thin"] = thin;
      }
    } else {
      prov["method"] = "sign-gaussian";
    }
    prov["rng"] = "mt19937_64";
    io::write_json(dir / "provenance.json", prov);
  }
};

// --- estimate ---------------------------------------------------------------

struct EstimateCmd {
  CLI::App* cmd = nullptr;
  DataFlags data;
  SolverFlags solver;
  GridFlags grid;
  std::optional<double> lambda;
  int cv = 0;
  std::uint64_t seed = 1;
  bool theta = false;
  std::string out = ".";
  int* threads = nullptr;
  int exit_code = 0;

  void add(CLI::App& app, int* thread_count) {
    threads = thread_count;
    CLI::App* c = app.add_subcommand("estimate", "fit the D-trace group-Lasso estimator");
    data.add(c);
    solver.add(c);
    grid.add(c);
    auto* l = c->add_option("--lambda", lambda, "penalty level")->check(CLI::NonNegativeNumber);
    auto* k = c->add_option("--cv", cv, "choose lambda by K-fold cross-validation")->check(CLI::Range(2, 1000));
    l->excludes(k);
    c->add_option("--seed", seed, "fold-shuffling seed")->capture_default_str();
    c->add_flag("--theta", theta, "also write the dense estimate");
    c->add_option("--out", out, "output directory")->capture_default_str();
    cmd = c;
  }

  void run() {
    if (!lambda && cv == 0) throw UsageError("estimate needs --lambda or --cv K");
    const Dataset d = data.load();
    const BlockMatrix sigma = sample_davo(d);
    const fs::path dir(out);
    double lam = lambda.value_or(0.0);
    if (cv > 0) {
      const LambdaGrid g = lambda_grid(sigma, grid.points, grid.ratio);
      const CVReport report = cross_validate(d, cv, g, solver.config(), seed, *threads);
      io::write_json(dir / "cv.json", cv_json(report, seed));
      lam = report.chosen_lambda;
    }
    const SolverConfig cfg = solver.config(lam);
    const FitResult fit = fit_dtrace(sigma, cfg);
    io::write_edges(dir / "edges.tsv", fit.edges);
    json diag = fit_json(fit, cfg);
    const KktReport kkt = kkt_certificate(fit.theta, sigma, lam);
    diag["kkt_worst"] = kkt.worst();
    diag["kkt_tolerance"] = kkt_tolerance(fit, cfg);
    io::write_json(dir / "fit.json", diag);
    if (theta) io::write_matrix_csv(dir / "theta.csv", fit.theta.data());
    if (fit.edges.edge_count() == 0) warn("the fit selected no edges");
    if (!fit.converged) {
      std::cerr << "error: ADMM did not converge within " << cfg.max_iter << " iterations\n";
      exit_code = static_cast<int>(ErrorKind::numerical);
    }
  }
};

// --- oracle -----------------------------------------------------------------

struct OracleCmd {
  CLI::App* cmd = nullptr;
  std::string pmf_path;
  std::string ising_path;
  std::string augment_nodes;
  bool irrep = false;
  std::vector<std::string> lcm;
  double lcm_tol = 1e-10;
  std::string out = ".";

  void add(CLI::App& app) {
    CLI::App* c = app.add_subcommand("oracle", "exact population operators of a p.m.f.");
    auto* a = c->add_option("--pmf", pmf_path, "joint p.m.f. file");
    auto* b = c->add_option("--ising", ising_path, "Ising coupling matrix CSV");
    a->excludes(b);
    c->add_option("--augment", augment_nodes, "separator R (1-based, comma separated) to augment over");
    c->add_flag("--irrep", irrep, "write irrepresentable-condition diagnostics");
    c->add_option("--lcm", lcm, "linear conditional mean check 'i:D', e.g. 1:3,4,5 (repeatable)");
    c->add_option("--lcm-tol", lcm_tol, "residual tolerance for --lcm")->capture_default_str();
    c->add_option("--out", out, "output directory")->capture_default_str();
    cmd = c;
  }

  void run() const {
    if (pmf_path.empty() == ising_path.empty()) throw UsageError("oracle needs exactly one of --pmf, --ising");
    JointPMF pmf = pmf_path.empty() ? ising_pmf(io::read_ising(ising_path)) : io::read_pmf(pmf_path);
    const fs::path dir(out);
    json extras = json::array();
    if (!augment_nodes.empty()) {
      AugmentedPmf aug = augment(pmf, parse_nodes(augment_nodes));
      for (const auto& subset : aug.scheme.extra) {
        std::vector<int> one_based;
        for (int v : subset) one_based.push_back(v + 1);
        extras.push_back(one_based);
      }
      pmf = std::move(aug.pmf);
    }
    const BlockMatrix vd = vertex_davo(pmf);
    const BlockMatrix vp = invert_spd(vd);
    const BlockMatrix od = orthonormal_davo(pmf);
    const BlockMatrix op = invert_spd(od);
    io::write_matrix_csv(dir / "vertex_davo.csv", vd.data());
    io::write_matrix_csv(dir / "vertex_dapo.csv", vp.data());
    io::write_matrix_csv(dir / "orthonormal_davo.csv", od.data());
    io::write_matrix_csv(dir / "orthonormal_dapo.csv", op.data());
    io::write_matrix_csv(dir / "hs_norms.csv", block_frobenius_norms(op));
    io::write_edges(dir / "edges.tsv", edges_from_blocks(vp, kPopulationZeroTol));
    json summary = {{"p", pmf.p()}, {"dim", pmf.scheme().dim()}, {"support_points", pmf.size()}};
    if (!extras.empty()) summary["augmented_products"] = extras;
    if (irrep) {
      const IrrepReport r = irrep_diagnostics(pmf);
      io::write_json(dir / "irrep.json", {{"gamma", r.gamma},
                                          {"kappa_gamma", r.kappa_gamma},
                                          {"kappa_sigma", r.kappa_sigma},
                                          {"d", r.d},
                                          {"holds", r.holds}});
    }
    if (!lcm.empty()) {
      json checks = json::array();
      for (const std::string& spec : lcm) {
        const auto colon = spec.find(':');
        if (colon == std::string::npos) throw UsageError("--lcm expects 'i:D', got '" + spec + "'");
        const std::vector<int> node = parse_nodes(spec.substr(0, colon));
        if (node.size() != 1) throw UsageError("--lcm expects a single node before ':'");
        const std::vector<int> d = colon + 1 < spec.size() ? parse_nodes(spec.substr(colon + 1)) : std::vector<int>{};
        const LcmResult r = check_lcm(pmf, node[0], d, lcm_tol);
        json coef = json::array();
        for (Eigen::Index a = 0; a < r.coefficients.rows(); ++a) {
          json row = json::array();
          for (Eigen::Index b = 0; b < r.coefficients.cols(); ++b) row.push_back(r.coefficients(a, b));
          coef.push_back(row);
        }
        checks.push_back({{"check", spec}, {"holds", r.holds}, {"residual", r.residual}, {"coefficients", coef}});
      }
      io::write_json(dir / "lcm.json", checks);
    }
    io::write_json(dir / "oracle.json", summary);
  }
};

// --- evaluate ---------------------------------------------------------------

struct EvaluateCmd {
  CLI::App* cmd = nullptr;
  std::string edges;
  std::string truth;
  std::optional<int> p;
  std::string out;

  void add(CLI::App& app) {
    CLI::App* c = app.add_subcommand("evaluate", "compare an edge list with the truth");
    c->add_option("--edges", edges, "estimated edge TSV")->required();
    c->add_option("--truth", truth, "true edge TSV")->required();
    c->add_option("--p", p, "node count when the files lack a '# p=' line")->check(CLI::PositiveNumber);
    c->add_option("--out", out, "write metrics.json into this directory");
    cmd = c;
  }

  void run() const {
    const Graph t = io::read_edges(truth, p);
    const Graph e = io::read_edges(edges, p ? p : std::optional<int>(t.p()));
    const json m = metrics_json(graph_metrics(e, t));
    if (!out.empty()) io::write_json(fs::path(out) / "metrics.json", m);
    std::cout << io::rounded(m).dump(2) << "\n";
  }
};

// --- roc --------------------------------------------------------------------

struct RocCmd {
  CLI::App* cmd = nullptr;
  DataFlags data;
  SolverFlags solver;
  GridFlags grid;
  std::string truth;
  double ridge_eps = kDefaultRidgeEps;
  std::string out = ".";

  void add(CLI::App& app) {
    CLI::App* c = app.add_subcommand("roc", "ROC sweep of the estimator and the ridge-inverse baseline");
    data.add(c);
    solver.add(c);
    grid.add(c);
    c->add_option("--truth", truth, "true edge TSV")->required();
    c->add_option("--ridge-eps", ridge_eps, "ridge shift of the baseline")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    c->add_option("--out", out, "output directory")->capture_default_str();
    cmd = c;
  }

  static std::string csv(const RocCurve& curve) {
    std::string s = "lambda,tpr,fpr\n";
    for (const RocPoint& pt : curve.points) {
      s += io::format_number(pt.lambda) + "," + io::format_number(pt.tpr) + "," + io::format_number(pt.fpr) + "\n";
    }
    return s;
  }

  void run() const {
    const Dataset d = data.load();
    const Graph t = io::read_edges(truth, d.p());
    const BlockMatrix sigma = sample_davo(d);
    const LambdaGrid g = lambda_grid(sigma, grid.points, grid.ratio);
    const RocCurve path = roc_sweep(sigma, t, g, solver.config());
    const RocCurve ridge = ridge_roc(sigma, t, ridge_eps);
    const fs::path dir(out);
    io::write_text(dir / "roc.csv", csv(path));
    io::write_text(dir / "ridge_roc.csv", csv(ridge));
    io::write_json(dir / "roc.json", {{"auc", path.auc}, {"ridge_auc", ridge.auc}, {"ridge_eps", ridge_eps}});
  }
};

// --- stability --------------------------------------------------------------

struct StabilityCmd {
  CLI::App* cmd = nullptr;
  DataFlags data;
  SolverFlags solver;
  GridFlags grid;
  std::optional<double> lambda;
  int cv = 0;
  int bootstrap = 100;
  double cutoff = 0.95;
  std::uint64_t seed = 1;
  std::string out = ".";
  int* threads = nullptr;

  void add(CLI::App& app, int* thread_count) {
    threads = thread_count;
    CLI::App* c = app.add_subcommand("stability", "bootstrap stability selection at a fixed lambda");
    data.add(c);
    solver.add(c);
    grid.add(c);
    auto* l = c->add_option("--lambda", lambda, "penalty level")->check(CLI::NonNegativeNumber);
    auto* k = c->add_option("--cv", cv, "tune lambda once by K-fold cross-validation")->check(CLI::Range(2, 1000));
    l->excludes(k);
    c->add_option("--bootstrap", bootstrap, "number of bootstrap samples")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    c->add_option("--cutoff", cutoff, "selection-frequency cutoff")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    c->add_option("--seed", seed, "random seed")->capture_default_str();
    c->add_option("--out", out, "output directory")->capture_default_str();
    cmd = c;
  }

  void run() const {
    if (!lambda && cv == 0) throw UsageError("stability needs --lambda or --cv K");
    if (!(cutoff > 0.0)) throw UsageError("cutoff must lie in (0, 1]");
    const Dataset d = data.load();
    const fs::path dir(out);
    double lam = lambda.value_or(0.0);
    if (cv > 0) {
      const BlockMatrix sigma = sample_davo(d);
      const CVReport report =
          cross_validate(d, cv, lambda_grid(sigma, grid.points, grid.ratio), solver.config(), seed, *threads);
      io::write_json(dir / "cv.json", cv_json(report, seed));
      lam = report.chosen_lambda;
    }
    const StabilityReport r = stability_selection(d, lam, bootstrap, cutoff, solver.config(), seed, *threads);
    io::write_matrix_csv(dir / "frequency.csv", r.selection_frequency);
    io::write_edges(dir / "stable_edges.tsv", r.stable_edges);
    io::write_json(dir / "stability.json", {{"bootstrap", r.bootstrap},
                                            {"successful", r.successful},
                                            {"skipped", r.skipped},
                                            {"retries", r.retries},
                                            {"not_converged", r.not_converged},
                                            {"lambda", r.lambda},
                                            {"cutoff", r.cutoff},
                                            {"seed", seed},
                                            {"stable_edges", r.stable_edges.edge_count()}});
    if (r.skipped > 0) warn(std::to_string(r.skipped) + " bootstrap replicates were degenerate and skipped");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure learning for discrete additive semi-graphoid models"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file of option defaults; explicit flags win");
  app.allow_config_extras(CLI::config_extras_mode::error);
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  app.add_option("--threads", threads, "worker threads for folds and bootstrap replicates")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  std::string isa;
  app.add_option("--isa", isa, "pin the vector kernel variant")->check(CLI::IsMember({"scalar", "avx2"}));

  SimulateCmd simulate_cmd;
  EstimateCmd estimate_cmd;
  OracleCmd oracle_cmd;
  EvaluateCmd evaluate_cmd;
  RocCmd roc_cmd;
  StabilityCmd stability_cmd;
  simulate_cmd.add(app);
  estimate_cmd.add(app, &threads);
  oracle_cmd.add(app);
  evaluate_cmd.add(app);
  roc_cmd.add(app);
  stability_cmd.add(app, &threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(dasg::ErrorKind::usage);
  }

  try {
    if (isa == "scalar") dasg::kernels::set_isa(dasg::kernels::Isa::scalar);
    if (isa == "avx2") dasg::kernels::set_isa(dasg::kernels::Isa::avx2);
    if (*simulate_cmd.cmd) simulate_cmd.run();
    if (*estimate_cmd.cmd) estimate_cmd.run();
    if (*oracle_cmd.cmd) oracle_cmd.run();
    if (*evaluate_cmd.cmd) evaluate_cmd.run();
    if (*roc_cmd.cmd) roc_cmd.run();
    if (*stability_cmd.cmd) stability_cmd.run();
  } catch (const dasg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(dasg::ErrorKind::data);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(dasg::ErrorKind::usage);
  }
  return estimate_cmd.exit_code;
}
