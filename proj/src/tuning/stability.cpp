#include "dasg/error.hpp"
#include "dasg/rng.hpp"
#include "dasg/tuning.hpp"

namespace dasg {

StabilityReport stability_selection(const Dataset& data, double lambda, int bootstrap,
                                    double cutoff, const SolverConfig& config,
                                    std::uint64_t seed, int threads) {
  if (bootstrap < 1) throw UsageError("stability selection needs at least one bootstrap sample");
  if (!(cutoff > 0.0 && cutoff <= 1.0)) throw UsageError("cutoff must lie in (0, 1]");
  SolverConfig cfg = config;
  cfg.lambda = lambda;
  cfg.validate();

  const int n = data.n();
  const int p = data.p();
  struct Replicate {
    std::optional<Graph> edges;
    int retries = 0;
    bool converged = true;
  };
  std::vector<Replicate> reps(static_cast<std::size_t>(bootstrap));
  parallel_for(bootstrap, threads, [&](int b) {
    Rng rng(seed + static_cast<std::uint64_t>(b));
    Replicate& rep = reps[static_cast<std::size_t>(b)];
    std::vector<int> rows(static_cast<std::size_t>(n));
    for (int attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
      for (int& r : rows) r = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      BlockMatrix sigma;
      try {
        sigma = sample_davo(data.subset(rows));
      } catch (const DegenerateNodeError&) {
        ++rep.retries;
        continue;
      }
      FitResult fit = fit_dtrace(sigma, cfg);
      rep.converged = fit.converged;
      rep.edges = std::move(fit.edges);
      return;
    }
  });

  StabilityReport report;
  report.bootstrap = bootstrap;
  report.lambda = lambda;
  report.cutoff = cutoff;
  report.selection_frequency = Eigen::MatrixXd::Zero(p, p);
  for (const Replicate& rep : reps) {
    report.retries += rep.edges ? rep.retries : rep.retries - kMaxResampleAttempts;
    if (!rep.edges) {
      ++report.skipped;
      continue;
    }
    ++report.successful;
    if (!rep.converged) ++report.not_converged;
    for (const auto& [i, j] : rep.edges->edges()) {
      report.selection_frequency(i, j) += 1.0;
      report.selection_frequency(j, i) += 1.0;
    }
  }
  if (report.successful == 0) {
    throw DataError("every bootstrap replicate was degenerate");
  }
  report.selection_frequency /= report.successful;
  report.stable_edges = Graph(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j)
      if (report.selection_frequency(i, j) >= cutoff) report.stable_edges.add_edge(i, j);
  return report;
}

}  // namespace dasg
