#include <algorithm>
#include <cmath>
#include <numeric>

#include "dasg/error.hpp"
#include "dasg/rng.hpp"
#include "dasg/tuning.hpp"

namespace dasg {
namespace {

void check_grid(const LambdaGrid& grid) {
  if (grid.values.empty()) throw UsageError("lambda grid is empty");
  for (std::size_t k = 0; k < grid.values.size(); ++k) {
    if (!(grid.values[k] > 0.0) || !std::isfinite(grid.values[k])) {
      throw UsageError("lambda grid values must be finite and positive");
    }
    if (k > 0 && !(grid.values[k] < grid.values[k - 1])) {
      throw UsageError("lambda grid must be strictly decreasing");
    }
  }
}

}  // namespace

CVReport cross_validate(const Dataset& data, int k, const LambdaGrid& grid,
                        const SolverConfig& config, std::uint64_t seed, int threads) {
  if (k < 2) throw UsageError("cross-validation needs at least 2 folds");
  check_grid(grid);
  config.validate();
  const int n = data.n();
  if (n < 2 * k) {
    throw DataError("fold too small: " + std::to_string(n) + " rows cannot form " +
                    std::to_string(k) + " folds of at least 2");
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);

  const std::size_t nl = grid.values.size();
  std::vector<std::vector<double>> loss(static_cast<std::size_t>(k), std::vector<double>(nl));
  parallel_for(k, threads, [&](int f) {
    const int lo = static_cast<int>(static_cast<long long>(n) * f / k);
    const int hi = static_cast<int>(static_cast<long long>(n) * (f + 1) / k);
    std::vector<int> train;
    std::vector<int> held;
    train.reserve(static_cast<std::size_t>(n - (hi - lo)));
    for (int r = 0; r < n; ++r) {
      (r >= lo && r < hi ? held : train).push_back(order[static_cast<std::size_t>(r)]);
    }
    const BlockMatrix sigma_train = sample_davo(data.subset(train));
    const BlockMatrix sigma_val = indicator_covariance(data.subset(held));
    SolverConfig cfg = config;
    WarmStart warm;
    for (std::size_t l = 0; l < nl; ++l) {
      cfg.lambda = grid.values[l];
      FitResult fit = fit_dtrace(sigma_train, cfg, l == 0 ? nullptr : &warm);
      loss[static_cast<std::size_t>(f)][l] = dtrace_loss(fit.theta.data(), sigma_val.data());
      warm = std::move(fit.state);
    }
  });

  CVReport report;
  report.grid = grid;
  report.folds = k;
  report.mean_val_loss.assign(nl, 0.0);
  report.se.assign(nl, 0.0);
  for (std::size_t l = 0; l < nl; ++l) {
    double sum = 0.0;
    for (int f = 0; f < k; ++f) sum += loss[static_cast<std::size_t>(f)][l];
    const double mean = sum / k;
    double ss = 0.0;
    for (int f = 0; f < k; ++f) {
      const double dev = loss[static_cast<std::size_t>(f)][l] - mean;
      ss += dev * dev;
    }
    if (!std::isfinite(mean)) throw NumericalError("validation loss is not finite");
    report.mean_val_loss[l] = mean;
    report.se[l] = std::sqrt(ss / (k - 1)) / std::sqrt(static_cast<double>(k));
  }
  // Losses closer than the solver tolerance (relative) tie, and ties keep the
  // earlier (larger) lambda.
  const double tie = std::max(config.tol_primal, config.tol_dual);
  std::size_t best = 0;
  for (std::size_t l = 1; l < nl; ++l) {
    const double incumbent = report.mean_val_loss[best];
    const double margin = tie * std::max(1.0, std::abs(incumbent));
    if (report.mean_val_loss[l] < incumbent - margin) best = l;
  }
  report.chosen_index = static_cast<int>(best);
  report.chosen_lambda = grid.values[best];
  return report;
}

}  // namespace dasg
