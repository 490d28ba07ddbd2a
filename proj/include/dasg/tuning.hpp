#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "dasg/block_matrix.hpp"
#include "dasg/dataset.hpp"
#include "dasg/estimator.hpp"
#include "dasg/graph.hpp"

namespace dasg {

// Runs fn(0..count-1) on up to `threads` workers (0 = hardware concurrency).
// The first exception thrown by any task is rethrown after all workers stop.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

struct LambdaGrid {
  std::vector<double> values;  // strictly decreasing, all > 0
  int n_points = 50;
  double ratio = 1e-3;
};

// Smallest lambda at which the fit is block diagonal: the largest off-diagonal
// block of the gradient at Theta = blockdiag(Sigma_ii^{-1}).
double lambda_max(const BlockMatrix& sigma_hat);

inline constexpr double kGridHeadroom = 1.001;

// Log-spaced from kGridHeadroom * lambda_max down by a factor `ratio`.
LambdaGrid lambda_grid(const BlockMatrix& sigma_hat, int n_points = 50, double ratio = 1e-3);

struct CVReport {
  LambdaGrid grid;
  std::vector<double> mean_val_loss;
  std::vector<double> se;
  double chosen_lambda = 0.0;
  int chosen_index = 0;
  int folds = 0;
};

// K-fold cross-validation of the held-out D-trace loss. Rows are shuffled by
// `seed` and cut into K contiguous near-equal folds. Mean losses within the
// solver tolerance (relative) tie, and ties go to the larger lambda.
CVReport cross_validate(const Dataset& data, int k, const LambdaGrid& grid,
                        const SolverConfig& config, std::uint64_t seed, int threads = 0);

struct RocPoint {
  double lambda = 0.0;  // threshold for the baseline curve
  double tpr = 0.0;
  double fpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

// Trapezoid area over fpr, anchored at (0,0) and (1,1); repeated fpr values
// keep their largest tpr.
double roc_auc(const std::vector<RocPoint>& points);

// One fit per grid value, in grid order.
RocCurve roc_sweep(const Dataset& data, const Graph& truth, const LambdaGrid& grid,
                   const SolverConfig& config);
RocCurve roc_sweep(const BlockMatrix& sigma_hat, const Graph& truth, const LambdaGrid& grid,
                   const SolverConfig& config);

inline constexpr double kDefaultRidgeEps = 1e-2;

// Ridge-inverse baseline swept over every distinct block-norm threshold.
RocCurve ridge_roc(const BlockMatrix& sigma_hat, const Graph& truth,
                   double eps = kDefaultRidgeEps);

struct StabilityReport {
  int bootstrap = 0;   // requested replicates
  int successful = 0;  // replicates that produced a fit
  int skipped = 0;     // replicates abandoned after repeated degenerate resamples
  int retries = 0;     // degenerate resamples redrawn
  int not_converged = 0;
  double lambda = 0.0;
  double cutoff = 0.95;
  Eigen::MatrixXd selection_frequency;
  Graph stable_edges;
};

inline constexpr int kMaxResampleAttempts = 10;

// Bootstrap refits at a fixed lambda. Replicate b draws from seed + b.
StabilityReport stability_selection(const Dataset& data, double lambda, int bootstrap,
                                    double cutoff, const SolverConfig& config,
                                    std::uint64_t seed, int threads = 0);

}  // namespace dasg
