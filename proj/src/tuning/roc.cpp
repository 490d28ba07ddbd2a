#include <algorithm>
#include <limits>
#include <map>

#include "dasg/error.hpp"
#include "dasg/tuning.hpp"

namespace dasg {
namespace {

RocPoint point_of(const Graph& estimate, const Graph& truth, double lambda) {
  const GraphMetrics m = graph_metrics(estimate, truth);
  if (!m.tpr || !m.tnr) throw UsageError("ROC needs a truth graph with edges and non-edges");
  return {lambda, *m.tpr, 1.0 - *m.tnr};
}

}  // namespace

double roc_auc(const std::vector<RocPoint>& points) {
  std::map<double, double> curve{{0.0, 0.0}, {1.0, 1.0}};
  for (const RocPoint& pt : points) {
    auto [it, inserted] = curve.try_emplace(pt.fpr, pt.tpr);
    if (!inserted) it->second = std::max(it->second, pt.tpr);
  }
  double area = 0.0;
  for (auto it = std::next(curve.begin()); it != curve.end(); ++it) {
    const auto prev = std::prev(it);
    area += (it->first - prev->first) * 0.5 * (it->second + prev->second);
  }
  return area;
}

RocCurve roc_sweep(const BlockMatrix& sigma_hat, const Graph& truth, const LambdaGrid& grid,
                   const SolverConfig& config) {
  if (truth.p() != sigma_hat.p()) throw UsageError("truth graph and data disagree on p");
  RocCurve curve;
  SolverConfig cfg = config;
  WarmStart warm;
  for (std::size_t l = 0; l < grid.values.size(); ++l) {
    cfg.lambda = grid.values[l];
    FitResult fit = fit_dtrace(sigma_hat, cfg, l == 0 ? nullptr : &warm);
    curve.points.push_back(point_of(fit.edges, truth, cfg.lambda));
    warm = std::move(fit.state);
  }
  curve.auc = roc_auc(curve.points);
  return curve;
}

RocCurve roc_sweep(const Dataset& data, const Graph& truth, const LambdaGrid& grid,
                   const SolverConfig& config) {
  return roc_sweep(sample_davo(data), truth, grid, config);
}

RocCurve ridge_roc(const BlockMatrix& sigma_hat, const Graph& truth, double eps) {
  if (truth.p() != sigma_hat.p()) throw UsageError("truth graph and data disagree on p");
  const Eigen::MatrixXd norms = ridge_inverse_norms(sigma_hat, eps);
  struct Pair {
    double norm;
    bool truth;
  };
  std::vector<Pair> pairs;
  const int p = sigma_hat.p();
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) pairs.push_back({norms(i, j), truth.has_edge(i, j)});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.norm > b.norm; });

  const double positives = static_cast<double>(truth.edge_count());
  const double negatives = static_cast<double>(truth.pair_count() - truth.edge_count());
  if (positives == 0.0 || negatives == 0.0) {
    throw UsageError("ROC needs a truth graph with edges and non-edges");
  }
  RocCurve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t k = 0; k < pairs.size();) {
    const double value = pairs[k].norm;
    for (; k < pairs.size() && pairs[k].norm == value; ++k) (pairs[k].truth ? tp : fp)++;
    // Threshold just below `value`: every pair with norm >= value is selected.
    const double next = k < pairs.size() ? pairs[k].norm : 0.0;
    curve.points.push_back({next, tp / positives, fp / negatives});
  }
  curve.auc = roc_auc(curve.points);
  return curve;
}

}  // namespace dasg
