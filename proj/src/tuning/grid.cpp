#include <cmath>

#include <Eigen/Cholesky>

#include "dasg/error.hpp"
#include "dasg/tuning.hpp"

namespace dasg {

double lambda_max(const BlockMatrix& sigma_hat) {
  if (!sigma_hat.is_symmetric()) throw UsageError("lambda grid needs a symmetric matrix");
  const NodeScheme& s = sigma_hat.scheme();
  std::vector<Eigen::MatrixXd> inv(static_cast<std::size_t>(s.p()));
  for (int i = 0; i < s.p(); ++i) {
    const Eigen::MatrixXd d = sigma_hat.block(i, i);
    const Eigen::LLT<Eigen::MatrixXd> llt(d);
    if (llt.info() != Eigen::Success) {
      throw NumericalError("diagonal block " + std::to_string(i + 1) + " is not positive definite");
    }
    inv[static_cast<std::size_t>(i)] = llt.solve(Eigen::MatrixXd::Identity(d.rows(), d.cols()));
  }
  double top = 0.0;
  for (int i = 0; i < s.p(); ++i) {
    for (int j = i + 1; j < s.p(); ++j) {
      const Eigen::MatrixXd g = 0.5 * (sigma_hat.block(i, j) * inv[static_cast<std::size_t>(j)] +
                                       inv[static_cast<std::size_t>(i)] * sigma_hat.block(i, j));
      top = std::max(top, g.norm());
    }
  }
  return top;
}

LambdaGrid lambda_grid(const BlockMatrix& sigma_hat, int n_points, double ratio) {
  if (n_points < 1) throw UsageError("grid needs at least one point");
  if (!(ratio > 0.0 && ratio < 1.0)) throw UsageError("grid ratio must lie in (0, 1)");
  const double top = lambda_max(sigma_hat);
  if (!(top > 0.0)) throw DataError("sample DAVO is already diagonal");
  // The first fit sits on the KKT boundary; headroom keeps it block diagonal
  // once solver tolerance is accounted for.
  const double start = top * kGridHeadroom;
  LambdaGrid grid;
  grid.n_points = n_points;
  grid.ratio = ratio;
  grid.values.reserve(static_cast<std::size_t>(n_points));
  for (int k = 0; k < n_points; ++k) {
    const double t = n_points == 1 ? 0.0 : static_cast<double>(k) / (n_points - 1);
    grid.values.push_back(start * std::pow(ratio, t));
  }
  return grid;
}

}  // namespace dasg
