#include <string>

#include "dasg/error.hpp"
#include "dasg/estimator.hpp"

namespace dasg {

BlockMatrix indicator_covariance(const Dataset& data) {
  const NodeScheme& s = data.scheme();
  const int n = data.n();
  if (n < 2) throw DataError("covariance needs at least 2 rows");
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, s.dim());
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < s.p(); ++i) {
      const int v = data.rows()(k, i);
      if (v > 0) z(k, s.block_offset(i) + v - 1) = 1.0;
    }
  }
  const Eigen::RowVectorXd mean = z.colwise().mean();
  z.rowwise() -= mean;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(s.dim(), s.dim());
  cov.selfadjointView<Eigen::Lower>().rankUpdate(z.transpose(), 1.0 / n);
  cov.triangularView<Eigen::StrictlyUpper>() = cov.transpose();
  return BlockMatrix(s, std::move(cov));
}

BlockMatrix sample_davo(const Dataset& data) {
  if (data.n() < 2) throw DataError("sample DAVO needs at least 2 rows");
  const NodeScheme& s = data.scheme();
  for (int i = 0; i < data.p(); ++i) {
    const auto col = data.rows().col(i);
    const std::string who =
        "node " + std::to_string(i + 1) + " (" + data.names()[static_cast<std::size_t>(i)] + ")";
    if ((col.array() == col(0)).all()) throw DegenerateNodeError(i, who + " is constant in the sample");
    for (int v = 1; v <= s.levels(i); ++v) {
      if (!(col.array() == v).any()) {
        throw DegenerateNodeError(i, who + " never takes level " + std::to_string(v) +
                                         ", so its indicator has zero variance");
      }
    }
  }
  return indicator_covariance(data);
}

}  // namespace dasg
