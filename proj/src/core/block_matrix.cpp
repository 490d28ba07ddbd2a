#include "dasg/block_matrix.hpp"

#include <cmath>
#include <string>

#include "dasg/error.hpp"
#include "dasg/kernels.hpp"

namespace dasg {

double relative_asymmetry(const Eigen::MatrixXd& a) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
}

BlockMatrix::BlockMatrix(NodeScheme scheme, Eigen::MatrixXd data, Symmetry symmetry)
    : scheme_(std::move(scheme)), data_(std::move(data)), symmetry_(symmetry) {
  const int d = scheme_.dim();
  if (data_.rows() != d || data_.cols() != d) {
    throw UsageError("block matrix is " + std::to_string(data_.rows()) + "x" +
                     std::to_string(data_.cols()) + " but the scheme needs " +
                     std::to_string(d) + "x" + std::to_string(d));
  }
  if (!data_.allFinite()) throw NumericalError("block matrix has non-finite entries");
  if (symmetry_ == Symmetry::symmetric && d > 0) {
    const double asym = relative_asymmetry(data_);
    if (asym > kSymmetryTolerance) {
      throw NumericalError("matrix flagged symmetric has relative asymmetry " +
                           std::to_string(asym));
    }
  }
}

BlockMatrix BlockMatrix::zeros(const NodeScheme& scheme, Symmetry symmetry) {
  return BlockMatrix(scheme, Eigen::MatrixXd::Zero(scheme.dim(), scheme.dim()), symmetry);
}

Eigen::MatrixXd block_frobenius_norms(const BlockMatrix& m) {
  const NodeScheme& s = m.scheme();
  const Eigen::MatrixXd& a = m.data();
  const int p = s.p();
  Eigen::MatrixXd norms(p, p);
  for (int j = 0; j < p; ++j) {
    const int c0 = s.block_offset(j);
    for (int i = 0; i < p; ++i) {
      const int r0 = s.block_offset(i);
      const auto rows = static_cast<std::size_t>(s.block_size(i));
      double ss = 0.0;
      for (int c = c0; c < c0 + s.block_size(j); ++c) {
        ss += kernels::sum_squares({a.data() + static_cast<std::ptrdiff_t>(c) * a.rows() + r0, rows});
      }
      norms(i, j) = std::sqrt(ss);
    }
  }
  return norms;
}

}  // namespace dasg
