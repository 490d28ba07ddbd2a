#pragma once

#include <Eigen/Dense>

#include "dasg/node_scheme.hpp"

namespace dasg {

enum class Symmetry { general, symmetric };

// A dim x dim real matrix partitioned into p x p blocks of sizes m_i x m_j.
// Symmetric-flagged matrices are validated at construction: entries must
// agree with the transpose to 1e-12 relative to the largest magnitude.
class BlockMatrix {
 public:
  BlockMatrix() = default;
  BlockMatrix(NodeScheme scheme, Eigen::MatrixXd data,
              Symmetry symmetry = Symmetry::symmetric);

  static BlockMatrix zeros(const NodeScheme& scheme,
                           Symmetry symmetry = Symmetry::symmetric);

  const NodeScheme& scheme() const noexcept { return scheme_; }
  const Eigen::MatrixXd& data() const noexcept { return data_; }
  bool is_symmetric() const noexcept { return symmetry_ == Symmetry::symmetric; }
  int p() const noexcept { return scheme_.p(); }
  int dim() const noexcept { return scheme_.dim(); }

  Eigen::Block<const Eigen::MatrixXd> block(int i, int j) const {
    return data_.block(scheme_.block_offset(i), scheme_.block_offset(j),
                       scheme_.block_size(i), scheme_.block_size(j));
  }

 private:
  NodeScheme scheme_;
  Eigen::MatrixXd data_;
  Symmetry symmetry_ = Symmetry::symmetric;
};

// Largest |a_ij - a_ji| relative to max(1, max |a_ij|).
double relative_asymmetry(const Eigen::MatrixXd& a);

inline constexpr double kSymmetryTolerance = 1e-12;

// Frobenius norm of every block; a p x p nonnegative matrix.
Eigen::MatrixXd block_frobenius_norms(const BlockMatrix& m);

}  // namespace dasg
