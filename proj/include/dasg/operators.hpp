#pragma once

#include <vector>

#include <Eigen/Core>

#include "dasg/block_matrix.hpp"
#include "dasg/joint_pmf.hpp"

namespace dasg {

// Zero tolerance used when reading a graph off a population operator.
inline constexpr double kPopulationZeroTol = 1e-8;

// All first and second moments of the one-hot encoding of X, gathered in one
// pass over the table. Node i owns rows offset(i)..offset(i)+m_i (level 0
// included), so pair(i, j) is the joint table of (X^i, X^j).
class PairwiseMoments {
 public:
  explicit PairwiseMoments(const JointPMF& pmf);

  const NodeScheme& scheme() const noexcept { return scheme_; }
  Eigen::MatrixXd pair(int i, int j) const;
  Eigen::VectorXd marginal(int i) const;

 private:
  NodeScheme scheme_;
  std::vector<int> offsets_;
  Eigen::MatrixXd second_;
};

// cov[V_i(X^i), V_j(X^j)] with V the level-1..m indicator vector.
BlockMatrix vertex_davo(const JointPMF& pmf);
BlockMatrix vertex_dapo(const JointPMF& pmf);

// Orthonormal basis of the centred L2 space of node i: row a holds the values
// u^(a)(0..m_i). Built by whitening the centred indicators; levels with zero
// probability reduce the number of rows.
Eigen::MatrixXd orthonormal_basis(const JointPMF& pmf, int i);

BlockMatrix orthonormal_davo(const JointPMF& pmf);
BlockMatrix orthonormal_dapo(const JointPMF& pmf);
// Same, with caller-supplied bases (one k_i x (m_i + 1) matrix per node).
BlockMatrix orthonormal_davo(const JointPMF& pmf, const std::vector<Eigen::MatrixXd>& bases);

// Hilbert-Schmidt norms of the precision operator blocks.
Eigen::MatrixXd hs_norms(const JointPMF& pmf);

// Inverse of a symmetric positive definite block matrix, symmetrized.
// Throws NumericalError when the smallest eigenvalue is not positive.
BlockMatrix invert_spd(const BlockMatrix& m);

}  // namespace dasg
