#pragma once

#include <Eigen/Core>

#include "dasg/block_matrix.hpp"
#include "dasg/graph.hpp"
#include "dasg/joint_pmf.hpp"
#include "dasg/operators.hpp"

namespace dasg {

struct IrrepReport {
  double gamma = 1.0;        // 1 - worst irrepresentable score
  double kappa_gamma = 0.0;  // max row sum of |Gamma_SS^{-1}|
  double kappa_sigma = 0.0;  // max row sum of |Sigma|
  int d = 0;                 // maximum degree of the support graph
  bool holds = true;         // gamma > 0
};

struct IrrepOptions {
  int max_dim = 64;
  double zero_tol = kPopulationZeroTol;
};

// Gamma = (Sigma (x) I + I (x) Sigma) / 2, with the pair (a, b) at row a*dim + b.
Eigen::MatrixXd gamma_matrix(const Eigen::MatrixXd& sigma);

// Diagnostics for a vertex-representation DAVO and the off-diagonal support
// of its precision operator.
IrrepReport irrep_diagnostics(const BlockMatrix& sigma, const Graph& support,
                              const IrrepOptions& options = {});

// Support taken from the exact vertex DAPO at options.zero_tol.
IrrepReport irrep_diagnostics(const JointPMF& pmf, const IrrepOptions& options = {});

}  // namespace dasg
