#pragma once

#include <vector>

#include <Eigen/Core>

#include "dasg/joint_pmf.hpp"

namespace dasg {

struct LcmResult {
  bool holds = true;
  // Largest |E(V_i | x_D) - linear fit| over the support of X^D.
  double residual = 0.0;
  // Row a: coefficients of the centred level-(a+1) indicator of X^i on the
  // centred indicators of X^D (nodes in the order given, levels ascending).
  // For binary nodes these are also the coefficients on centred spins.
  Eigen::MatrixXd coefficients;
};

// Tests whether E(phi(X^i) | X^D) lies in the additive span of X^D for every
// centred phi, by exact conditioning and weighted least squares under P_{X^D}.
LcmResult check_lcm(const JointPMF& pmf, int i, const std::vector<int>& d, double tol);

}  // namespace dasg
