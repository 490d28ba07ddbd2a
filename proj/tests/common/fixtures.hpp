#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "dasg/ising.hpp"
#include "dasg/joint_pmf.hpp"

namespace dasg::fixtures {

// Three binary nodes, f(x) = 3^{x1 x2} / 12.
inline JointPMF binary3_pmf() {
  const NodeScheme s = NodeScheme::binary(3);
  std::vector<double> t(support_size(s));
  for (std::size_t k = 0; k < t.size(); ++k) {
    const int x1 = static_cast<int>(k & 1U);
    const int x2 = static_cast<int>((k >> 1) & 1U);
    t[k] = std::pow(3.0, x1 * x2) / 12.0;
  }
  return JointPMF(s, t);
}

// Three ternary nodes, f(x) = 2^{x1 x2 + x1 x3} / 499.
inline JointPMF ternary3_pmf() {
  const NodeScheme s = NodeScheme::uniform(3, 2);
  std::vector<double> t(support_size(s));
  for (std::size_t k = 0; k < t.size(); ++k) {
    const int x1 = static_cast<int>(k % 3);
    const int x2 = static_cast<int>((k / 3) % 3);
    const int x3 = static_cast<int>(k / 9);
    t[k] = std::pow(2.0, x1 * x2 + x1 * x3) / 499.0;
  }
  return JointPMF(s, t);
}

inline Eigen::MatrixXd binary3_sigma_o() {
  Eigen::MatrixXd m(3, 3);
  m << 1, 0.25, 0, 0.25, 1, 0, 0, 0, 1;
  return m;
}
inline Eigen::MatrixXd binary3_theta_o() {
  Eigen::MatrixXd m(3, 3);
  m << 16.0 / 15, -4.0 / 15, 0, -4.0 / 15, 16.0 / 15, 0, 0, 0, 1;
  return m;
}
inline Eigen::MatrixXd binary3_sigma_v() {
  Eigen::MatrixXd m(3, 3);
  m << 2.0 / 9, 1.0 / 18, 0, 1.0 / 18, 2.0 / 9, 0, 0, 0, 0.25;
  return m;
}
inline Eigen::MatrixXd binary3_theta_v() {
  Eigen::MatrixXd m(3, 3);
  m << 24.0 / 5, -6.0 / 5, 0, -6.0 / 5, 24.0 / 5, 0, 0, 0, 4;
  return m;
}

// Rounded to one decimal.
inline Eigen::MatrixXd ternary3_theta_v() {
  Eigen::MatrixXd m(6, 6);
  m << 67.0, 57.6, -2.9, -3.5, -2.9, -3.5,  //
      57.6, 60.1, -4.1, -5.4, -4.1, -5.4,   //
      -2.9, -4.1, 21.4, 16.6, 0, 0,         //
      -3.5, -5.4, 16.6, 18.2, 0, 0,         //
      -2.9, -4.1, 0, 0, 21.4, 16.6,         //
      -3.5, -5.4, 0, 0, 16.6, 18.2;
  return m;
}
// cov[V(X1), V(X2)], in units of 1e-3, rounded.
inline Eigen::MatrixXd ternary3_sigma12() {
  Eigen::MatrixXd m(2, 2);
  m << 8.2e-3, -16.1e-3, -10.5e-3, 23.4e-3;
  return m;
}

// Symmetric Ising model on the 4-node graph {12, 23, 34, 14, 24}.
inline IsingParams four_node_ising() {
  Eigen::MatrixXd b(4, 4);
  b << 0, 1, 0, 1, 1, 0, 1, 1, 0, 1, 0, 1, 1, 1, 1, 0;
  return IsingParams(b * std::log(2.0) / 2.0);
}
// Reference HS norms for the 4-node model.
inline Eigen::MatrixXd four_node_hs_reference() {
  Eigen::MatrixXd m(4, 4);
  m << 11.0 / 8, 33.0 / 8, 0, 33.0 / 8,         //
      33.0 / 8, 1287.0 / 800, 33.0 / 8, 363.0 / 800,  //
      0, 33.0 / 8, 11.0 / 8, 33.0 / 8,              //
      33.0 / 8, 363.0 / 800, 33.0 / 8, 1287.0 / 800;
  return m;
}

// Complete 5-node symmetric Ising model minus the edge (1,2).
inline IsingParams five_node_ising() {
  Eigen::MatrixXd b = Eigen::MatrixXd::Ones(5, 5);
  b.diagonal().setZero();
  b(0, 1) = b(1, 0) = 0.0;
  return IsingParams(b * std::log(2.0) / 2.0);
}
inline Eigen::MatrixXd five_node_hs() {
  Eigen::MatrixXd m(5, 5);
  const double a = 10611.0 / 5516, e = 27.0 / 5516, c = 99.0 / 197, d = 474.0 / 197, f = 117.0 / 197;
  m << a, e, c, c, c, e, a, c, c, c, c, c, d, f, f, c, c, f, d, f, c, c, f, f, d;
  return m;
}
// The same model augmented with X3 X4 X5.
inline Eigen::MatrixXd augmented_hs() {
  Eigen::MatrixXd m(6, 6);
  const double a = 27.0 / 14, b = 15.0 / 28, c = 3.0 / 28;
  const double d = 221.0 / 84, e = 31.0 / 84, f = 61.0 / 84, g = 197.0 / 84;
  m << a, 0, b, b, b, c,  //
      0, a, b, b, b, c,   //
      b, b, d, e, e, f,   //
      b, b, e, d, e, f,   //
      b, b, e, e, d, f,   //
      c, c, f, f, f, g;
  return m;
}

}  // namespace dasg::fixtures
