#include <cmath>
#include <set>
#include <string>

#include <Eigen/Cholesky>

#include "dasg/error.hpp"
#include "dasg/simgen.hpp"

namespace dasg {
namespace {

Graph off_diagonal_support(const Eigen::MatrixXd& m) {
  Graph g(static_cast<int>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != 0.0) g.add_edge(static_cast<int>(i), static_cast<int>(j));
  return g;
}

Eigen::MatrixXd model1_beta(int p) {
  if (p < 3) throw UsageError("model 1 needs p >= 3");
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      const int gap = std::abs(i - j);
      if (gap == 1 || gap == p - 1) b(i, j) = 0.3;
    }
  }
  return b;
}

Eigen::MatrixXd model2_beta(int p) {
  if (p < 100 || p % 50 != 0) {
    throw UsageError("model 2 needs p = 50q with q >= 2, got p = " + std::to_string(p));
  }
  const int q = p / 50;
  // Hub set D = {1, q, 2q, ..., 49q, p}, 1-based.
  std::set<int> hubs{1};
  for (int k = 1; k <= 50; ++k) hubs.insert(k * q);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(p, p);
  for (int i = 1; i < p; ++i) {
    if (!hubs.contains(i)) b(i - 1, i) = b(i, i - 1) = 0.3;
  }
  for (int j = 2; j <= p; ++j) {
    if (hubs.contains(j) || hubs.contains(j - 1)) b(0, j - 1) = b(j - 1, 0) = 0.2;
  }
  return b;
}

Eigen::MatrixXd banded_pattern(int p, int model_id) {
  if (p < 2) throw UsageError("pattern models need p >= 2");
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      const int gap = std::abs(i - j);
      if (model_id == 3) {
        if (gap == 1) a(i, j) = 0.25;
        if (gap == 2) a(i, j) = 0.15;
      } else if (gap >= 1 && gap <= 3) {
        a(i, j) = 0.24 * std::pow(0.75, gap - 1);
      }
    }
  }
  if (Eigen::LLT<Eigen::MatrixXd>(a).info() != Eigen::Success) {
    throw NumericalError("pattern matrix is not positive definite");
  }
  return a;
}

}  // namespace

PatternSpec pattern(int model_id, int p) {
  PatternSpec spec;
  spec.model_id = model_id;
  spec.p = p;
  switch (model_id) {
    case 1:
      spec.ising = IsingParams(model1_beta(p));
      spec.truth = off_diagonal_support(spec.ising->beta());
      break;
    case 2:
      spec.ising = IsingParams(model2_beta(p));
      spec.truth = off_diagonal_support(spec.ising->beta());
      break;
    case 3:
    case 4:
      spec.pattern = banded_pattern(p, model_id);
      spec.truth = off_diagonal_support(*spec.pattern);
      break;
    default:
      throw UsageError("unknown model " + std::to_string(model_id) + " (expected 1-4)");
  }
  return spec;
}

}  // namespace dasg
