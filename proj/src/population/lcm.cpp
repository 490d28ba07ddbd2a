#include "dasg/lcm.hpp"

#include <algorithm>
#include <string>

#include <Eigen/QR>

#include "dasg/error.hpp"

namespace dasg {

LcmResult check_lcm(const JointPMF& pmf, int i, const std::vector<int>& d, double tol) {
  const NodeScheme& s = pmf.scheme();
  if (i < 0 || i >= s.p()) throw UsageError("node out of range");
  std::vector<int> sorted = d;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw UsageError("conditioning set lists a node twice");
  }
  for (int k : d) {
    if (k < 0 || k >= s.p()) throw UsageError("conditioning node out of range");
    if (k == i) throw UsageError("conditioning set must not contain node i");
  }

  const int mi = s.levels(i);
  LcmResult result;
  int width = 0;
  for (int k : d) width += s.levels(k);
  result.coefficients = Eigen::MatrixXd::Zero(mi, width);
  if (d.empty()) return result;

  // Joint of (X^D, V_i(X^i)) indexed by the mixed-radix code of x_D.
  std::size_t cells = 1;
  for (int k : d) cells *= static_cast<std::size_t>(s.levels(k)) + 1;
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cells));
  Eigen::MatrixXd first = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cells), mi);
  pmf.for_each_support_point([&](std::span<const int> x, double prob) {
    std::size_t cell = 0;
    std::size_t stride = 1;
    for (int k : d) {
      cell += static_cast<std::size_t>(x[static_cast<std::size_t>(k)]) * stride;
      stride *= static_cast<std::size_t>(s.levels(k)) + 1;
    }
    mass(static_cast<Eigen::Index>(cell)) += prob;
    const int xi = x[static_cast<std::size_t>(i)];
    if (xi > 0) first(static_cast<Eigen::Index>(cell), xi - 1) += prob;
  });

  std::vector<Eigen::Index> support;
  for (Eigen::Index c = 0; c < mass.size(); ++c)
    if (mass(c) > 0.0) support.push_back(c);
  if (support.empty()) throw DataError("conditioning set has empty support");

  const Eigen::VectorXd mean_i = pmf.marginal(i).tail(mi);
  std::vector<Eigen::VectorXd> mean_d;
  for (int k : d) mean_d.push_back(pmf.marginal(k).tail(s.levels(k)));

  const auto rows = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXd design(rows, width);
  Eigen::MatrixXd target(rows, mi);
  Eigen::VectorXd weight(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    std::size_t cell = static_cast<std::size_t>(support[static_cast<std::size_t>(r)]);
    int col = 0;
    for (std::size_t t = 0; t < d.size(); ++t) {
      const int m = s.levels(d[t]);
      const int v = static_cast<int>(cell % (static_cast<std::size_t>(m) + 1));
      cell /= static_cast<std::size_t>(m) + 1;
      for (int l = 1; l <= m; ++l) design(r, col + l - 1) = (v == l ? 1.0 : 0.0) - mean_d[t](l - 1);
      col += m;
    }
    const double pm = mass(support[static_cast<std::size_t>(r)]);
    target.row(r) = first.row(support[static_cast<std::size_t>(r)]) / pm - mean_i.transpose();
    weight(r) = std::sqrt(pm);
  }

  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(weight.asDiagonal() * design);
  const Eigen::MatrixXd xi = cod.solve(weight.asDiagonal() * target);
  result.coefficients = xi.transpose();
  result.residual = (target - design * xi).cwiseAbs().maxCoeff();
  result.holds = result.residual <= tol;
  return result;
}

}  // namespace dasg
