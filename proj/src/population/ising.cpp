#include "dasg/ising.hpp"

#include <cmath>
#include <vector>

#include "dasg/block_matrix.hpp"
#include "dasg/error.hpp"

namespace dasg {

IsingParams::IsingParams(Eigen::MatrixXd beta) : beta_(std::move(beta)) {
  if (beta_.rows() != beta_.cols() || beta_.rows() < 1) {
    throw UsageError("Ising parameter must be a nonempty square matrix");
  }
  if (!beta_.allFinite()) throw UsageError("Ising parameter has non-finite entries");
  if (relative_asymmetry(beta_) > kSymmetryTolerance) {
    throw UsageError("Ising parameter must be symmetric");
  }
}

JointPMF ising_pmf(const IsingParams& params, std::size_t cap) {
  const int p = params.p();
  const NodeScheme scheme = NodeScheme::binary(p);
  const std::size_t n = support_size(scheme, cap);
  const Eigen::MatrixXd& b = params.beta();

  std::vector<double> energy(n);
  std::vector<int> s(static_cast<std::size_t>(p));
  for (std::size_t k = 0; k < n; ++k) {
    for (int i = 0; i < p; ++i) s[static_cast<std::size_t>(i)] = ((k >> i) & 1U) ? 1 : -1;
    double e = 0.0;
    for (int i = 0; i < p; ++i) {
      const double si = s[static_cast<std::size_t>(i)];
      e += b(i, i) * si;
      for (int j = i + 1; j < p; ++j) e += b(i, j) * si * s[static_cast<std::size_t>(j)];
    }
    energy[k] = e;
  }
  // Shift by the maximum energy before exponentiating.
  double emax = energy[0];
  for (double e : energy) emax = std::max(emax, e);
  std::vector<double> table(n);
  double z = 0.0;
  double comp = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    table[k] = std::exp(energy[k] - emax);
    const double y = table[k] - comp;
    const double t = z + y;
    comp = (t - z) - y;
    z = t;
  }
  for (double& v : table) v /= z;
  return JointPMF(scheme, std::move(table), cap);
}

}  // namespace dasg
