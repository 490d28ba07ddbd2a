#pragma once

#include <Eigen/Core>

#include "dasg/joint_pmf.hpp"

namespace dasg {

// Symmetric coupling matrix; the diagonal holds the external fields.
// Spins x in {-1,+1} are coded 0 -> -1 and 1 -> +1.
class IsingParams {
 public:
  IsingParams() = default;
  explicit IsingParams(Eigen::MatrixXd beta);

  const Eigen::MatrixXd& beta() const noexcept { return beta_; }
  int p() const noexcept { return static_cast<int>(beta_.rows()); }

 private:
  Eigen::MatrixXd beta_;
};

inline constexpr int spin_of_code(int code) noexcept { return 2 * code - 1; }

// Exact law exp(sum_i b_ii x_i + sum_{i<j} b_ij x_i x_j) / z, normalized by
// explicit summation over all 2^p configurations.
JointPMF ising_pmf(const IsingParams& params, std::size_t cap = JointPMF::kDefaultCap);

}  // namespace dasg
