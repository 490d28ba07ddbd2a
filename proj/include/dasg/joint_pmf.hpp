#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "dasg/dataset.hpp"
#include "dasg/node_scheme.hpp"

namespace dasg {

// Probability table over the full product support {0..m_1} x ... x {0..m_p}.
// Points are enumerated in mixed radix with node 1 varying fastest.
class JointPMF {
 public:
  static constexpr std::size_t kDefaultCap = std::size_t{1} << 24;
  static constexpr double kSumTolerance = 1e-12;

  JointPMF() = default;
  // Validates nonnegativity, unit mass, the support cap and that every node
  // attains at least two values with positive probability.
  JointPMF(NodeScheme scheme, std::vector<double> table, std::size_t cap = kDefaultCap);

  const NodeScheme& scheme() const noexcept { return scheme_; }
  const std::vector<double>& table() const noexcept { return table_; }
  std::size_t size() const noexcept { return table_.size(); }
  int p() const noexcept { return scheme_.p(); }

  std::size_t index_of(std::span<const int> x) const;
  std::vector<int> point(std::size_t index) const;
  double operator()(std::span<const int> x) const { return table_[index_of(x)]; }

  // P(X^i = v) for v = 0..m_i.
  Eigen::VectorXd marginal(int i) const;

  // Visits every point with positive mass; `x` is only valid during the call.
  template <typename F>
  void for_each_support_point(F&& visit) const {
    std::vector<int> x(static_cast<std::size_t>(p()), 0);
    for (std::size_t k = 0; k < table_.size(); ++k) {
      if (table_[k] > 0.0) visit(std::span<const int>(x), table_[k]);
      for (int i = 0; i < p(); ++i) {
        auto& xi = x[static_cast<std::size_t>(i)];
        if (++xi <= scheme_.levels(i)) break;
        xi = 0;
      }
    }
  }

 private:
  NodeScheme scheme_;
  std::vector<double> table_;
};

// Number of support points of `scheme`; throws UsageError above `cap`.
std::size_t support_size(const NodeScheme& scheme, std::size_t cap = JointPMF::kDefaultCap);

// Joint table of (X^i, X^j), (m_i + 1) x (m_j + 1).
Eigen::MatrixXd pairwise_marginal(const JointPMF& pmf, int i, int j);

// Empirical distribution of the rows of `data`.
JointPMF empirical_pmf(const Dataset& data, std::size_t cap = JointPMF::kDefaultCap);

}  // namespace dasg
