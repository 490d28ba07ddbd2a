#include "dasg/joint_pmf.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dasg/error.hpp"

namespace dasg {
namespace {

// Neumaier-compensated sum; keeps the unit-mass check meaningful at 2^24 terms.
double compensated_sum(const std::vector<double>& v) {
  double sum = 0.0;
  double c = 0.0;
  for (double x : v) {
    const double t = sum + x;
    c += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + c;
}

}  // namespace

std::size_t support_size(const NodeScheme& scheme, std::size_t cap) {
  std::size_t n = 1;
  for (int m : scheme.levels()) {
    const auto k = static_cast<std::size_t>(m) + 1;
    if (n > cap / k) {
      throw UsageError("product support exceeds the enumeration cap of " + std::to_string(cap) +
                       " points");
    }
    n *= k;
  }
  return n;
}

JointPMF::JointPMF(NodeScheme scheme, std::vector<double> table, std::size_t cap)
    : scheme_(std::move(scheme)), table_(std::move(table)) {
  const std::size_t n = support_size(scheme_, cap);
  if (table_.size() != n) {
    throw DataError("pmf table has " + std::to_string(table_.size()) + " entries, support has " +
                    std::to_string(n));
  }
  for (double v : table_) {
    if (!std::isfinite(v) || v < 0.0) throw DataError("pmf entries must be finite and >= 0");
  }
  const double total = compensated_sum(table_);
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw DataError("pmf mass sums to " + std::to_string(total) + ", not 1");
  }
  for (int i = 0; i < p(); ++i) {
    const Eigen::VectorXd q = marginal(i);
    if ((q.array() > 0.0).count() < 2) {
      throw DegenerateNodeError(i, "node " + std::to_string(i + 1) +
                                       " attains fewer than two values with positive probability");
    }
  }
}

std::size_t JointPMF::index_of(std::span<const int> x) const {
  if (static_cast<int>(x.size()) != p()) throw UsageError("point has the wrong length");
  std::size_t index = 0;
  std::size_t stride = 1;
  for (int i = 0; i < p(); ++i) {
    const int v = x[static_cast<std::size_t>(i)];
    if (v < 0 || v > scheme_.levels(i)) throw UsageError("point outside the support");
    index += static_cast<std::size_t>(v) * stride;
    stride *= static_cast<std::size_t>(scheme_.levels(i)) + 1;
  }
  return index;
}

std::vector<int> JointPMF::point(std::size_t index) const {
  if (index >= table_.size()) throw UsageError("support index out of range");
  std::vector<int> x(static_cast<std::size_t>(p()));
  for (int i = 0; i < p(); ++i) {
    const auto radix = static_cast<std::size_t>(scheme_.levels(i)) + 1;
    x[static_cast<std::size_t>(i)] = static_cast<int>(index % radix);
    index /= radix;
  }
  return x;
}

Eigen::VectorXd JointPMF::marginal(int i) const {
  if (i < 0 || i >= p()) throw UsageError("node out of range");
  Eigen::VectorXd q = Eigen::VectorXd::Zero(scheme_.levels(i) + 1);
  for_each_support_point([&](std::span<const int> x, double prob) {
    q(x[static_cast<std::size_t>(i)]) += prob;
  });
  return q;
}

Eigen::MatrixXd pairwise_marginal(const JointPMF& pmf, int i, int j) {
  if (i < 0 || i >= pmf.p() || j < 0 || j >= pmf.p()) throw UsageError("node out of range");
  if (i == j) throw UsageError("pairwise marginal needs two distinct nodes");
  Eigen::MatrixXd t =
      Eigen::MatrixXd::Zero(pmf.scheme().levels(i) + 1, pmf.scheme().levels(j) + 1);
  pmf.for_each_support_point([&](std::span<const int> x, double prob) {
    t(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]) += prob;
  });
  return t;
}

JointPMF empirical_pmf(const Dataset& data, std::size_t cap) {
  const std::size_t n_points = support_size(data.scheme(), cap);
  std::vector<double> counts(n_points, 0.0);
  std::vector<std::size_t> strides(static_cast<std::size_t>(data.p()));
  std::size_t stride = 1;
  for (int i = 0; i < data.p(); ++i) {
    strides[static_cast<std::size_t>(i)] = stride;
    stride *= static_cast<std::size_t>(data.scheme().levels(i)) + 1;
  }
  for (int k = 0; k < data.n(); ++k) {
    std::size_t index = 0;
    for (int i = 0; i < data.p(); ++i) {
      index += static_cast<std::size_t>(data.rows()(k, i)) * strides[static_cast<std::size_t>(i)];
    }
    counts[index] += 1.0;
  }
  for (double& c : counts) c /= static_cast<double>(data.n());
  return JointPMF(data.scheme(), std::move(counts), cap);
}

}  // namespace dasg
