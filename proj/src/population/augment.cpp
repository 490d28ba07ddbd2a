#include "dasg/augment.hpp"

#include <algorithm>
#include <string>

#include "dasg/error.hpp"

namespace dasg {

AugmentedScheme::AugmentedScheme(NodeScheme base_scheme, std::vector<std::vector<int>> subsets)
    : base(std::move(base_scheme)), extra(std::move(subsets)) {
  if (!base.is_binary()) throw UsageError("augmentation needs a binary scheme");
  for (const auto& set : extra) {
    if (set.size() < 3 || set.size() % 2 == 0) {
      throw UsageError("interaction sets must have odd size of at least 3");
    }
    for (int k : set) {
      if (k < 0 || k >= base.p()) throw UsageError("interaction node out of range");
    }
  }
}

std::vector<std::vector<int>> odd_interaction_sets(std::vector<int> nodes) {
  std::sort(nodes.begin(), nodes.end());
  const int r = static_cast<int>(nodes.size());
  std::vector<std::vector<int>> out;
  for (int size = 3; size <= r; size += 2) {
    // Lexicographic k-combinations via a selection mask.
    std::vector<char> mask(static_cast<std::size_t>(r), 0);
    std::fill(mask.begin(), mask.begin() + size, 1);
    do {
      std::vector<int> set;
      for (int k = 0; k < r; ++k)
        if (mask[static_cast<std::size_t>(k)]) set.push_back(nodes[static_cast<std::size_t>(k)]);
      out.push_back(std::move(set));
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return out;
}

AugmentedPmf augment(const JointPMF& pmf, const std::vector<int>& separator, std::size_t cap) {
  if (!pmf.scheme().is_binary()) throw UsageError("augmentation needs a binary scheme");
  std::vector<int> r = separator;
  std::sort(r.begin(), r.end());
  if (std::adjacent_find(r.begin(), r.end()) != r.end()) {
    throw UsageError("separator lists a node twice");
  }
  if (r.size() < 3) throw UsageError("augmentation needs a separator of at least 3 nodes");
  for (int k : r) {
    if (k < 0 || k >= pmf.p()) {
      throw UsageError("separator node " + std::to_string(k + 1) + " out of range");
    }
  }

  AugmentedScheme scheme(pmf.scheme(), odd_interaction_sets(r));
  const NodeScheme full = scheme.full();
  std::vector<double> table(support_size(full, cap), 0.0);
  const int p = pmf.p();
  pmf.for_each_support_point([&](std::span<const int> x, double prob) {
    std::size_t index = 0;
    for (int i = 0; i < p; ++i) index |= static_cast<std::size_t>(x[static_cast<std::size_t>(i)]) << i;
    for (std::size_t k = 0; k < scheme.extra.size(); ++k) {
      int spin = 1;
      for (int node : scheme.extra[k]) spin *= 2 * x[static_cast<std::size_t>(node)] - 1;
      if (spin > 0) index |= std::size_t{1} << (p + static_cast<int>(k));
    }
    table[index] += prob;
  });
  return AugmentedPmf{std::move(scheme), JointPMF(full, std::move(table), cap)};
}

}  // namespace dasg
