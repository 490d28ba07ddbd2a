#pragma once

#include <vector>

#include "dasg/joint_pmf.hpp"

namespace dasg {

// Binary base scheme plus one {-1,+1} product variable per listed subset.
// Extra variable k equals the product of the spins of extra[k].
struct AugmentedScheme {
  NodeScheme base;
  std::vector<std::vector<int>> extra;

  AugmentedScheme(NodeScheme base_scheme, std::vector<std::vector<int>> subsets);
  NodeScheme full() const { return NodeScheme::binary(base.p() + static_cast<int>(extra.size())); }
};

struct AugmentedPmf {
  AugmentedScheme scheme;
  JointPMF pmf;
};

// Odd-cardinality subsets of `nodes` with at least three members, ordered by
// size and then lexicographically.
std::vector<std::vector<int>> odd_interaction_sets(std::vector<int> nodes);

// Pushforward of a binary pmf onto (X, interactions of X over `separator`).
AugmentedPmf augment(const JointPMF& pmf, const std::vector<int>& separator,
                     std::size_t cap = JointPMF::kDefaultCap);

}  // namespace dasg
