#include "dasg/node_scheme.hpp"

#include <algorithm>
#include <string>

#include "dasg/error.hpp"

namespace dasg {

NodeScheme::NodeScheme(std::vector<int> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw UsageError("node scheme needs at least one node");
  offsets_.assign(levels_.size() + 1, 0);
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i] < 1) {
      throw UsageError("node " + std::to_string(i + 1) + " has support size m < 1");
    }
    offsets_[i + 1] = offsets_[i] + levels_[i];
  }
}

NodeScheme NodeScheme::uniform(int p, int m) {
  if (p < 1) throw UsageError("node scheme needs at least one node");
  return NodeScheme(std::vector<int>(static_cast<std::size_t>(p), m));
}

bool NodeScheme::is_binary() const noexcept {
  return std::all_of(levels_.begin(), levels_.end(), [](int m) { return m == 1; });
}

int NodeScheme::node_of(int k) const {
  if (k < 0 || k >= dim()) throw UsageError("indicator coordinate out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), k);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

}  // namespace dasg
