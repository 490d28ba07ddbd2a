#pragma once

#include <span>
#include <vector>

namespace dasg {

// Per-node support sizes. Node i takes values in {0, ..., m_i}; its
// indicator block has m_i columns (level 0 is the reference level).
class NodeScheme {
 public:
  NodeScheme() = default;
  explicit NodeScheme(std::vector<int> levels);

  static NodeScheme uniform(int p, int m);
  static NodeScheme binary(int p) { return uniform(p, 1); }

  int p() const noexcept { return static_cast<int>(levels_.size()); }
  // Total indicator dimension, sum of m_i.
  int dim() const noexcept { return offsets_.empty() ? 0 : offsets_.back(); }
  int levels(int i) const { return levels_.at(i); }
  int block_size(int i) const { return levels_.at(i); }
  int block_offset(int i) const { return offsets_.at(i); }
  std::span<const int> levels() const noexcept { return levels_; }
  bool is_binary() const noexcept;
  // Node owning indicator coordinate `k`.
  int node_of(int k) const;

  friend bool operator==(const NodeScheme&, const NodeScheme&) = default;

 private:
  std::vector<int> levels_;
  std::vector<int> offsets_;  // size p + 1
};

}  // namespace dasg
