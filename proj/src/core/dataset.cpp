#include "dasg/dataset.hpp"

#include <string>

#include "dasg/error.hpp"

namespace dasg {

Dataset::Dataset(NodeScheme scheme, CodeMatrix rows, std::vector<std::string> names,
                 std::vector<std::vector<std::string>> labels)
    : scheme_(std::move(scheme)),
      rows_(std::move(rows)),
      names_(std::move(names)),
      labels_(std::move(labels)) {
  const int p = scheme_.p();
  if (rows_.cols() != p) {
    throw DataError("dataset has " + std::to_string(rows_.cols()) + " columns, scheme has " +
                    std::to_string(p) + " nodes");
  }
  if (rows_.rows() < 2) throw DataError("dataset needs at least 2 rows");
  for (Eigen::Index k = 0; k < rows_.rows(); ++k) {
    for (int i = 0; i < p; ++i) {
      const int v = rows_(k, i);
      if (v < 0 || v > scheme_.levels(i)) {
        throw DataError("row " + std::to_string(k + 1) + ", node " + std::to_string(i + 1) +
                        ": code " + std::to_string(v) + " outside 0.." +
                        std::to_string(scheme_.levels(i)));
      }
    }
  }
  if (names_.empty()) {
    for (int i = 0; i < p; ++i) names_.push_back("X" + std::to_string(i + 1));
  }
  if (static_cast<int>(names_.size()) != p) throw DataError("one name per node required");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != p) {
    throw DataError("label map must cover every node");
  }
}

Dataset Dataset::subset(const std::vector<int>& row_indices) const {
  CodeMatrix out(static_cast<Eigen::Index>(row_indices.size()), rows_.cols());
  for (std::size_t k = 0; k < row_indices.size(); ++k) {
    out.row(static_cast<Eigen::Index>(k)) = rows_.row(row_indices[k]);
  }
  return Dataset(scheme_, std::move(out), names_, labels_);
}

std::vector<std::vector<std::string>> spin_labels(int p) {
  return std::vector<std::vector<std::string>>(static_cast<std::size_t>(p), {"-1", "+1"});
}

}  // namespace dasg
