#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "dasg/node_scheme.hpp"

namespace dasg {

using CodeMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Integer-coded sample: row k, column i holds a code in {0, ..., m_i}.
// `labels[i][c]` is the original label of code c at node i (e.g. "-1", "+1").
class Dataset {
 public:
  Dataset() = default;
  Dataset(NodeScheme scheme, CodeMatrix rows, std::vector<std::string> names = {},
          std::vector<std::vector<std::string>> labels = {});

  const NodeScheme& scheme() const noexcept { return scheme_; }
  const CodeMatrix& rows() const noexcept { return rows_; }
  int n() const noexcept { return static_cast<int>(rows_.rows()); }
  int p() const noexcept { return scheme_.p(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<std::vector<std::string>>& labels() const noexcept { return labels_; }

  // Rows selected by index (repetitions allowed); labels and names carry over.
  Dataset subset(const std::vector<int>& row_indices) const;

 private:
  NodeScheme scheme_;
  CodeMatrix rows_;
  std::vector<std::string> names_;
  std::vector<std::vector<std::string>> labels_;
};

// {0,1} codes for the {-1,+1} spin alphabet.
std::vector<std::vector<std::string>> spin_labels(int p);

}  // namespace dasg
