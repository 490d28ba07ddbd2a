#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <Eigen/Core>
#include <json.hpp>

#include "dasg/dataset.hpp"
#include "dasg/graph.hpp"
#include "dasg/ising.hpp"
#include "dasg/joint_pmf.hpp"

namespace dasg::io {

namespace fs = std::filesystem;

// Shortest decimal text with 12 significant digits.
std::string format_number(double v);
// v rounded to 12 significant digits, for JSON output.
double round12(double v);
// Recursively rounds every floating-point number in `j`.
nlohmann::json rounded(nlohmann::json j);

std::string read_text(const fs::path& path);
// Creates parent directories as needed.
void write_text(const fs::path& path, const std::string& text);
void write_json(const fs::path& path, const nlohmann::json& j);

// Header row of node names, then one row of integer codes per observation.
// The optional sidecar has one line per node: "name code=label code=label ...";
// it also fixes each node's number of levels. Without it, m_i is the largest
// observed code (at least 1).
Dataset read_dataset(const fs::path& csv, const std::optional<fs::path>& labels = std::nullopt);
void write_dataset(const fs::path& csv, const Dataset& data);
void write_labels(const fs::path& path, const Dataset& data);

// One "i<TAB>j" line per edge, 1-indexed, i < j. A leading "# p=N" line
// records the node count; `p` supplies it and must agree with the header.
Graph read_edges(const fs::path& path, std::optional<int> p = std::nullopt);
void write_edges(const fs::path& path, const Graph& g);

// First line "p m_1 ... m_p" (commas or blanks), then "x_1 ... x_p prob"
// lines; probabilities may be written as fractions a/b. Omitted points are 0.
JointPMF read_pmf(const fs::path& path);
IsingParams read_ising(const fs::path& path);

Eigen::MatrixXd read_matrix_csv(const fs::path& path);
void write_matrix_csv(const fs::path& path, const Eigen::MatrixXd& m);

}  // namespace dasg::io
