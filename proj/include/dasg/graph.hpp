#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace dasg {

class BlockMatrix;

// Undirected simple graph on nodes 0..p-1. Edges are stored as (i, j), i < j.
class Graph {
 public:
  using Edge = std::pair<int, int>;

  Graph() = default;
  explicit Graph(int p);
  Graph(int p, const std::vector<Edge>& edges);

  static Graph complete(int p);

  int p() const noexcept { return p_; }
  void add_edge(int i, int j);
  bool has_edge(int i, int j) const;
  const std::set<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  // Number of unordered non-self pairs.
  std::size_t pair_count() const noexcept {
    return static_cast<std::size_t>(p_) * (p_ - 1) / 2;
  }
  int degree(int i) const;
  int max_degree() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_node(int i) const;

  int p_ = 0;
  std::set<Edge> edges_;
};

// Edges (i, j), i != j, whose block has Frobenius norm strictly above tol.
Graph edges_from_blocks(const BlockMatrix& m, double tol = 0.0);

struct GraphMetrics {
  std::optional<double> tpr;  // absent when truth has no edges
  std::optional<double> tnr;  // absent when truth is complete
  std::optional<double> f1;   // absent when truth has no edges
  std::size_t true_positives = 0;
  std::size_t estimated_edges = 0;
  std::size_t true_edges = 0;
};

GraphMetrics graph_metrics(const Graph& estimate, const Graph& truth);

std::vector<int> neighborhood(const Graph& g, int i);

// True iff deleting edge (i, j) and every edge between `separator` and its
// complement leaves i and j in different connected components.
bool is_separator(const Graph& g, int i, int j, const std::vector<int>& separator);

}  // namespace dasg
