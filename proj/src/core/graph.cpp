#include "dasg/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "dasg/block_matrix.hpp"
#include "dasg/error.hpp"

namespace dasg {

Graph::Graph(int p) : p_(p) {
  if (p < 1) throw UsageError("graph needs at least one node");
}

Graph::Graph(int p, const std::vector<Edge>& edges) : Graph(p) {
  for (const auto& [i, j] : edges) add_edge(i, j);
}

Graph Graph::complete(int p) {
  Graph g(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) g.edges_.emplace(i, j);
  return g;
}

void Graph::check_node(int i) const {
  if (i < 0 || i >= p_) {
    throw UsageError("node " + std::to_string(i + 1) + " out of range 1.." + std::to_string(p_));
  }
}

void Graph::add_edge(int i, int j) {
  check_node(i);
  check_node(j);
  if (i == j) throw UsageError("self-loop at node " + std::to_string(i + 1));
  edges_.emplace(std::min(i, j), std::max(i, j));
}

bool Graph::has_edge(int i, int j) const {
  check_node(i);
  check_node(j);
  return i != j && edges_.contains({std::min(i, j), std::max(i, j)});
}

int Graph::degree(int i) const {
  check_node(i);
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [i](const Edge& e) {
    return e.first == i || e.second == i;
  }));
}

int Graph::max_degree() const {
  std::vector<int> deg(static_cast<std::size_t>(p_), 0);
  for (const auto& [i, j] : edges_) {
    ++deg[static_cast<std::size_t>(i)];
    ++deg[static_cast<std::size_t>(j)];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

Graph edges_from_blocks(const BlockMatrix& m, double tol) {
  if (!(tol >= 0.0)) throw UsageError("edge tolerance must be nonnegative");
  if (!m.is_symmetric()) throw UsageError("edges_from_blocks needs a symmetric matrix");
  const Eigen::MatrixXd norms = block_frobenius_norms(m);
  Graph g(m.p());
  for (int i = 0; i < m.p(); ++i)
    for (int j = i + 1; j < m.p(); ++j)
      if (norms(i, j) > tol) g.add_edge(i, j);
  return g;
}

GraphMetrics graph_metrics(const Graph& estimate, const Graph& truth) {
  if (estimate.p() != truth.p()) {
    throw UsageError("graphs have different node counts: " + std::to_string(estimate.p()) +
                     " vs " + std::to_string(truth.p()));
  }
  GraphMetrics out;
  out.true_edges = truth.edge_count();
  out.estimated_edges = estimate.edge_count();
  for (const auto& e : estimate.edges())
    if (truth.edges().contains(e)) ++out.true_positives;

  const std::size_t pairs = truth.pair_count();
  const std::size_t true_negatives =
      pairs - out.true_edges - (out.estimated_edges - out.true_positives);
  if (out.true_edges > 0) {
    out.tpr = static_cast<double>(out.true_positives) / static_cast<double>(out.true_edges);
    out.f1 = 2.0 * static_cast<double>(out.true_positives) /
             static_cast<double>(out.true_edges + out.estimated_edges);
  }
  if (pairs > out.true_edges) {
    out.tnr = static_cast<double>(true_negatives) / static_cast<double>(pairs - out.true_edges);
  }
  return out;
}

std::vector<int> neighborhood(const Graph& g, int i) {
  if (i < 0 || i >= g.p()) throw UsageError("node out of range");
  std::vector<int> out;
  for (const auto& [a, b] : g.edges()) {
    if (a == i) out.push_back(b);
    if (b == i) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_separator(const Graph& g, int i, int j, const std::vector<int>& separator) {
  const int p = g.p();
  if (i < 0 || i >= p || j < 0 || j >= p) throw UsageError("node out of range");
  if (i == j) throw UsageError("separator query needs two distinct nodes");
  std::vector<char> in_r(static_cast<std::size_t>(p), 0);
  for (int r : separator) {
    if (r < 0 || r >= p) throw UsageError("separator node out of range");
    if (r == i || r == j) throw UsageError("separator must not contain i or j");
    in_r[static_cast<std::size_t>(r)] = 1;
  }

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(p));
  for (const auto& [a, b] : g.edges()) {
    if ((a == i && b == j) || (a == j && b == i)) continue;
    if (in_r[static_cast<std::size_t>(a)] != in_r[static_cast<std::size_t>(b)]) continue;
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }

  std::vector<char> seen(static_cast<std::size_t>(p), 0);
  std::queue<int> frontier;
  frontier.push(i);
  seen[static_cast<std::size_t>(i)] = 1;
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    if (v == j) return false;
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        frontier.push(w);
      }
    }
  }
  return true;
}

}  // namespace dasg
