#include "dasg/irrep.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Cholesky>

#include "dasg/error.hpp"

namespace dasg {

Eigen::MatrixXd gamma_matrix(const Eigen::MatrixXd& sigma) {
  const Eigen::Index m = sigma.rows();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m * m, m * m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      const Eigen::Index row = a * m + b;
      // Sigma_ac delta_bd + Sigma_bd delta_ac, halved.
      for (Eigen::Index c = 0; c < m; ++c) g(row, c * m + b) += 0.5 * sigma(a, c);
      for (Eigen::Index dd = 0; dd < m; ++dd) g(row, a * m + dd) += 0.5 * sigma(b, dd);
    }
  }
  return g;
}

IrrepReport irrep_diagnostics(const BlockMatrix& sigma, const Graph& support,
                              const IrrepOptions& options) {
  const NodeScheme& s = sigma.scheme();
  const int dim = s.dim();
  const int p = s.p();
  if (dim > options.max_dim) {
    throw UsageError("irrepresentable diagnostics capped at dimension " +
                     std::to_string(options.max_dim) + ", got " + std::to_string(dim));
  }
  if (support.p() != p) throw UsageError("support graph has the wrong node count");

  // Ordered block pairs in S (diagonal plus both orientations of each edge) and S^c.
  using Pair = std::pair<int, int>;
  std::vector<Pair> in_s;
  std::vector<Pair> out_s;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      (i == j || support.has_edge(i, j) ? in_s : out_s).emplace_back(i, j);

  auto indices = [&](const Pair& e) {
    std::vector<Eigen::Index> idx;
    for (int a = 0; a < s.block_size(e.first); ++a)
      for (int b = 0; b < s.block_size(e.second); ++b)
        idx.push_back(static_cast<Eigen::Index>(s.block_offset(e.first) + a) * dim +
                      s.block_offset(e.second) + b);
    return idx;
  };
  std::vector<Eigen::Index> idx_s;
  std::vector<Eigen::Index> s_starts;  // first column of each S block inside idx_s
  for (const auto& e : in_s) {
    s_starts.push_back(static_cast<Eigen::Index>(idx_s.size()));
    const auto idx = indices(e);
    idx_s.insert(idx_s.end(), idx.begin(), idx.end());
  }
  s_starts.push_back(static_cast<Eigen::Index>(idx_s.size()));

  const Eigen::MatrixXd gamma = gamma_matrix(sigma.data());
  const Eigen::MatrixXd g_ss = gamma(idx_s, idx_s);
  const Eigen::LLT<Eigen::MatrixXd> llt(g_ss);
  if (llt.info() != Eigen::Success) throw NumericalError("Gamma_SS is singular");
  const Eigen::MatrixXd g_ss_inv = llt.solve(Eigen::MatrixXd::Identity(g_ss.rows(), g_ss.cols()));

  IrrepReport report;
  report.kappa_gamma = g_ss_inv.cwiseAbs().rowwise().sum().maxCoeff();
  report.kappa_sigma = sigma.data().cwiseAbs().rowwise().sum().maxCoeff();
  report.d = support.max_degree();

  double worst = 0.0;
  for (const auto& e : out_s) {
    const auto rows = indices(e);
    const Eigen::MatrixXd upsilon = gamma(rows, idx_s) * g_ss_inv;
    double total = 0.0;
    for (Eigen::Index f = 0; f < upsilon.rows(); ++f) {
      double row_sum = 0.0;
      for (std::size_t b = 0; b + 1 < s_starts.size(); ++b) {
        row_sum += upsilon.row(f).segment(s_starts[b], s_starts[b + 1] - s_starts[b]).norm();
      }
      total += row_sum * row_sum;
    }
    worst = std::max(worst, std::sqrt(total));
  }
  report.gamma = 1.0 - worst;
  report.holds = report.gamma > 0.0;
  return report;
}

IrrepReport irrep_diagnostics(const JointPMF& pmf, const IrrepOptions& options) {
  if (pmf.scheme().dim() > options.max_dim) {
    throw UsageError("irrepresentable diagnostics capped at dimension " +
                     std::to_string(options.max_dim));
  }
  const BlockMatrix sigma = vertex_davo(pmf);
  const Graph support = edges_from_blocks(invert_spd(sigma), options.zero_tol);
  return irrep_diagnostics(sigma, support, options);
}

}  // namespace dasg
