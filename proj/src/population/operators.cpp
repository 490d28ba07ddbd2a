#include "dasg/operators.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "dasg/error.hpp"

namespace dasg {
namespace {

constexpr double kRankTolerance = 1e-12;

NodeScheme one_hot_scheme(const NodeScheme& s) {
  std::vector<int> sizes;
  for (int m : s.levels()) sizes.push_back(m + 1);
  return NodeScheme(std::move(sizes));
}

// Assembles a symmetric block matrix from the upper-triangular blocks.
template <typename BlockFn>
Eigen::MatrixXd assemble_symmetric(const NodeScheme& s, BlockFn&& block) {
  Eigen::MatrixXd out(s.dim(), s.dim());
  for (int i = 0; i < s.p(); ++i) {
    for (int j = i; j < s.p(); ++j) {
      const Eigen::MatrixXd b = block(i, j);
      out.block(s.block_offset(i), s.block_offset(j), s.block_size(i), s.block_size(j)) = b;
      if (i != j) {
        out.block(s.block_offset(j), s.block_offset(i), s.block_size(j), s.block_size(i)) =
            b.transpose();
      } else {
        const auto d = out.block(s.block_offset(i), s.block_offset(i), s.block_size(i),
                                 s.block_size(i));
        const Eigen::MatrixXd sym = 0.5 * (d + d.transpose());
        out.block(s.block_offset(i), s.block_offset(i), s.block_size(i), s.block_size(i)) = sym;
      }
    }
  }
  return out;
}

}  // namespace

PairwiseMoments::PairwiseMoments(const JointPMF& pmf) : scheme_(pmf.scheme()) {
  const NodeScheme hot = one_hot_scheme(scheme_);
  for (int i = 0; i < hot.p(); ++i) offsets_.push_back(hot.block_offset(i));
  second_ = Eigen::MatrixXd::Zero(hot.dim(), hot.dim());
  const int p = scheme_.p();
  std::vector<int> active(static_cast<std::size_t>(p));
  pmf.for_each_support_point([&](std::span<const int> x, double prob) {
    for (int i = 0; i < p; ++i) {
      active[static_cast<std::size_t>(i)] =
          offsets_[static_cast<std::size_t>(i)] + x[static_cast<std::size_t>(i)];
    }
    for (int j = 0; j < p; ++j) {
      const int cj = active[static_cast<std::size_t>(j)];
      for (int i = 0; i <= j; ++i) second_(active[static_cast<std::size_t>(i)], cj) += prob;
    }
  });
  second_.triangularView<Eigen::StrictlyLower>() = second_.transpose();
}

Eigen::MatrixXd PairwiseMoments::pair(int i, int j) const {
  const int mi = scheme_.levels(i) + 1;
  const int mj = scheme_.levels(j) + 1;
  return second_.block(offsets_[static_cast<std::size_t>(i)],
                       offsets_[static_cast<std::size_t>(j)], mi, mj);
}

Eigen::VectorXd PairwiseMoments::marginal(int i) const {
  return pair(i, i).diagonal();
}

BlockMatrix vertex_davo(const JointPMF& pmf) {
  const PairwiseMoments mom(pmf);
  const NodeScheme& s = pmf.scheme();
  for (int i = 0; i < s.p(); ++i) {
    const Eigen::VectorXd q = mom.marginal(i);
    for (int l = 1; l <= s.levels(i); ++l) {
      if (q(l) <= 0.0 || q(l) >= 1.0) {
        throw DegenerateNodeError(i, "indicator of level " + std::to_string(l) + " at node " +
                                         std::to_string(i + 1) + " is constant");
      }
    }
  }
  Eigen::MatrixXd data = assemble_symmetric(s, [&](int i, int j) {
    const Eigen::VectorXd qi = mom.marginal(i).tail(s.levels(i));
    const Eigen::VectorXd qj = mom.marginal(j).tail(s.levels(j));
    return Eigen::MatrixXd(mom.pair(i, j).bottomRightCorner(s.levels(i), s.levels(j)) -
                           qi * qj.transpose());
  });
  return BlockMatrix(s, std::move(data));
}

BlockMatrix invert_spd(const BlockMatrix& m) {
  const Eigen::MatrixXd& a = m.data();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  const double floor =
      static_cast<double>(a.rows()) * std::numeric_limits<double>::epsilon() * std::max(hi, 0.0);
  if (!(lo > floor)) {
    throw NumericalError("matrix is not positive definite (smallest eigenvalue " +
                         std::to_string(lo) + ")");
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) throw NumericalError("Cholesky factorization failed");
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
  inv = 0.5 * (inv + inv.transpose());
  return BlockMatrix(m.scheme(), std::move(inv));
}

BlockMatrix vertex_dapo(const JointPMF& pmf) { return invert_spd(vertex_davo(pmf)); }

Eigen::MatrixXd orthonormal_basis(const JointPMF& pmf, int i) {
  if (i < 0 || i >= pmf.p()) throw UsageError("node out of range");
  const int m = pmf.scheme().levels(i);
  const Eigen::VectorXd q = pmf.marginal(i);
  const Eigen::VectorXd q1 = q.tail(m);
  const Eigen::MatrixXd cov = Eigen::MatrixXd(q1.asDiagonal()) - q1 * q1.transpose();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::VectorXd& ev = eig.eigenvalues();
  const double cutoff = kRankTolerance * std::max(ev.maxCoeff(), 0.0);
  int rank = 0;
  for (int k = 0; k < m; ++k) rank += ev(k) > cutoff ? 1 : 0;
  if (rank == 0) {
    throw DegenerateNodeError(i, "node " + std::to_string(i + 1) + " has no variance");
  }

  // Whitening map from centred indicators to an orthonormal basis.
  Eigen::MatrixXd whiten;
  const Eigen::MatrixXd& vec = eig.eigenvectors();
  if (rank == m) {
    whiten = vec * ev.cwiseInverse().cwiseSqrt().asDiagonal() * vec.transpose();
  } else {
    // Eigenvalues are ascending, so the kept directions are the last `rank`.
    const Eigen::VectorXd keep = ev.tail(rank).cwiseInverse().cwiseSqrt();
    whiten = keep.asDiagonal() * vec.rightCols(rank).transpose();
  }

  Eigen::MatrixXd centred(m, m + 1);
  centred.col(0) = -q1;
  for (int v = 1; v <= m; ++v) {
    centred.col(v) = -q1;
    centred(v - 1, v) += 1.0;
  }
  return whiten * centred;
}

BlockMatrix orthonormal_davo(const JointPMF& pmf, const std::vector<Eigen::MatrixXd>& bases) {
  const NodeScheme& s = pmf.scheme();
  if (static_cast<int>(bases.size()) != s.p()) throw UsageError("one basis per node required");
  std::vector<int> sizes;
  for (int i = 0; i < s.p(); ++i) {
    if (bases[static_cast<std::size_t>(i)].cols() != s.levels(i) + 1) {
      throw UsageError("basis for node " + std::to_string(i + 1) + " has the wrong support size");
    }
    sizes.push_back(static_cast<int>(bases[static_cast<std::size_t>(i)].rows()));
  }
  const NodeScheme out_scheme(sizes);
  const PairwiseMoments mom(pmf);
  std::vector<Eigen::VectorXd> means;
  for (int i = 0; i < s.p(); ++i) {
    means.push_back(bases[static_cast<std::size_t>(i)] * mom.marginal(i));
  }
  Eigen::MatrixXd data = assemble_symmetric(out_scheme, [&](int i, int j) {
    const Eigen::MatrixXd& ui = bases[static_cast<std::size_t>(i)];
    const Eigen::MatrixXd& uj = bases[static_cast<std::size_t>(j)];
    return Eigen::MatrixXd(ui * mom.pair(i, j) * uj.transpose() -
                           means[static_cast<std::size_t>(i)] *
                               means[static_cast<std::size_t>(j)].transpose());
  });
  return BlockMatrix(out_scheme, std::move(data));
}

BlockMatrix orthonormal_davo(const JointPMF& pmf) {
  std::vector<Eigen::MatrixXd> bases;
  for (int i = 0; i < pmf.p(); ++i) bases.push_back(orthonormal_basis(pmf, i));
  return orthonormal_davo(pmf, bases);
}

BlockMatrix orthonormal_dapo(const JointPMF& pmf) { return invert_spd(orthonormal_davo(pmf)); }

Eigen::MatrixXd hs_norms(const JointPMF& pmf) {
  return block_frobenius_norms(orthonormal_dapo(pmf));
}

}  // namespace dasg
