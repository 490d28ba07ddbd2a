#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "dasg/error.hpp"
#include "dasg/estimator.hpp"
#include "dasg/kernels.hpp"

namespace dasg {
namespace {

std::span<double> flat(Eigen::MatrixXd& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}
std::span<const double> flat(const Eigen::MatrixXd& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

void symmetrize(Eigen::MatrixXd& m) {
  const Eigen::Index d = m.rows();
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = j + 1; i < d; ++i) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = v;
      m(j, i) = v;
    }
  }
}

}  // namespace

SylvesterSolver::SylvesterSolver(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw UsageError("H step needs a square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  if (eig.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  const Eigen::VectorXd& ev = eig.eigenvalues();
  if (ev.size() > 0 && !(ev.minCoeff() > 0.0)) {
    throw NumericalError("H step needs a positive definite matrix (smallest eigenvalue " +
                         std::to_string(ev.minCoeff()) + ")");
  }
  vectors_ = eig.eigenvectors();
  const Eigen::Index d = ev.size();
  weights_.resize(d, d);
  for (Eigen::Index b = 0; b < d; ++b)
    for (Eigen::Index a2 = 0; a2 < d; ++a2) weights_(a2, b) = 2.0 / (ev(a2) + ev(b));
}

void SylvesterSolver::solve(const Eigen::MatrixXd& b, Eigen::MatrixXd& out,
                            Eigen::MatrixXd& work) const {
  out = 0.5 * (b + b.transpose());
  work.noalias() = vectors_.transpose() * out;
  out.noalias() = work * vectors_;
  kernels::hadamard(flat(out), flat(weights_));
  work.noalias() = vectors_ * out;
  out.noalias() = work * vectors_.transpose();
  symmetrize(out);
}

Eigen::MatrixXd SylvesterSolver::solve(const Eigen::MatrixXd& b) const {
  Eigen::MatrixXd out;
  Eigen::MatrixXd work;
  solve(b, out, work);
  return out;
}

Eigen::MatrixXd h_step(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (b.rows() != a.rows() || b.cols() != a.cols()) throw UsageError("H step shape mismatch");
  return SylvesterSolver(a).solve(b);
}

void soft_threshold_blocks(const NodeScheme& s, Eigen::MatrixXd& a, double lam) {
  if (!(lam >= 0.0)) throw UsageError("threshold must be nonnegative");
  const int p = s.p();
  const bool binary = s.is_binary();
  // Shrink factor per block, computed from the lower triangle and mirrored so
  // the result stays exactly symmetric.
  Eigen::MatrixXd factor = Eigen::MatrixXd::Ones(p, p);
  for (int j = 0; j < p; ++j) {
    for (int i = j + 1; i < p; ++i) {
      const double norm =
          binary ? std::abs(a(i, j))
                 : a.block(s.block_offset(i), s.block_offset(j), s.block_size(i), s.block_size(j)).norm();
      const double f = norm > lam ? 1.0 - lam / norm : 0.0;
      factor(i, j) = f;
      factor(j, i) = f;
    }
  }
  if (binary) {
    kernels::hadamard(flat(a), flat(factor));
    return;
  }
  const int d = s.dim();
  std::vector<int> owner(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) owner[static_cast<std::size_t>(k)] = s.node_of(k);
  Eigen::MatrixXd expanded(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r)
      expanded(r, c) = factor(owner[static_cast<std::size_t>(r)], owner[static_cast<std::size_t>(c)]);
  kernels::hadamard(flat(a), flat(expanded));
}

BlockMatrix s_step(const BlockMatrix& a, double lam) {
  if (!a.is_symmetric()) throw UsageError("S step needs a symmetric matrix");
  Eigen::MatrixXd out = a.data();
  soft_threshold_blocks(a.scheme(), out, lam);
  return BlockMatrix(a.scheme(), std::move(out));
}

void SolverConfig::validate() const {
  if (!(rho > 0.0)) throw UsageError("rho must be positive");
  if (max_iter < 1) throw UsageError("max_iter must be at least 1");
  if (!(tol_primal > 0.0) || !(tol_dual > 0.0)) throw UsageError("tolerances must be positive");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw UsageError("lambda must be finite and >= 0");
}

double dtrace_loss(const Eigen::MatrixXd& theta, const Eigen::MatrixXd& sigma) {
  // <Theta^2, Sigma> = sum_ab Theta_ab (Theta Sigma)_ab for symmetric Theta.
  const Eigen::MatrixXd ts = theta * sigma;
  return 0.5 * kernels::dot(flat(theta), flat(ts)) - theta.trace();
}

double objective(const BlockMatrix& theta, const BlockMatrix& sigma, double lam) {
  if (theta.dim() != sigma.dim()) throw UsageError("objective: shape mismatch");
  double penalty = 0.0;
  if (lam != 0.0) {
    const Eigen::MatrixXd norms = block_frobenius_norms(theta);
    penalty = norms.sum() - norms.diagonal().sum();
  }
  return dtrace_loss(theta.data(), sigma.data()) + lam * penalty;
}

FitResult fit_dtrace(const BlockMatrix& sigma_hat, const SolverConfig& config,
                     const WarmStart* warm) {
  config.validate();
  if (!sigma_hat.is_symmetric()) throw UsageError("sample DAVO must be symmetric");
  const NodeScheme& scheme = sigma_hat.scheme();
  const Eigen::Index d = sigma_hat.dim();
  const Eigen::MatrixXd& sigma = sigma_hat.data();
  for (Eigen::Index k = 0; k < d; ++k) {
    if (!(sigma(k, k) > 0.0)) {
      throw NumericalError("sample DAVO has a zero diagonal entry at coordinate " +
                           std::to_string(k + 1));
    }
  }
  const double rho = config.rho;
  const SylvesterSolver solver(sigma + rho * Eigen::MatrixXd::Identity(d, d));

  Eigen::MatrixXd theta0;
  Eigen::MatrixXd dual;
  if (warm != nullptr && warm->theta0.rows() == d && warm->dual.rows() == d) {
    theta0 = warm->theta0;
    dual = warm->dual;
  } else {
    theta0 = sigma.diagonal().cwiseInverse().asDiagonal();
    dual = Eigen::MatrixXd::Zero(d, d);
  }

  Eigen::MatrixXd theta(d, d);
  Eigen::MatrixXd rhs(d, d);
  Eigen::MatrixXd work(d, d);
  Eigen::MatrixXd previous(d, d);
  FitResult fit;
  fit.lambda = config.lambda;
  for (int t = 1; t <= config.max_iter; ++t) {
    rhs = rho * theta0 - dual;
    rhs.diagonal().array() += 1.0;
    solver.solve(rhs, theta, work);

    previous.swap(theta0);
    theta0 = theta + dual / rho;
    soft_threshold_blocks(scheme, theta0, config.lambda / rho);
    kernels::dual_update(flat(dual), rho, flat(theta), flat(theta0));
    if (relative_asymmetry(dual) > kSymmetryTolerance) {
      throw NumericalError("ADMM dual variable lost symmetry");
    }

    const double scale = std::max(theta0.norm(), 1.0);
    fit.iterations = t;
    fit.primal_residual = std::sqrt(kernels::squared_distance(flat(theta), flat(theta0))) / scale;
    fit.dual_residual =
        rho * std::sqrt(kernels::squared_distance(flat(theta0), flat(previous))) / scale;
    if (fit.primal_residual <= config.tol_primal && fit.dual_residual <= config.tol_dual) {
      fit.converged = true;
      break;
    }
  }

  fit.theta = BlockMatrix(scheme, theta0);
  fit.edges = edges_from_blocks(fit.theta, 0.0);
  fit.objective = objective(fit.theta, sigma_hat, config.lambda);
  fit.state = WarmStart{std::move(theta0), std::move(dual)};
  return fit;
}

KktReport kkt_certificate(const BlockMatrix& theta, const BlockMatrix& sigma, double lam) {
  if (theta.dim() != sigma.dim()) throw UsageError("KKT: shape mismatch");
  const NodeScheme& s = theta.scheme();
  Eigen::MatrixXd g = sigma.data() * theta.data();
  g = 0.5 * (g + g.transpose()).eval();
  g.diagonal().array() -= 1.0;

  KktReport r;
  for (int i = 0; i < s.p(); ++i) {
    for (int j = 0; j < s.p(); ++j) {
      const auto gb = g.block(s.block_offset(i), s.block_offset(j), s.block_size(i), s.block_size(j));
      if (i == j) {
        r.diagonal = std::max(r.diagonal, gb.norm());
        continue;
      }
      const auto tb = theta.block(i, j);
      const double tn = tb.norm();
      if (tn > 0.0) {
        r.active = std::max(r.active, (gb + (lam / tn) * tb).norm());
      } else {
        r.inactive = std::max(r.inactive, gb.norm() - lam);
      }
    }
  }
  return r;
}

double kkt_tolerance(const FitResult& fit, const SolverConfig& config) {
  return 10.0 * std::max(config.tol_primal, config.tol_dual) *
         std::max(fit.theta.data().norm(), 1.0);
}

Eigen::MatrixXd ridge_inverse_norms(const BlockMatrix& sigma_hat, double eps) {
  if (!(eps > 0.0)) throw UsageError("ridge eps must be positive");
  const Eigen::Index d = sigma_hat.dim();
  const Eigen::MatrixXd a = sigma_hat.data() + eps * Eigen::MatrixXd::Identity(d, d);
  const Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) throw NumericalError("ridge-shifted DAVO is not positive definite");
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(d, d));
  inv = 0.5 * (inv + inv.transpose()).eval();
  return block_frobenius_norms(BlockMatrix(sigma_hat.scheme(), std::move(inv)));
}

Graph ridge_inverse_baseline(const BlockMatrix& sigma_hat, double eps, double threshold) {
  if (std::isnan(threshold) || threshold < 0.0) throw UsageError("threshold must be >= 0");
  const Eigen::MatrixXd norms = ridge_inverse_norms(sigma_hat, eps);
  Graph g(sigma_hat.p());
  for (int i = 0; i < sigma_hat.p(); ++i)
    for (int j = i + 1; j < sigma_hat.p(); ++j)
      if (norms(i, j) > threshold) g.add_edge(i, j);
  return g;
}

double theory_lambda(const TheoryLambdaInputs& in) {
  if (!(in.gamma > 0.0)) throw UsageError("theory lambda needs gamma > 0");
  if (in.n < 1 || in.p < 1 || in.m < 1 || in.d < 0) throw UsageError("theory lambda: bad sizes");
  const double m = in.m;
  return 9.0 / std::sqrt(2.0) / in.gamma *
         (in.kappa_sigma * in.kappa_gamma * in.kappa_gamma + in.kappa_gamma) * std::pow(m, 2.5) *
         in.d / std::sqrt(static_cast<double>(in.n)) *
         std::sqrt(std::log(6.0 * m * m) + in.tau * std::log(static_cast<double>(in.p)));
}

}  // namespace dasg
