#pragma once

#include <optional>

#include <Eigen/Core>

#include "dasg/block_matrix.hpp"
#include "dasg/dataset.hpp"
#include "dasg/graph.hpp"

namespace dasg {

// Sample covariance of the indicator vectors (V_1(X^1), ..., V_p(X^p)) with
// divisor n. Throws DataError when some node is constant in the sample.
BlockMatrix sample_davo(const Dataset& data);

// Same, without the constant-column check (used for held-out folds).
BlockMatrix indicator_covariance(const Dataset& data);

// Solver for H(A, B) = argmin_{Theta sym} 1/2 <Theta^2, A> - <Theta, B>, i.e.
// the symmetric solution of (A Theta + Theta A)/2 = (B + B^T)/2. The
// eigendecomposition of A is computed once and reused across solves.
class SylvesterSolver {
 public:
  explicit SylvesterSolver(const Eigen::MatrixXd& a);
  Eigen::MatrixXd solve(const Eigen::MatrixXd& b) const;
  // Writes the solution into `out`; `work` is scratch of the same size.
  void solve(const Eigen::MatrixXd& b, Eigen::MatrixXd& out, Eigen::MatrixXd& work) const;

 private:
  Eigen::MatrixXd vectors_;
  Eigen::MatrixXd weights_;  // 2 / (sigma_a + sigma_b)
};

Eigen::MatrixXd h_step(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Group soft-thresholding of the off-diagonal blocks; diagonal blocks pass
// through. Blocks with Frobenius norm <= lam become exact zeros.
BlockMatrix s_step(const BlockMatrix& a, double lam);
// In-place variant over a raw matrix partitioned by `scheme`.
void soft_threshold_blocks(const NodeScheme& scheme, Eigen::MatrixXd& a, double lam);

struct SolverConfig {
  double rho = 1.0;
  int max_iter = 2000;
  double tol_primal = 1e-6;
  double tol_dual = 1e-6;
  double lambda = 0.0;

  void validate() const;
};

// Optional starting point for path and resampling loops.
struct WarmStart {
  Eigen::MatrixXd theta0;
  Eigen::MatrixXd dual;
};

struct FitResult {
  BlockMatrix theta;  // the exactly sparse copy Theta_0
  Graph edges;
  int iterations = 0;
  double primal_residual = 0.0;  // ||Theta - Theta_0||_F / max(||Theta_0||_F, 1)
  double dual_residual = 0.0;    // rho ||dTheta_0||_F / max(||Theta_0||_F, 1)
  double objective = 0.0;
  double lambda = 0.0;
  bool converged = false;
  WarmStart state;
};

// D-trace group-Lasso by ADMM. Non-convergence is reported through
// `converged`, not thrown.
FitResult fit_dtrace(const BlockMatrix& sigma_hat, const SolverConfig& config,
                     const WarmStart* warm = nullptr);

// 1/2 <Theta^2, Sigma>_F - tr(Theta) + lam * sum_{i != j} ||Theta_[i,j]||_F.
double objective(const BlockMatrix& theta, const BlockMatrix& sigma, double lam);
// The smooth part only.
double dtrace_loss(const Eigen::MatrixXd& theta, const Eigen::MatrixXd& sigma);

// Optimality report for a candidate Theta_0, with G = (Sigma Theta + Theta Sigma)/2 - I.
struct KktReport {
  double diagonal = 0.0;  // max ||G_[i,i]||_F
  double active = 0.0;    // max ||G_[i,j] + lam Theta_[i,j]/||Theta_[i,j]|| ||_F over nonzero blocks
  double inactive = 0.0;  // max (||G_[i,j]||_F - lam)_+ over zero blocks
  double worst() const { return std::max({diagonal, active, inactive}); }
  bool passes(double tol) const { return worst() <= tol; }
};

KktReport kkt_certificate(const BlockMatrix& theta, const BlockMatrix& sigma, double lam);

// Tolerance a converged fit must meet in kkt_certificate: ten times the
// solver tolerance on the residuals' relative scale.
double kkt_tolerance(const FitResult& fit, const SolverConfig& config);

// Norm-thresholding baseline: edges of (Sigma + eps I)^{-1} whose blocks
// exceed `threshold`.
Graph ridge_inverse_baseline(const BlockMatrix& sigma_hat, double eps, double threshold);
// Block norms of (Sigma + eps I)^{-1}.
Eigen::MatrixXd ridge_inverse_norms(const BlockMatrix& sigma_hat, double eps);

// The rate-optimal lambda_n of the consistency theory, for known constants.
struct TheoryLambdaInputs {
  double gamma = 0.0;
  double kappa_sigma = 0.0;
  double kappa_gamma = 0.0;
  int d = 0;
  double tau = 3.0;
  int m = 1;
  int n = 0;
  int p = 0;
};
double theory_lambda(const TheoryLambdaInputs& in);

}  // namespace dasg
