#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "dasg/error.hpp"
#include "dasg/rng.hpp"
#include "dasg/simgen.hpp"

namespace dasg {
namespace {

Dataset spin_dataset(CodeMatrix rows) {
  const int p = static_cast<int>(rows.cols());
  return Dataset(NodeScheme::binary(p), std::move(rows), {}, spin_labels(p));
}

Dataset sample_ising_exact(const IsingParams& params, int n, Rng& rng) {
  const int p = params.p();
  if (p > kExactIsingMaxNodes) {
    throw UsageError("exact Ising sampling is limited to " + std::to_string(kExactIsingMaxNodes) +
                     " nodes");
  }
  const JointPMF pmf = ising_pmf(params);
  std::vector<double> cdf(pmf.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    acc += pmf.table()[k];
    cdf[k] = acc;
  }
  CodeMatrix rows(n, p);
  for (int r = 0; r < n; ++r) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    const auto k = static_cast<std::size_t>(it - cdf.begin());
    for (int i = 0; i < p; ++i) rows(r, i) = static_cast<int>((k >> i) & 1U);
  }
  return spin_dataset(std::move(rows));
}

Dataset sample_ising_gibbs(const IsingParams& params, int n, Rng& rng, const GibbsConfig& cfg) {
  if (cfg.burn_in < 0 || cfg.thin < 1) throw UsageError("Gibbs needs burn_in >= 0 and thin >= 1");
  const int p = params.p();
  const Eigen::MatrixXd& b = params.beta();
  std::vector<std::vector<std::pair<int, double>>> neighbours(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i)
    for (int k = 0; k < p; ++k)
      if (k != i && b(i, k) != 0.0) neighbours[static_cast<std::size_t>(i)].emplace_back(k, b(i, k));

  std::vector<int> spin(static_cast<std::size_t>(p));
  for (int& s : spin) s = rng.uniform() < 0.5 ? -1 : 1;
  auto sweep = [&] {
    for (int i = 0; i < p; ++i) {
      double field = b(i, i);
      for (const auto& [k, w] : neighbours[static_cast<std::size_t>(i)]) {
        field += w * spin[static_cast<std::size_t>(k)];
      }
      const double up = 1.0 / (1.0 + std::exp(-2.0 * field));
      spin[static_cast<std::size_t>(i)] = rng.uniform() < up ? 1 : -1;
    }
  };
  for (int t = 0; t < cfg.burn_in; ++t) sweep();
  CodeMatrix rows(n, p);
  for (int r = 0; r < n; ++r) {
    for (int t = 0; t < cfg.thin; ++t) sweep();
    for (int i = 0; i < p; ++i) rows(r, i) = spin[static_cast<std::size_t>(i)] > 0 ? 1 : 0;
  }
  return spin_dataset(std::move(rows));
}

}  // namespace

std::string method_name(IsingMethod method) {
  return method == IsingMethod::exact ? "exact" : "gibbs";
}

Dataset sample_ising(const IsingParams& params, int n, std::uint64_t seed, IsingMethod method,
                     const GibbsConfig& gibbs) {
  if (n < 2) throw UsageError("sample size must be at least 2");
  Rng rng(seed);
  return method == IsingMethod::exact ? sample_ising_exact(params, n, rng)
                                      : sample_ising_gibbs(params, n, rng, gibbs);
}

SignGaussianLaw sign_gaussian_law(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw UsageError("pattern matrix must be square");
  const Eigen::LLT<Eigen::MatrixXd> llt_a(a);
  if (llt_a.info() != Eigen::Success) {
    const double lo = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues().minCoeff();
    throw NumericalError("pattern matrix is not positive definite (smallest eigenvalue " +
                         std::to_string(lo) + ")");
  }
  SignGaussianLaw law;
  const Eigen::Index p = a.rows();
  law.b = llt_a.solve(Eigen::MatrixXd::Identity(p, p));
  law.b = 0.5 * (law.b + law.b.transpose()).eval();
  const Eigen::VectorXd c = law.b.diagonal();
  const Eigen::VectorXd inv_sqrt = c.cwiseSqrt().cwiseInverse();
  law.sigma = inv_sqrt.asDiagonal() * law.b * inv_sqrt.asDiagonal();
  law.sigma.diagonal().setOnes();
  law.sigma_prime = law.sigma.unaryExpr([](double s) { return std::sin(std::numbers::pi / 2.0 * s); });
  law.theta_o = c.cwiseSqrt().asDiagonal() * a * c.cwiseSqrt().asDiagonal();
  return law;
}

Dataset sample_sign_gaussian(const PatternSpec& spec, int n, std::uint64_t seed) {
  if (!spec.pattern) throw UsageError("sign-Gaussian sampling needs a pattern model (3 or 4)");
  if (n < 2) throw UsageError("sample size must be at least 2");
  const SignGaussianLaw law = sign_gaussian_law(*spec.pattern);
  const Eigen::LLT<Eigen::MatrixXd> llt(law.sigma_prime);
  if (llt.info() != Eigen::Success) {
    const double lo =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(law.sigma_prime).eigenvalues().minCoeff();
    throw NumericalError("transformed correlation is not positive definite (smallest eigenvalue " +
                         std::to_string(lo) + ")");
  }
  const Eigen::MatrixXd lower = llt.matrixL();
  const Eigen::Index p = lower.rows();
  Rng rng(seed);
  CodeMatrix rows(n, p);
  Eigen::VectorXd z(p);
  for (int r = 0; r < n; ++r) {
    for (Eigen::Index i = 0; i < p; ++i) z(i) = rng.normal();
    const Eigen::VectorXd w = lower * z;
    for (Eigen::Index i = 0; i < p; ++i) rows(r, i) = w(i) >= 0.0 ? 1 : 0;  // sign(0) = +1
  }
  return spin_dataset(std::move(rows));
}

Dataset simulate(const PatternSpec& spec, int n, std::uint64_t seed,
                 std::optional<IsingMethod> method, const GibbsConfig& gibbs) {
  if (spec.ising) {
    const IsingMethod m = method.value_or(spec.p <= kExactIsingMaxNodes ? IsingMethod::exact
                                                                        : IsingMethod::gibbs);
    return sample_ising(*spec.ising, n, seed, m, gibbs);
  }
  return sample_sign_gaussian(spec, n, seed);
}

}  // namespace dasg
