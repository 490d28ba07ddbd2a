#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "dasg/dataset.hpp"
#include "dasg/graph.hpp"
#include "dasg/ising.hpp"

namespace dasg {

// Simulation models: 1-2 are Ising laws, 3-4 sign-of-Gaussian DASG laws built
// from a pattern matrix.
struct PatternSpec {
  int model_id = 0;
  int p = 0;
  std::optional<IsingParams> ising;
  std::optional<Eigen::MatrixXd> pattern;
  Graph truth;
};

PatternSpec pattern(int model_id, int p);

enum class IsingMethod { exact, gibbs };

struct GibbsConfig {
  int burn_in = 1000;  // sweeps
  int thin = 10;       // sweeps between retained rows
};

inline constexpr int kExactIsingMaxNodes = 20;

// Spins coded 0 -> -1, 1 -> +1.
Dataset sample_ising(const IsingParams& params, int n, std::uint64_t seed, IsingMethod method,
                     const GibbsConfig& gibbs = {});

// Population quantities of the sign-Gaussian construction for pattern A.
struct SignGaussianLaw {
  Eigen::MatrixXd b;            // A^{-1}
  Eigen::MatrixXd sigma;        // C_B^{-1/2} B C_B^{-1/2}, the correlation of X
  Eigen::MatrixXd sigma_prime;  // sin(pi/2 * sigma), the latent correlation
  Eigen::MatrixXd theta_o;      // C_B^{1/2} A C_B^{1/2} = sigma^{-1}
};

SignGaussianLaw sign_gaussian_law(const Eigen::MatrixXd& a);

Dataset sample_sign_gaussian(const PatternSpec& spec, int n, std::uint64_t seed);

// Draws n rows from the model in `spec`. Ising models use the exact sampler
// up to kExactIsingMaxNodes nodes unless `method` says otherwise.
Dataset simulate(const PatternSpec& spec, int n, std::uint64_t seed,
                 std::optional<IsingMethod> method = std::nullopt, const GibbsConfig& gibbs = {});

std::string method_name(IsingMethod method);

}  // namespace dasg
