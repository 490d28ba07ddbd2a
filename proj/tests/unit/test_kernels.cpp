#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "dasg/estimator.hpp"
#include "dasg/kernels.hpp"
#include "dasg/simgen.hpp"

using namespace dasg;
using namespace dasg::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> z;
  std::vector<double> v(n);
  for (double& x : v) x = z(gen);
  return v;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar and AVX2 kernels agree") {
    const KernelTable* avx = avx2_table();
    if (avx == nullptr || !cpu_supports(Isa::avx2)) {
      MESSAGE("AVX2 variant unavailable; equivalence test skipped");
      return;
    }
    const KernelTable& ref = scalar_table();
    std::mt19937_64 gen(21);
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 67, 1000, 40001}) {
      CAPTURE(n);
      const std::vector<double> a = random_vector(n, gen);
      const std::vector<double> b = random_vector(n, gen);
      const double scale_ab = 1.0 + std::sqrt(static_cast<double>(n));

      CHECK(std::abs(ref.sum_squares(a.data(), n) - avx->sum_squares(a.data(), n)) <= 1e-13 * (1.0 + ref.sum_squares(a.data(), n)));
      CHECK(std::abs(ref.squared_distance(a.data(), b.data(), n) - avx->squared_distance(a.data(), b.data(), n)) <=
            1e-13 * (1.0 + ref.squared_distance(a.data(), b.data(), n)));
      CHECK(std::abs(ref.dot(a.data(), b.data(), n) - avx->dot(a.data(), b.data(), n)) <= 1e-13 * scale_ab * scale_ab);

      std::vector<double> x1 = a;
      std::vector<double> x2 = a;
      ref.scale(x1.data(), -0.37, n);
      avx->scale(x2.data(), -0.37, n);
      CHECK(x1 == x2);

      x1 = a;
      x2 = a;
      ref.hadamard(x1.data(), b.data(), n);
      avx->hadamard(x2.data(), b.data(), n);
      CHECK(x1 == x2);

      const std::vector<double> c = random_vector(n, gen);
      x1 = a;
      x2 = a;
      ref.dual_update(x1.data(), 0.7, b.data(), c.data(), n);
      avx->dual_update(x2.data(), 0.7, b.data(), c.data(), n);
      for (std::size_t k = 0; k < n; ++k) CHECK(x1[k] == doctest::Approx(x2[k]).epsilon(1e-14));
    }
  }

  TEST_CASE("pinning the ISA") {
    {
      const ScopedIsa pin(Isa::scalar);
      CHECK(active_isa() == Isa::scalar);
      CHECK(&active() == &scalar_table());
    }
    CHECK(isa_name(Isa::avx2) == "avx2");
    if (!cpu_supports(Isa::avx2)) CHECK_THROWS(set_isa(Isa::avx2));
  }

  TEST_CASE("fits agree across kernel variants") {
    if (!cpu_supports(Isa::avx2)) return;
    const PatternSpec spec = pattern(1, 12);
    const BlockMatrix sigma = sample_davo(simulate(spec, 200, 4));
    SolverConfig cfg;
    cfg.lambda = 0.05;
    FitResult a;
    FitResult b;
    {
      const ScopedIsa pin(Isa::scalar);
      a = fit_dtrace(sigma, cfg);
    }
    {
      const ScopedIsa pin(Isa::avx2);
      b = fit_dtrace(sigma, cfg);
    }
    CHECK(a.edges == b.edges);
    CHECK((a.theta.data() - b.theta.data()).cwiseAbs().maxCoeff() < 1e-8);
  }
}
