#include <cmath>
#include <random>

#include <doctest.h>
#include <Eigen/QR>

#include "dasg/augment.hpp"
#include "dasg/error.hpp"
#include "dasg/irrep.hpp"
#include "dasg/lcm.hpp"
#include "dasg/operators.hpp"
#include "fixtures.hpp"

using namespace dasg;

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

JointPMF random_pmf(const NodeScheme& s, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> t(support_size(s));
  double total = 0.0;
  for (double& v : t) total += (v = u(gen));
  for (double& v : t) v /= total;
  return JointPMF(s, t);
}

JointPMF product_pmf(const std::vector<Eigen::VectorXd>& marginals) {
  std::vector<int> levels;
  for (const auto& m : marginals) levels.push_back(static_cast<int>(m.size()) - 1);
  const NodeScheme s(levels);
  std::vector<double> t(support_size(s), 1.0);
  for (std::size_t k = 0; k < t.size(); ++k) {
    std::size_t rest = k;
    for (std::size_t i = 0; i < marginals.size(); ++i) {
      const std::size_t radix = marginals[i].size();
      t[k] *= marginals[i](static_cast<Eigen::Index>(rest % radix));
      rest /= radix;
    }
  }
  return JointPMF(s, t);
}

// Dense Kronecker construction of (Sigma (x) I + I (x) Sigma) / 2.
Eigen::MatrixXd kron_gamma(const Eigen::MatrixXd& sigma) {
  const Eigen::Index m = sigma.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  auto kron = [m](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd k(m * m, m * m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) k.block(i * m, j * m, m, m) = a(i, j) * b;
    return k;
  };
  return 0.5 * (kron(sigma, id) + kron(id, sigma));
}

}  // namespace

TEST_SUITE("population") {
  TEST_CASE("ising pmf") {
    const JointPMF uniform = ising_pmf(IsingParams(Eigen::MatrixXd::Zero(3, 3)));
    for (double v : uniform.table()) CHECK(v == doctest::Approx(0.125).epsilon(1e-14));

    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2, 2);
    b(0, 1) = b(1, 0) = 0.3;
    const JointPMF pmf = ising_pmf(IsingParams(b));
    const double z = 2 * std::exp(0.3) + 2 * std::exp(-0.3);
    CHECK(pmf(std::vector<int>{0, 0}) == doctest::Approx(std::exp(0.3) / z));
    CHECK(pmf(std::vector<int>{1, 0}) == doctest::Approx(std::exp(-0.3) / z));

    Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
    bad(0, 1) = std::nan("");
    CHECK_THROWS(IsingParams(bad));
    CHECK_THROWS_AS(ising_pmf(IsingParams(Eigen::MatrixXd::Zero(30, 30))), UsageError);
  }

  TEST_CASE("pmf validation") {
    CHECK_THROWS_AS(JointPMF(NodeScheme::binary(1), {0.5, 0.6}), DataError);
    CHECK_THROWS_AS(JointPMF(NodeScheme::binary(1), {1.5, -0.5}), DataError);
    try {
      JointPMF(NodeScheme::binary(2), {0.5, 0.5, 0.0, 0.0});
      FAIL("expected a degenerate node");
    } catch (const DegenerateNodeError& e) {
      CHECK(e.node() == 1);
    }
  }

  TEST_CASE("pairwise marginals") {
    const Eigen::MatrixXd m = pairwise_marginal(fixtures::binary3_pmf(), 0, 1);
    Eigen::MatrixXd expected(2, 2);
    expected << 1.0 / 6, 1.0 / 6, 1.0 / 6, 0.5;
    CHECK(max_abs(m - expected) < 1e-15);

    Eigen::VectorXd a(3);
    a << 0.2, 0.5, 0.3;
    Eigen::VectorXd b(2);
    b << 0.4, 0.6;
    const JointPMF prod = product_pmf({a, b, b});
    CHECK(max_abs(pairwise_marginal(prod, 0, 2) - a * b.transpose()) < 1e-15);
    CHECK_THROWS_AS(pairwise_marginal(prod, 1, 1), UsageError);
  }

  TEST_CASE("vertex representation of the binary example") {
    const JointPMF pmf = fixtures::binary3_pmf();
    CHECK(max_abs(vertex_davo(pmf).data() - fixtures::binary3_sigma_v()) < 1e-14);
    CHECK(max_abs(vertex_dapo(pmf).data() - fixtures::binary3_theta_v()) < 1e-12);
  }

  TEST_CASE("vertex representation of the ternary example") {
    const JointPMF pmf = fixtures::ternary3_pmf();
    const BlockMatrix sigma = vertex_davo(pmf);
    CHECK(max_abs(sigma.block(0, 1) - fixtures::ternary3_sigma12()) <= 0.05e-3);
    CHECK(max_abs(vertex_dapo(pmf).data() - fixtures::ternary3_theta_v()) <= 0.1);
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sigma.data()).eigenvalues();
    CHECK(ev.minCoeff() > 0.0);
  }

  TEST_CASE("independent nodes give a block-diagonal DAVO") {
    Eigen::VectorXd a(3);
    a << 0.2, 0.5, 0.3;
    Eigen::VectorXd b(2);
    b << 0.4, 0.6;
    const BlockMatrix sigma = vertex_davo(product_pmf({a, b, a}));
    const Eigen::MatrixXd n = block_frobenius_norms(sigma);
    CHECK(n(0, 1) <= 1e-12);
    CHECK(n(0, 2) <= 1e-12);
    CHECK(n(1, 2) <= 1e-12);
    CHECK(max_abs(orthonormal_davo(product_pmf({a, b, a})).data() - Eigen::MatrixXd::Identity(5, 5)) < 1e-12);
  }

  TEST_CASE("degenerate indicator is reported with its node") {
    // Node 2 never takes level 2.
    const NodeScheme s({1, 2});
    std::vector<double> t(6, 0.0);
    t[0] = 0.25;
    t[1] = 0.25;
    t[2] = 0.25;
    t[3] = 0.25;
    const JointPMF pmf(s, t);
    try {
      vertex_davo(pmf);
      FAIL("expected a degenerate node");
    } catch (const DegenerateNodeError& e) {
      CHECK(e.node() == 1);
    }
    CHECK(orthonormal_basis(pmf, 1).rows() == 1);
  }

  TEST_CASE("binary vertex DAPO is the inverse covariance") {
    std::mt19937_64 gen(2);
    const JointPMF pmf = random_pmf(NodeScheme::binary(4), gen);
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(4, 4);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(4);
    pmf.for_each_support_point([&](std::span<const int> x, double prob) {
      Eigen::VectorXd v(4);
      for (int i = 0; i < 4; ++i) v(i) = x[static_cast<std::size_t>(i)];
      mean += prob * v;
      cov += prob * v * v.transpose();
    });
    cov -= mean * mean.transpose();
    CHECK(max_abs(vertex_dapo(pmf).data() - cov.inverse()) < 1e-10);
    const Eigen::VectorXd sd = cov.diagonal().cwiseSqrt();
    const Eigen::MatrixXd corr = sd.cwiseInverse().asDiagonal() * cov * sd.cwiseInverse().asDiagonal();
    CHECK(max_abs(orthonormal_dapo(pmf).data() - corr.inverse()) < 1e-10);
  }

  TEST_CASE("orthonormal bases") {
    Eigen::VectorXd fair(2);
    fair << 0.5, 0.5;
    const Eigen::MatrixXd u = orthonormal_basis(product_pmf({fair, fair}), 0);
    CHECK(std::abs(std::abs(u(0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(u(0, 0) + u(0, 1)) < 1e-12);

    const Eigen::MatrixXd u1 = orthonormal_basis(fixtures::binary3_pmf(), 0);
    const double sign = u1(0, 1) > 0 ? 1.0 : -1.0;
    CHECK(sign * u1(0, 0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
    CHECK(sign * u1(0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

    std::mt19937_64 gen(8);
    const JointPMF pmf = random_pmf(NodeScheme({3, 1, 2}), gen);
    for (int i = 0; i < 3; ++i) {
      const Eigen::MatrixXd b = orthonormal_basis(pmf, i);
      const Eigen::VectorXd w = pmf.marginal(i);
      CHECK(max_abs(b * w) < 1e-12);
      CHECK(max_abs(b * w.asDiagonal() * b.transpose() - Eigen::MatrixXd::Identity(b.rows(), b.rows())) < 1e-12);
    }
  }

  TEST_CASE("orthonormal representation of the binary example") {
    const JointPMF pmf = fixtures::binary3_pmf();
    CHECK(max_abs(orthonormal_davo(pmf).data() - fixtures::binary3_sigma_o()) < 1e-14);
    CHECK(max_abs(orthonormal_dapo(pmf).data() - fixtures::binary3_theta_o()) < 1e-12);
  }

  TEST_CASE("HS norms of the 4-node Ising model") {
    const Eigen::MatrixXd hs = hs_norms(ising_pmf(fixtures::four_node_ising()));
    CHECK(hs(0, 0) == doctest::Approx(11.0 / 8).epsilon(1e-12));
    CHECK(hs(1, 1) == doctest::Approx(1287.0 / 800).epsilon(1e-12));
    CHECK(hs(1, 3) == doctest::Approx(363.0 / 800).epsilon(1e-12));
    CHECK(hs(0, 2) < 1e-8);
    // The chain-edge blocks evaluate to 33/80.
    for (auto [i, j] : {std::pair{0, 1}, {0, 3}, {1, 2}, {2, 3}}) CHECK(hs(i, j) == doctest::Approx(33.0 / 80).epsilon(1e-12));
  }

  TEST_CASE("HS norms of the 5-node model and its augmentation") {
    const JointPMF pmf = ising_pmf(fixtures::five_node_ising());
    CHECK(max_abs(hs_norms(pmf) - fixtures::five_node_hs()) < 1e-8);
    const AugmentedPmf aug = augment(pmf, {2, 3, 4});
    CHECK(max_abs(hs_norms(aug.pmf) - fixtures::augmented_hs()) < 1e-8);
    CHECK(hs_norms(aug.pmf)(0, 1) < 1e-10);
  }

  TEST_CASE("HS norms do not depend on the basis") {
    std::mt19937_64 gen(14);
    const JointPMF pmf = random_pmf(NodeScheme({2, 3, 1}), gen);
    const Eigen::MatrixXd ref = hs_norms(pmf);
    std::normal_distribution<double> z;
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Eigen::MatrixXd> bases;
      for (int i = 0; i < 3; ++i) {
        const Eigen::MatrixXd u = orthonormal_basis(pmf, i);
        Eigen::MatrixXd g(u.rows(), u.rows());
        for (Eigen::Index r = 0; r < g.size(); ++r) g(r) = z(gen);
        const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
        bases.push_back(q * u);
      }
      const BlockMatrix theta = invert_spd(orthonormal_davo(pmf, bases));
      CHECK(max_abs(block_frobenius_norms(theta) - ref) < 1e-10);
    }
  }

  TEST_CASE("vertex and orthonormal DAPOs share their zero blocks") {
    std::mt19937_64 gen(4);
    std::vector<JointPMF> pmfs{fixtures::binary3_pmf(), fixtures::ternary3_pmf(),
                               ising_pmf(fixtures::four_node_ising()), ising_pmf(fixtures::five_node_ising()),
                               random_pmf(NodeScheme({2, 1, 3}), gen)};
    for (const JointPMF& pmf : pmfs) {
      CHECK(edges_from_blocks(vertex_dapo(pmf), 1e-8) == edges_from_blocks(orthonormal_dapo(pmf), 1e-8));
      const BlockMatrix s = vertex_davo(pmf);
      CHECK(max_abs(s.data() * vertex_dapo(pmf).data() - Eigen::MatrixXd::Identity(s.dim(), s.dim())) < 1e-10);
    }
  }

  TEST_CASE("augmentation") {
    const JointPMF pmf = ising_pmf(fixtures::five_node_ising());
    const AugmentedPmf one = augment(pmf, {2, 3, 4});
    REQUIRE(one.scheme.extra.size() == 1);
    CHECK(one.scheme.extra[0] == std::vector<int>{2, 3, 4});

    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(6, 6);
    b(0, 2) = b(2, 0) = b(3, 4) = b(4, 3) = b(2, 5) = b(5, 2) = 0.2;
    const JointPMF six = ising_pmf(IsingParams(b));
    const AugmentedPmf four = augment(six, {2, 3, 4, 5});
    CHECK(four.scheme.extra ==
          std::vector<std::vector<int>>{{2, 3, 4}, {2, 3, 5}, {2, 4, 5}, {3, 4, 5}});
    CHECK(odd_interaction_sets({0, 1, 2, 3, 4}).back() == std::vector<int>{0, 1, 2, 3, 4});

    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j)
        CHECK(max_abs(pairwise_marginal(four.pmf, i, j) - pairwise_marginal(six, i, j)) < 1e-15);

    CHECK_THROWS_AS(augment(pmf, {2, 3}), UsageError);
    CHECK_THROWS_AS(augment(fixtures::ternary3_pmf(), {0, 1, 2}), UsageError);
  }

  TEST_CASE("linear conditional mean") {
    const JointPMF pmf = ising_pmf(fixtures::five_node_ising());
    CHECK(check_lcm(pmf, 0, {}, 1e-10).holds);
    const LcmResult no = check_lcm(pmf, 0, {2, 3, 4}, 1e-10);
    CHECK_FALSE(no.holds);
    CHECK(no.residual > 1e-3);

    const AugmentedPmf aug = augment(pmf, {2, 3, 4});
    const LcmResult yes = check_lcm(aug.pmf, 0, {2, 3, 4, 5}, 1e-10);
    CHECK(yes.holds);
    REQUIRE(yes.coefficients.cols() == 4);
    const double expected[] = {5.0 / 18, 5.0 / 18, 5.0 / 18, -1.0 / 18};
    for (int k = 0; k < 4; ++k) CHECK(yes.coefficients(0, k) == doctest::Approx(expected[k]).epsilon(1e-10));
    CHECK_THROWS_AS(check_lcm(pmf, 0, {0, 2}, 1e-10), UsageError);
  }

  TEST_CASE("irrepresentable diagnostics") {
    Eigen::VectorXd q(2);
    q << 0.3, 0.7;
    const IrrepReport indep = irrep_diagnostics(product_pmf({q, q, q}));
    CHECK(indep.gamma == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(indep.d == 0);
    CHECK(indep.holds);

    const IrrepReport ex1 = irrep_diagnostics(fixtures::binary3_pmf());
    CHECK(ex1.d == 1);
    CHECK(ex1.kappa_sigma == doctest::Approx(5.0 / 18).epsilon(1e-14));

    const Eigen::MatrixXd sigma = vertex_davo(ising_pmf(fixtures::four_node_ising())).data();
    CHECK(max_abs(gamma_matrix(sigma) - kron_gamma(sigma)) == 0.0);

    // Binary case: the score is the largest absolute row sum of Upsilon.
    const Graph support = edges_from_blocks(invert_spd(BlockMatrix(NodeScheme::binary(4), sigma)), 1e-8);
    std::vector<Eigen::Index> s_idx;
    std::vector<Eigen::Index> c_idx;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) (i == j || support.has_edge(i, j) ? s_idx : c_idx).push_back(i * 4 + j);
    const Eigen::MatrixXd g = kron_gamma(sigma);
    const Eigen::MatrixXd ups = g(c_idx, s_idx) * g(s_idx, s_idx).inverse();
    const IrrepReport four = irrep_diagnostics(ising_pmf(fixtures::four_node_ising()));
    CHECK(four.gamma == doctest::Approx(1.0 - ups.cwiseAbs().rowwise().sum().maxCoeff()).epsilon(1e-10));
    CHECK(four.d == 3);
    CHECK_THROWS_AS(irrep_diagnostics(ising_pmf(IsingParams(Eigen::MatrixXd::Zero(9, 9))), IrrepOptions{8}),
                    UsageError);
  }
}
