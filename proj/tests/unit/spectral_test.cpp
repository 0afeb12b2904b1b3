#include <gtest/gtest.h>

#include <cmath>

#include "asns/errors.hpp"
#include "asns/spectral.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace asns;

TEST(PerturbedLaplacian, SingleNode) {
  const auto m = perturbed_laplacian(DirectedGraph(1, true), 1);
  EXPECT_EQ(m.matrix, Eigen::MatrixXd::Ones(1, 1));
}

TEST(PerturbedLaplacian, TwoPathLeaderOne) {
  DirectedGraph g(2, true);
  g.add_edge(1, 2);
  Eigen::Matrix2d expect;
  expect << 2, -1, -1, 1;
  EXPECT_EQ(perturbed_laplacian(g, 1).matrix, Eigen::MatrixXd(expect));
}

TEST(PerturbedLaplacian, TriangleLeaderOne) {
  DirectedGraph g(3, true);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(1, 3);
  Eigen::Matrix3d expect;
  expect << 3, -1, -1, -1, 2, -1, -1, -1, 2;
  EXPECT_EQ(perturbed_laplacian(g, 1).matrix, Eigen::MatrixXd(expect));
}

TEST(PerturbedLaplacian, UnknownLeader) {
  EXPECT_THROW(perturbed_laplacian(DirectedGraph(3, true), 7), IdentifierError);
}

TEST(SmallestEigenpair, OneByOne) {
  const auto e = smallest_eigenpair(perturbed_laplacian(DirectedGraph(1, true), 1));
  EXPECT_NEAR(e.lambda1, 1.0, 1e-12);
  EXPECT_NEAR(e.v1(0), 1.0, 1e-12);
}

TEST(SmallestEigenpair, TwoByTwoAnalytic) {
  DirectedGraph g(2, true);
  g.add_edge(1, 2);
  const auto e = smallest_eigenpair(perturbed_laplacian(g, 1));
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double norm = std::sqrt(1.0 + phi * phi);
  EXPECT_NEAR(e.lambda1, (3.0 - std::sqrt(5.0)) / 2.0, 1e-12);
  EXPECT_NEAR(e.entry(1), 1.0 / norm, 1e-10);
  EXPECT_NEAR(e.entry(2), phi / norm, 1e-10);
  EXPECT_NEAR(e.entry(1), 0.52573, 1e-5);
  EXPECT_NEAR(e.entry(2), 0.85065, 1e-5);
}

TEST(SmallestEigenpair, DisconnectedIsStructureError) {
  DirectedGraph g(4, true);
  g.add_edge(1, 2);
  g.add_edge(3, 4);
  EXPECT_THROW(smallest_eigenpair(perturbed_laplacian(g, 1)), StructureError);
}

TEST(SmallestEigenpair, IterationCapCarriesResidual) {
  DirectedGraph g(8, true);
  for (NodeId i = 1; i < 8; ++i) g.add_edge(i, i + 1);
  try {
    smallest_eigenpair(perturbed_laplacian(g, 4), EigenSolverOptions{1, 1e-14});
    FAIL();
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.residual(), 1e-14);
  }
}

TEST(SmallestEigenpair, Deterministic) {
  gen::Rng rng(3);
  const auto g = gen::random_connected(rng, 9, 0.3, true);
  const auto a = smallest_eigenpair(perturbed_laplacian(g, 4));
  const auto b = smallest_eigenpair(perturbed_laplacian(g, 4));
  EXPECT_EQ(a.lambda1, b.lambda1);
  EXPECT_EQ(a.v1, b.v1);
}

TEST(SmallestEigenpair, AgreesWithJacobiOracle) {
  gen::Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = static_cast<int>(gen::integer(rng, 1, 10));
    const auto g = gen::random_connected(rng, n, gen::uniform(rng, 0.0, 0.6), gen::coin(rng, 0.3));
    const NodeId leader = static_cast<NodeId>(gen::integer(rng, 1, n));
    const auto e = smallest_eigenpair(perturbed_laplacian(g, leader));
    const auto [vals, vecs] = oracle::jacobi_eigen(oracle::dense_perturbed_laplacian(g, leader));

    ASSERT_GT(e.lambda1, 0.0);
    ASSERT_LE(e.residual, 1e-8);
    ASSERT_NEAR(e.lambda1, vals(0), 1e-7);
    if (n > 1) ASSERT_GT(vals(1) - vals(0), 1e-10);
    Eigen::VectorXd ref = vecs.col(0);
    if (ref.sum() < 0) ref = -ref;
    ref /= ref.norm();
    for (int i = 0; i < n; ++i) {
      ASSERT_GT(e.v1(i), 1e-12);
      ASSERT_NEAR(e.v1(i), ref(i), 1e-6);
    }
    ASSERT_NEAR(e.v1.norm(), 1.0, 1e-12);
  }
}

TEST(SmallestEigenpair, LeaderHoldsTheSmallestEntry) {
  // At a non-leader minimizer, (l_ii - lambda) v_i = sum of neighbors >= l_ii v_i,
  // impossible for lambda > 0.
  gen::Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(gen::integer(rng, 2, 10));
    const auto g = gen::random_connected(rng, n, gen::uniform(rng, 0.0, 0.7), true);
    const NodeId leader = static_cast<NodeId>(gen::integer(rng, 1, n));
    const auto e = smallest_eigenpair(perturbed_laplacian(g, leader));
    for (NodeId i = 1; i <= n; ++i)
      if (i != leader) ASSERT_GT(e.entry(i), e.entry(leader));
  }
}
