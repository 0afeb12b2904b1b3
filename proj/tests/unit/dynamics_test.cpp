#include <gtest/gtest.h>

#include <cmath>

#include "asns/dynamics.hpp"
#include "asns/errors.hpp"
#include "generators.hpp"

using namespace asns;

namespace {

DirectedGraph triangle() {
  DirectedGraph g(3, true);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(1, 3);
  return g;
}

AgentStates make_states(const std::vector<Vec>& xs) {
  AgentStates out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    out.push_back({static_cast<NodeId>(i + 1), xs[i], xs[i], Role::Normal});
  return out;
}

Received truthful(const AgentStates& s, const DirectedGraph& g) {
  Received r;
  for (const auto& e : g.edges()) r[{e.to, e.from}] = state_of(s, e.from).x;
  return r;
}

}  // namespace

TEST(StepSize, TriangleBounds) {
  EXPECT_TRUE(validate_step_size(triangle(), 0.25));
  const auto at_bound = validate_step_size(triangle(), 0.5);
  EXPECT_FALSE(at_bound);
  EXPECT_DOUBLE_EQ(at_bound.bound, 0.5);
  EXPECT_FALSE(validate_step_size(triangle(), 0.0));
}

TEST(StepSize, EdgelessIsVacuous) {
  const auto c = validate_step_size(DirectedGraph(3), 7.0);
  EXPECT_TRUE(c);
  EXPECT_TRUE(std::isinf(c.bound));
}

TEST(ConsensusStep, SymmetricPair) {
  DirectedGraph g(2, true);
  g.add_edge(1, 2);
  const auto s = make_states({{0.0}, {1.0}});
  const auto next = consensus_step(s, g, 0.25, truthful(s, g));
  EXPECT_DOUBLE_EQ(next[0].x[0], 0.25);
  EXPECT_DOUBLE_EQ(next[1].x[0], 0.75);
  EXPECT_EQ(next[0].x_prev, Vec{0.0});
}

TEST(ConsensusStep, FixedPoint) {
  const auto g = triangle();
  const auto s = make_states({{2.0, -1.0}, {2.0, -1.0}, {2.0, -1.0}});
  const auto next = consensus_step(s, g, 0.3, truthful(s, g));
  for (const auto& a : next) EXPECT_EQ(a.x, (Vec{2.0, -1.0}));
}

TEST(ConsensusStep, UsesReceivedValues) {
  DirectedGraph g(3);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  const auto s = make_states({{7.0}, {9.0}, {0.0}});
  Received r{{{3, 1}, {2.0}}, {{3, 2}, {4.0}}};
  const auto next = consensus_step(s, g, 0.1, r);
  EXPECT_NEAR(state_of(next, 3).x[0], 0.6, 1e-15);
}

TEST(ConsensusStep, MissingValueNamesTheEdge) {
  const auto g = triangle();
  const auto s = make_states({{0.0}, {1.0}, {2.0}});
  auto r = truthful(s, g);
  r.erase({2, 3});
  try {
    consensus_step(s, g, 0.1, r, 17);
    FAIL();
  } catch (const ProtocolError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("3 -> 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("17"), std::string::npos) << msg;
  }
}

TEST(Hull, ComponentBounds) {
  const auto s = make_states({{0.0, 5.0}, {2.0, 1.0}});
  const auto h = hull_of(s, {1, 2});
  EXPECT_EQ(h.lo, (Vec{0.0, 1.0}));
  EXPECT_EQ(h.hi, (Vec{2.0, 5.0}));
  EXPECT_DOUBLE_EQ(h.width(), 4.0);
}

TEST(Hull, SingleAgent) {
  const auto s = make_states({{3.0, 4.0}, {9.0, 9.0}});
  const auto h = hull_of(s, {1});
  EXPECT_EQ(h.lo, h.hi);
  EXPECT_EQ(h.lo, (Vec{3.0, 4.0}));
}

TEST(Hull, EmptySetIsAnError) {
  EXPECT_THROW(hull_of(make_states({{1.0}}), {}), PreconditionError);
}

TEST(Hull, TruthfulStepsNeverExpandTheHull) {
  gen::Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = static_cast<int>(gen::integer(rng, 1, 10));
    const int dim = static_cast<int>(gen::integer(rng, 1, 3));
    auto g = gen::random_graph(rng, n, gen::uniform(rng, 0.1, 0.9), gen::coin(rng, 0.5));
    for (const auto& e : g.edges()) g.add_edge(e.from, e.to, gen::uniform(rng, 0.2, 2.0));
    const double eps = gen::safe_epsilon(g, 1.0) * gen::uniform(rng, 0.1, 1.2);
    AgentStates s;
    NodeSet all;
    for (NodeId i = 1; i <= n; ++i) {
      auto x = gen::random_vec(rng, dim);
      s.push_back({i, x, x, Role::Normal});
      all.insert(i);
    }
    for (int step = 0; step < 20; ++step) {
      const auto before = hull_of(s, all);
      s = consensus_step(s, g, eps, truthful(s, g));
      const auto after = hull_of(s, all);
      for (int l = 0; l < dim; ++l) {
        ASSERT_GE(after.lo[l], before.lo[l] - 1e-12);
        ASSERT_LE(after.hi[l], before.hi[l] + 1e-12);
      }
    }
  }
}

TEST(ConsensusStep, BalancedNetworksConserveTheSum) {
  gen::Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(gen::integer(rng, 2, 10));
    const auto g = gen::random_connected(rng, n, 0.3, true);
    const double eps = gen::safe_epsilon(g);
    AgentStates s;
    double sum = 0.0;
    for (NodeId i = 1; i <= n; ++i) {
      const double x = gen::uniform(rng, -5.0, 5.0);
      s.push_back({i, {x}, {x}, Role::Normal});
      sum += x;
    }
    for (int step = 0; step < 50; ++step) s = consensus_step(s, g, eps, truthful(s, g));
    double after = 0.0;
    for (const auto& a : s) after += a.x[0];
    ASSERT_NEAR(after, sum, 1e-9);
  }
}
