#pragma once

#include <vector>

#include "asns/dynamics.hpp"
#include "asns/graph.hpp"

namespace asns {

struct MsrConfig {
  int F = 0;
  double epsilon = 0.0;
};

struct ScalarInput {
  NodeId sender;
  double value;
};

/// Senders whose value survives trimming for one coordinate: up to F values
/// strictly above `own` are dropped starting from the largest, and up to F
/// strictly below starting from the smallest. Among equal values the higher
/// sender id is dropped first. Result keeps input order.
std::vector<ScalarInput> msr_survivors(double own,
                                       const std::vector<ScalarInput>& inputs,
                                       int F);

/// W-MSR round applied per coordinate. Survivors share the agent's total
/// step weight eps * l_ii uniformly, so the update stays a convex
/// combination; with F = 0 this is exactly consensus_step.
AgentStates wmsr_step(const AgentStates& states, const DirectedGraph& g,
                      const Received& received, const MsrConfig& cfg,
                      Step k = -1);

}  // namespace asns
