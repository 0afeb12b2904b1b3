#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "asns/graph.hpp"
#include "asns/types.hpp"

namespace asns {

enum class Role { Normal, ByzantineActive, ByzantineDormant };

const char* to_string(Role role);

struct AgentState {
  NodeId id = 0;
  Vec x;
  /// x at the previous step; relayed inside two-hop packets.
  Vec x_prev;
  Role role = Role::Normal;

  bool operator==(const AgentState&) const = default;
};

/// One entry per agent, sorted by id.
using AgentStates = std::vector<AgentState>;

const AgentState& state_of(const AgentStates& states, NodeId id);
AgentState& state_of(AgentStates& states, NodeId id);

/// Values delivered over the live edges at one step, keyed by
/// (receiver, sender).
using Received = std::map<std::pair<NodeId, NodeId>, Vec>;

struct StepSizeCheck {
  bool valid = false;
  /// 1 / max_i l_ii; +inf for an edgeless graph.
  double bound = 0.0;

  explicit operator bool() const { return valid; }
};

/// 0 < epsilon < 1 / max_i l_ii (open interval).
StepSizeCheck validate_step_size(const DirectedGraph& g, double epsilon);

struct WeightedValue {
  double weight;
  const Vec* value;
};

/// own + epsilon * sum_j a_ij (x_j - own), accumulated in input order. The
/// two-hop detector predicts with this exact routine so truthful senders
/// reproduce bit-identically.
Vec consensus_update(const Vec& own, std::span<const WeightedValue> inputs,
                     double epsilon);

/// One round of x_i(k+1) = x_i(k) + eps * sum_j a_ij (x_j(k) - x_i(k)) over
/// every agent, using the values in `received` for each in-edge of `g`.
/// Throws ProtocolError if an edge has no delivered value.
AgentStates consensus_step(const AgentStates& states, const DirectedGraph& g,
                           double epsilon, const Received& received,
                           Step k = -1);

/// Per-coordinate interval hull of the given agents.
struct HullBounds {
  Vec lo;
  Vec hi;

  /// Largest per-coordinate extent.
  double width() const;
};

HullBounds hull_of(const AgentStates& states, const NodeSet& normal);

}  // namespace asns
