#include "asns/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "asns/errors.hpp"

namespace asns {

const char* to_string(Role role) {
  switch (role) {
    case Role::Normal: return "normal";
    case Role::ByzantineActive: return "byzantine-active";
    case Role::ByzantineDormant: return "byzantine-dormant";
  }
  return "unknown";
}

namespace {

template <typename States>
auto& find_state(States& states, NodeId id) {
  auto it = std::lower_bound(
      states.begin(), states.end(), id,
      [](const AgentState& s, NodeId v) { return s.id < v; });
  if (it == states.end() || it->id != id)
    throw IdentifierError("no state for agent " + std::to_string(id));
  return *it;
}

}  // namespace

const AgentState& state_of(const AgentStates& states, NodeId id) {
  return find_state(states, id);
}

AgentState& state_of(AgentStates& states, NodeId id) {
  return find_state(states, id);
}

StepSizeCheck validate_step_size(const DirectedGraph& g, double epsilon) {
  double max_lii = 0.0;
  for (NodeId i : g.nodes()) max_lii = std::max(max_lii, g.in_weight(i));
  StepSizeCheck out;
  out.bound = max_lii > 0.0 ? 1.0 / max_lii : INFINITY;
  out.valid = epsilon > 0.0 && epsilon < out.bound;
  return out;
}

Vec consensus_update(const Vec& own, std::span<const WeightedValue> inputs,
                     double epsilon) {
  Vec acc(own.size(), 0.0);
  for (const auto& in : inputs) {
    const Vec& xj = *in.value;
    for (std::size_t l = 0; l < own.size(); ++l)
      acc[l] += in.weight * (xj[l] - own[l]);
  }
  Vec next(own.size());
  for (std::size_t l = 0; l < own.size(); ++l) next[l] = own[l] + epsilon * acc[l];
  return next;
}

AgentStates consensus_step(const AgentStates& states, const DirectedGraph& g,
                           double epsilon, const Received& received, Step k) {
  AgentStates next = states;
  std::vector<WeightedValue> inputs;
  for (auto& s : next) {
    inputs.clear();
    for (const auto& [j, w] : g.in_edges(s.id)) {
      auto it = received.find({s.id, j});
      if (it == received.end())
        throw ProtocolError("missing value for edge " + std::to_string(j) +
                            " -> " + std::to_string(s.id) + " at step " +
                            std::to_string(k));
      if (it->second.size() != s.x.size())
        throw ProtocolError("dimension mismatch on edge " + std::to_string(j) +
                            " -> " + std::to_string(s.id));
      inputs.push_back({w, &it->second});
    }
    s.x_prev = s.x;
    s.x = consensus_update(s.x_prev, inputs, epsilon);
  }
  return next;
}

double HullBounds::width() const {
  double w = 0.0;
  for (std::size_t l = 0; l < lo.size(); ++l) w = std::max(w, hi[l] - lo[l]);
  return w;
}

HullBounds hull_of(const AgentStates& states, const NodeSet& normal) {
  if (normal.empty()) throw PreconditionError("hull of an empty agent set");
  HullBounds h;
  bool first = true;
  for (NodeId id : normal) {
    const Vec& x = state_of(states, id).x;
    if (first) {
      h.lo = x;
      h.hi = x;
      first = false;
      continue;
    }
    for (std::size_t l = 0; l < x.size(); ++l) {
      h.lo[l] = std::min(h.lo[l], x[l]);
      h.hi[l] = std::max(h.hi[l], x[l]);
    }
  }
  return h;
}

}  // namespace asns
