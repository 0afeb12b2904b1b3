#include "asns/msr.hpp"

#include <algorithm>
#include <string>

#include "asns/errors.hpp"

namespace asns {

std::vector<ScalarInput> msr_survivors(double own,
                                       const std::vector<ScalarInput>& inputs,
                                       int F) {
  if (F < 0) throw PreconditionError("F must be nonnegative");
  std::vector<ScalarInput> above, below;
  for (const auto& in : inputs) {
    if (in.value > own) above.push_back(in);
    if (in.value < own) below.push_back(in);
  }
  std::sort(above.begin(), above.end(), [](const ScalarInput& a, const ScalarInput& b) {
    return a.value != b.value ? a.value > b.value : a.sender > b.sender;
  });
  std::sort(below.begin(), below.end(), [](const ScalarInput& a, const ScalarInput& b) {
    return a.value != b.value ? a.value < b.value : a.sender > b.sender;
  });
  std::vector<NodeId> dropped;
  for (std::size_t i = 0; i < std::min<std::size_t>(F, above.size()); ++i)
    dropped.push_back(above[i].sender);
  for (std::size_t i = 0; i < std::min<std::size_t>(F, below.size()); ++i)
    dropped.push_back(below[i].sender);

  std::vector<ScalarInput> out;
  for (const auto& in : inputs)
    if (std::find(dropped.begin(), dropped.end(), in.sender) == dropped.end())
      out.push_back(in);
  return out;
}

AgentStates wmsr_step(const AgentStates& states, const DirectedGraph& g,
                      const Received& received, const MsrConfig& cfg, Step k) {
  AgentStates next = states;
  std::vector<const Vec*> values;
  std::vector<NodeId> senders;
  std::vector<WeightedValue> weighted;
  std::vector<ScalarInput> column;
  for (auto& s : next) {
    values.clear();
    senders.clear();
    weighted.clear();
    for (const auto& [j, w] : g.in_edges(s.id)) {
      auto it = received.find({s.id, j});
      if (it == received.end())
        throw ProtocolError("missing value for edge " + std::to_string(j) +
                            " -> " + std::to_string(s.id) + " at step " +
                            std::to_string(k));
      if (it->second.size() != s.x.size())
        throw ProtocolError("dimension mismatch on edge " + std::to_string(j) +
                            " -> " + std::to_string(s.id));
      values.push_back(&it->second);
      senders.push_back(j);
      weighted.push_back({w, &it->second});
    }
    s.x_prev = s.x;
    if (cfg.F == 0) {
      s.x = consensus_update(s.x_prev, weighted, cfg.epsilon);
      continue;
    }
    const double total = cfg.epsilon * g.in_weight(s.id);
    for (std::size_t l = 0; l < s.x.size(); ++l) {
      column.clear();
      for (std::size_t m = 0; m < values.size(); ++m)
        column.push_back({senders[m], (*values[m])[l]});
      const auto kept = msr_survivors(s.x_prev[l], column, cfg.F);
      if (kept.empty()) continue;
      double acc = 0.0;
      for (const auto& in : kept) acc += in.value - s.x_prev[l];
      s.x[l] = s.x_prev[l] + total / static_cast<double>(kept.size()) * acc;
    }
  }
  return next;
}

}  // namespace asns
