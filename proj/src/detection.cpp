#include "asns/detection.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace asns {

TwoHopPacket build_packet(NodeId agent, Step k, Vec x_now,
                          const DirectedGraph& prev_graph,
                          const Received& prev_received) {
  TwoHopPacket pkt;
  pkt.sender = agent;
  pkt.k = k;
  pkt.x_now = std::move(x_now);
  for (const auto& [h, w] : prev_graph.in_edges(agent)) {
    auto it = prev_received.find({agent, h});
    if (it != prev_received.end()) pkt.relayed.emplace_back(h, it->second);
  }
  return pkt;
}

DetectionResult detect_neighbor(NodeId /*observer*/, const TwoHopPacket& pkt,
                                const Vec& prev_claim,
                                const DirectedGraph& prev_graph, double epsilon,
                                double tolerance) {
  std::vector<WeightedValue> inputs;
  auto rel = pkt.relayed.begin();
  for (const auto& [h, w] : prev_graph.in_edges(pkt.sender)) {
    rel = std::find_if(rel, pkt.relayed.end(),
                       [h = h](const auto& e) { return e.first >= h; });
    if (rel == pkt.relayed.end() || rel->first != h || rel->second.size() != prev_claim.size())
      return {true, INFINITY};
    inputs.push_back({w, &rel->second});
  }
  if (pkt.x_now.size() != prev_claim.size()) return {true, INFINITY};

  const Vec predicted = consensus_update(prev_claim, inputs, epsilon);
  double residual = 0.0;
  for (std::size_t l = 0; l < predicted.size(); ++l) {
    const double d = std::abs(pkt.x_now[l] - predicted[l]);
    residual = std::isnan(d) ? INFINITY : std::max(residual, d);
  }
  return {residual > tolerance, residual};
}

DetectionState DetectionState::initial(const std::vector<NodeId>& nodes) {
  DetectionState s;
  s.normal.insert(nodes.begin(), nodes.end());
  return s;
}

DetectionState merge_broadcasts(const DetectionState& prev,
                                const std::map<NodeId, NodeSet>& flagged_by,
                                Step k) {
  DetectionState next;
  next.k = k;
  next.byzantine = prev.byzantine;
  next.flagged_by = flagged_by;
  for (const auto& [observer, flagged] : flagged_by)
    next.byzantine.insert(flagged.begin(), flagged.end());
  std::set_difference(prev.normal.begin(), prev.normal.end(),
                      next.byzantine.begin(), next.byzantine.end(),
                      std::inserter(next.normal, next.normal.end()));
  next.trigger = next.normal != prev.normal;
  return next;
}

}  // namespace asns
