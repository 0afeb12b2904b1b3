#pragma once

#include <map>
#include <utility>
#include <vector>

#include "asns/dynamics.hpp"
#include "asns/graph.hpp"
#include "asns/types.hpp"

namespace asns {

/// {x_j(k), {h, x_h(k-1)} for h in N_j^+(k-1)} as seen by one receiver.
struct TwoHopPacket {
  NodeId sender = 0;
  Step k = 0;
  Vec x_now;
  /// Sorted by h.
  std::vector<std::pair<NodeId, Vec>> relayed;
};

/// Packet of `agent` at step k. `x_now` is the receiver-specific claim
/// (the attacker's transmitted value, or the true state). Relayed entries
/// are the values the agent was delivered at k-1 over `prev_graph`.
TwoHopPacket build_packet(NodeId agent, Step k, Vec x_now,
                          const DirectedGraph& prev_graph,
                          const Received& prev_received);

inline constexpr double kDefaultDetectionTolerance = 1e-9;

struct DetectionResult {
  bool flagged = false;
  /// Infinity-norm of claim minus prediction; +inf for a malformed packet.
  double residual = 0.0;
};

/// Checks the sender's claim against the nominal update applied to its own
/// previous claim (`prev_claim`, as the observer received it at k-1) and
/// the relayed values, with the sender's weights in `prev_graph`. A packet
/// missing a relayed entry for some previous in-neighbor is flagged.
DetectionResult detect_neighbor(NodeId observer, const TwoHopPacket& pkt,
                                const Vec& prev_claim,
                                const DirectedGraph& prev_graph, double epsilon,
                                double tolerance = kDefaultDetectionTolerance);

/// B(0,k), A(0,k) and the per-observer flags broadcast at k.
struct DetectionState {
  Step k = 0;
  NodeSet byzantine;
  NodeSet normal;
  std::map<NodeId, NodeSet> flagged_by;
  /// A(0,k) != A(0,k-1).
  bool trigger = false;

  static DetectionState initial(const std::vector<NodeId>& nodes);
};

DetectionState merge_broadcasts(const DetectionState& prev,
                                const std::map<NodeId, NodeSet>& flagged_by,
                                Step k);

}  // namespace asns
