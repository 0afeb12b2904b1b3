#pragma once

#include <climits>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "asns/graph.hpp"
#include "asns/types.hpp"

namespace asns {

/// Time modulation of a scalar coefficient; the argument is the integer
/// step index in radians.
enum class Modulation { None, Sin, Cos };

struct Coefficient {
  double scale = 0.0;
  Modulation mod = Modulation::None;

  double at(Step k) const;
  bool operator==(const Coefficient&) const = default;
};

/// f(k) = value.
struct ConstantBias {
  Vec value;
  bool operator==(const ConstantBias&) const = default;
};

/// f(k) = x_attacker(k - delay), delay >= 1.
struct Replay {
  int delay = 1;
  bool operator==(const Replay&) const = default;
};

/// f(k) = diag(gains(k)) x_attacker(k - delay) + offset(k). A single gain or
/// offset entry is broadcast to every coordinate.
struct Affine {
  int delay = 0;
  std::vector<Coefficient> gains;
  std::vector<Coefficient> offset;
  bool operator==(const Affine&) const = default;
};

using AttackFunction = std::variant<ConstantBias, Replay, Affine>;

inline constexpr Step kForever = LONG_MAX;

struct AttackRule {
  /// nullopt matches every receiver; a specific receiver takes precedence.
  std::optional<NodeId> receiver;
  Step start = 1;
  /// Exclusive; kForever for an open window.
  Step end = kForever;
  AttackFunction function;

  bool active_at(Step k) const { return k >= start && k < end; }
  bool operator==(const AttackRule&) const = default;
};

struct AttackScript {
  NodeId attacker = 0;
  std::vector<AttackRule> rules;
  bool operator==(const AttackScript&) const = default;
};

using AttackScripts = std::vector<AttackScript>;

/// Per-agent state trajectory x_i(0..k), used for replay and delayed-affine
/// attacks.
class StateHistory {
 public:
  StateHistory() = default;
  explicit StateHistory(std::vector<NodeId> ids);

  /// Appends one step; `states` must be ordered as the ids given at
  /// construction.
  void push(std::vector<Vec> states);
  Step latest() const { return static_cast<Step>(steps_.size()) - 1; }
  const Vec& at(NodeId id, Step k) const;

 private:
  std::vector<NodeId> ids_;
  std::map<NodeId, std::size_t> index_;
  std::vector<std::vector<Vec>> steps_;
};

struct Transmission {
  Vec value;
  /// The rule that produced the value; null for a truthful transmission.
  const AttackRule* rule = nullptr;
  /// A delayed read reached before k = 0 and was clamped to x(0).
  bool clamped = false;
};

/// x^a_{attacker -> receiver}(k): f(k) of the matching active rule, or the
/// attacker's true state when no rule matches.
Transmission transmit(const AttackScripts& scripts, NodeId attacker,
                      NodeId receiver, Step k, const StateHistory& history);

inline Vec transmitted_value(const AttackScripts& scripts, NodeId attacker,
                             NodeId receiver, Step k,
                             const StateHistory& history) {
  return transmit(scripts, attacker, receiver, k, history).value;
}

/// True if some active rule of `attacker` at k produces a value different
/// from its true state for at least one receiver (wildcards count once).
bool lies_at(const AttackScripts& scripts, NodeId attacker, Step k,
             const StateHistory& history);

/// Every node has at most F members of `active` among its in-neighbors.
bool check_f_local(const DirectedGraph& g, const NodeSet& active, int F);

struct AttackSchedule {
  NodeSet admissible;
  /// Step -> agents whose first rule window opens at that step.
  std::map<Step, NodeSet> activations;
};

/// Rejects (ValidationError) scripts naming agents outside `admissible`,
/// windows opening at k <= 0, replay delays < 1, negative affine delays,
/// and overlapping windows for the same (attacker, receiver) pair.
void validate_scripts(const AttackScripts& scripts, const NodeSet& admissible);

AttackSchedule build_schedule(const NodeSet& admissible,
                              const AttackScripts& scripts);

}  // namespace asns
