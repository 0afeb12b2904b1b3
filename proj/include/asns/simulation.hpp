#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asns/dynamics.hpp"
#include "asns/errors.hpp"
#include "asns/graph.hpp"
#include "asns/scenario.hpp"
#include "asns/selection.hpp"

namespace asns {

/// Reference sets for sigma_i(k).
struct RelativeErrorReference {
  /// Normal agents (complement of the admissible set).
  NodeSet normal;
  /// Graph whose in-neighbor sets serve as references for admissible agents.
  DirectedGraph initial;
};

/// sigma_i = || sum_{j in R_i} (x_i - x_j) || with R_i = normal set for
/// normal agents and the initial in-neighbors for everyone else. An empty
/// reference set gives 0.
std::map<NodeId, double> relative_error(const AgentStates& states,
                                        const RelativeErrorReference& ref);

struct FlagEvent {
  Step k = 0;
  /// 0 for the oracle detector.
  NodeId observer = 0;
  NodeId flagged = 0;
  double residual = 0.0;
};

/// A delivered value that differs from the sender's true state.
struct LieEvent {
  Step k = 0;
  NodeId attacker = 0;
  NodeId receiver = 0;
  /// Infinity-norm deviation from the true state.
  double magnitude = 0.0;
};

/// Topology in force from step `k` until the next record.
struct EpochRecord {
  int epoch = 0;
  Step k = 0;
  NodeSet normal;
  /// Reconstruction outputs; absent for the initial topology and for
  /// defenses that do not select neighbors.
  std::optional<NodeId> leader;
  double lambda1 = 0.0;
  std::map<NodeId, double> v1;
  PsiMap psi;
  std::vector<Edge> edges;
  /// Edges with both endpoints in `normal`.
  std::size_t normal_edge_count = 0;
  /// Root of a directed spanning tree of the normal subgraph, if any.
  std::optional<NodeId> normal_root;
};

struct StepRow {
  Step k = 0;
  int epoch = 0;
  /// Per agent, in SimTrace::agents order.
  std::vector<Vec> x;
  std::vector<Role> roles;
  std::vector<bool> flagged;
  std::vector<double> sigma;
  /// Interval hull of the agents not yet flagged, A(0,k).
  HullBounds hull;
  /// Hull width over the normal (non-admissible) agents.
  double normal_width = 0.0;
};

enum class Outcome { Converged, NotConverged, DefenseFailure };
const char* to_string(Outcome o);

struct SimSummary {
  Outcome outcome = Outcome::NotConverged;
  bool converged = false;
  /// First step of the streak that declared convergence.
  std::optional<Step> convergence_step;
  double final_hull_width = 0.0;
  Step last_step = 0;
  int reconstructions = 0;
  std::vector<std::size_t> edges_per_epoch;
  /// Set when the defense could not build a topology.
  std::optional<Step> failure_step;
  std::string failure_cause;
  std::string failure_message;
  std::vector<std::string> warnings;
};

struct SimTrace {
  std::string scenario;
  std::vector<NodeId> agents;
  int dimension = 0;
  std::vector<StepRow> rows;
  std::vector<FlagEvent> flags;
  std::vector<LieEvent> lies;
  std::vector<EpochRecord> epochs;
  SimSummary summary;
};

/// Consecutive steps below tolerance required to declare convergence.
inline constexpr int kConvergenceWindow = 10;

struct RunOptions {
  /// Stop once converged and every attack window has opened.
  bool stop_on_convergence = true;
  bool record_rows = true;
};

/// A module error raised inside the run loop, tagged with the step.
class RunError : public Error {
 public:
  RunError(ErrorKind cause, Step step, const std::string& what)
      : Error(cause, "step " + std::to_string(step) + " (" + to_string(cause) +
                         "): " + what),
        step_(step) {}
  Step step() const noexcept { return step_; }

 private:
  Step step_;
};

/// Round-synchronous run: detection and broadcast, reconstruction on a
/// shrinking normal set, delivery of (possibly forged) values over the
/// live graph, then the defense's state update. Validates the scenario
/// first (ValidationError). Structure errors from neighbor selection end
/// the run as a defense failure; other module errors throw RunError.
SimTrace run_scenario(const Scenario& s, const RunOptions& opts = {});

}  // namespace asns
