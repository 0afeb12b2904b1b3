#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "asns/adversary.hpp"
#include "asns/graph.hpp"
#include "asns/selection.hpp"
#include "asns/types.hpp"

namespace asns {

enum class Defense { Asns, Wmsr, None, ConnectivityBaseline };
enum class DetectionMode { TwoHop, Oracle };

const char* to_string(Defense d);
const char* to_string(DetectionMode m);
/// Throws ConfigurationError for unknown names.
Defense parse_defense(std::string_view name);

/// Everything one simulation run needs.
struct Scenario {
  std::string name;
  int agents = 0;
  int dimension = 1;
  double epsilon = 0.0;
  /// F-local bound known to the defenders.
  int F = 0;
  Defense defense = Defense::Asns;
  SelectionPolicy policy = SelectionPolicy::minimum();
  DetectionMode detection = DetectionMode::TwoHop;
  Step horizon = 1000;
  /// Convergence threshold on the normal agents' hull width.
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
  /// Reconstruction epoch (1-based) -> pinned virtual leader.
  std::map<int, NodeId> leader_pins;
  /// Attack-admissible agents.
  NodeSet admissible;
  /// Initial communication graph.
  DirectedGraph initial;
  /// Initial candidate graph (undirected); defaults to the undirected
  /// closure of `initial` when a scenario file omits it.
  DirectedGraph candidates;
  std::map<NodeId, Vec> initial_states;
  AttackScripts scripts;

  bool operator==(const Scenario&) const = default;
};

/// Parses the line-oriented scenario format (see README). Throws ParseError
/// with the offending line. The result is not validated.
Scenario parse_scenario(std::string_view text);
std::string format_scenario(const Scenario& s);
Scenario load_scenario(const std::filesystem::path& path);

/// Structural and admissibility checks: graph sizes, candidate graph
/// undirected and containing the initial graph, state dimensions, script
/// admissibility, F-local attacks on both graphs, and the step-size bound.
/// Throws ValidationError.
void validate_scenario(const Scenario& s);

}  // namespace asns
