#pragma once

#include <map>
#include <optional>
#include <vector>

#include "asns/graph.hpp"
#include "asns/spectral.hpp"
#include "asns/types.hpp"

namespace asns {

/// Undirected candidate graph over all agents. After isolation events only
/// edges between normal agents survive; flagged agents stay as edgeless
/// vertices.
struct PreDiscriminativeGraph {
  int epoch = 0;
  DirectedGraph graph;
};

/// Keeps exactly the edges of `initial` whose endpoints both lie in
/// `normal`. Throws PreconditionError if `initial` is not undirected.
PreDiscriminativeGraph build_pre_graph(const PreDiscriminativeGraph& initial,
                                       const NodeSet& normal, int epoch);

struct SelectionPolicy {
  enum class Kind { Minimum, Flexible };
  Kind kind = Kind::Minimum;
  /// In-neighbors per agent under the flexible policy.
  int degree = 1;

  static SelectionPolicy minimum() { return {Kind::Minimum, 1}; }
  static SelectionPolicy flexible(int d) { return {Kind::Flexible, d}; }
  int per_agent() const { return kind == Kind::Minimum ? 1 : degree; }
  bool operator==(const SelectionPolicy&) const = default;
};

/// Lowest id in `normal` unless a leader is pinned; a pinned leader outside
/// `normal` is a ConfigurationError.
NodeId pick_virtual_leader(const NodeSet& normal,
                           std::optional<NodeId> pinned = std::nullopt);

/// v1 entries closer than this are ordered by node id instead.
inline constexpr double kEigenTieTolerance = 1e-9;

/// Normal agents sorted by selection order: the leader first, then by v1
/// entry ascending, with near-equal entries ordered by id.
std::vector<NodeId> selection_order(const Eigenpair& eig, NodeId leader,
                                    double tie_tolerance = kEigenTieTolerance);

using PsiMap = std::map<NodeId, std::vector<NodeId>>;

/// psi_i = candidates of i (within `pre`, restricted to `normal`) ranked
/// strictly below i, sorted by rank. The leader is selectable and gets an
/// empty list. Throws StructureError if a non-leader ends up empty.
PsiMap compute_psi(const DirectedGraph& pre, const NodeSet& normal,
                   const std::vector<NodeId>& order, NodeId leader);

struct SelectionContext {
  PreDiscriminativeGraph pre;
  NodeSet normal;
  NodeId leader = 0;
  Eigenpair eig;
  std::vector<NodeId> order;
  PsiMap psi;
  SelectionPolicy policy;
};

/// Rebuild the candidate graph, choose the leader, compute the eigenpair of
/// the perturbed Laplacian over the normal agents, and derive psi.
SelectionContext prepare_selection(const PreDiscriminativeGraph& initial,
                                   const NodeSet& normal,
                                   std::optional<NodeId> pinned_leader,
                                   SelectionPolicy policy, int epoch,
                                   const EigenSolverOptions& opts = {});

/// New communication graph over `all_nodes`: each non-leader normal agent
/// receives unit-weight edges from the first min(d, |psi_i|) members of
/// psi_i (d = 1 under the minimum policy). Flagged agents get no edges.
DirectedGraph select_in_neighbors(const PsiMap& psi, SelectionPolicy policy,
                                  const std::vector<NodeId>& all_nodes);

}  // namespace asns
