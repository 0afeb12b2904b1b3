#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "asns/types.hpp"

namespace asns {

struct Edge {
  NodeId from;
  NodeId to;
  double weight;

  bool operator==(const Edge&) const = default;
};

/// Weighted digraph. An edge from -> to means `to` receives from `from`
/// with weight a_{to,from} > 0. Undirected graphs store every edge together
/// with its reverse at equal weight.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// Nodes 1..node_count, no edges.
  explicit DirectedGraph(int node_count, bool undirected = false);
  explicit DirectedGraph(std::vector<NodeId> nodes, bool undirected = false);

  /// Adds (or re-weights) an edge; mirrors it when the graph is undirected.
  /// Throws IdentifierError for unknown endpoints and PreconditionError for
  /// self-loops or non-positive weights.
  void add_edge(NodeId from, NodeId to, double weight = 1.0);
  void remove_edge(NodeId from, NodeId to);

  bool undirected() const noexcept { return undirected_; }
  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept;

  bool contains(NodeId id) const { return index_.count(id) != 0; }
  /// Position of `id` in nodes(); throws IdentifierError if absent.
  std::size_t index_of(NodeId id) const;

  bool has_edge(NodeId from, NodeId to) const;
  /// a_{to,from}; zero when the edge is absent.
  double weight(NodeId from, NodeId to) const;

  /// Senders into `id` mapped to their weights (N_i^+ with a_ij).
  const std::map<NodeId, double>& in_edges(NodeId id) const;
  std::vector<NodeId> in_neighbors(NodeId id) const;
  std::vector<NodeId> out_neighbors(NodeId id) const;
  /// l_ii = sum of incoming weights.
  double in_weight(NodeId id) const;

  /// All edges ordered by (from, to).
  std::vector<Edge> edges() const;

  bool operator==(const DirectedGraph&) const = default;

 private:
  std::vector<NodeId> nodes_;
  std::map<NodeId, std::size_t> index_;
  std::map<NodeId, std::map<NodeId, double>> in_;
  bool undirected_ = false;
};

/// Dense Laplacian with rows/columns in `order`.
struct LaplacianMatrix {
  std::vector<NodeId> order;
  Eigen::MatrixXd matrix;
};

LaplacianMatrix build_laplacian(const DirectedGraph& g);

/// True iff some member of `subset` has at least r in-neighbors outside it.
bool is_r_reachable(const DirectedGraph& g, const NodeSet& subset, int r);

inline constexpr int kDefaultRobustnessLimit = 12;

/// Largest r such that for every pair of disjoint nonempty node subsets at
/// least one is r-reachable. Exhaustive over all 3^N subset assignments, so
/// graphs above `node_limit` nodes are refused with a CapacityError. Graphs
/// with fewer than two nodes report 0.
int max_robustness(const DirectedGraph& g,
                   int node_limit = kDefaultRobustnessLimit);

/// Lowest-id node with a directed path to every other node, if any.
std::optional<NodeId> has_rooted_spanning_tree(const DirectedGraph& g);

DirectedGraph induced_subgraph(const DirectedGraph& g, const NodeSet& keep);

/// Connectivity ignoring edge direction.
bool is_weakly_connected(const DirectedGraph& g);

/// Every edge of `sub` (with its endpoints) also exists in `super`.
bool is_edge_subgraph(const DirectedGraph& sub, const DirectedGraph& super);

/// Graph literal text:
///
///   nodes 4
///   undirected true
///   1 -> 2
///   2 -> 3 0.5
///
/// Blank lines and `#` comments are ignored. Weights default to 1.
DirectedGraph parse_graph_literal(std::string_view text, int first_line = 1);
std::string format_graph_literal(const DirectedGraph& g);

}  // namespace asns
