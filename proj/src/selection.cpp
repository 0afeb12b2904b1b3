#include "asns/selection.hpp"

#include <algorithm>
#include <string>

#include "asns/errors.hpp"

namespace asns {

PreDiscriminativeGraph build_pre_graph(const PreDiscriminativeGraph& initial,
                                       const NodeSet& normal, int epoch) {
  if (!initial.graph.undirected())
    throw PreconditionError("the candidate graph must be undirected");
  PreDiscriminativeGraph out;
  out.epoch = epoch;
  out.graph = DirectedGraph(initial.graph.nodes(), true);
  for (const Edge& e : initial.graph.edges())
    if (e.from < e.to && normal.count(e.from) && normal.count(e.to))
      out.graph.add_edge(e.from, e.to, e.weight);
  return out;
}

NodeId pick_virtual_leader(const NodeSet& normal, std::optional<NodeId> pinned) {
  if (normal.empty()) throw PreconditionError("no normal agents left to lead");
  if (pinned) {
    if (!normal.count(*pinned))
      throw ConfigurationError("pinned leader " + std::to_string(*pinned) +
                               " is not a normal agent");
    return *pinned;
  }
  return *normal.begin();
}

std::vector<NodeId> selection_order(const Eigenpair& eig, NodeId leader,
                                    double tie_tolerance) {
  struct Entry {
    double v;
    NodeId id;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < eig.order.size(); ++i)
    if (eig.order[i] != leader)
      entries.push_back({eig.v1(static_cast<Eigen::Index>(i)), eig.order[i]});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.v != b.v ? a.v < b.v : a.id < b.id;
  });

  std::vector<NodeId> order{leader};
  // Runs of entries within tie_tolerance of the run's first value are
  // ordered by id; this keeps the order total and acyclic.
  std::size_t start = 0;
  while (start < entries.size()) {
    std::size_t end = start + 1;
    while (end < entries.size() && entries[end].v - entries[start].v <= tie_tolerance) ++end;
    std::vector<NodeId> run;
    for (std::size_t i = start; i < end; ++i) run.push_back(entries[i].id);
    std::sort(run.begin(), run.end());
    order.insert(order.end(), run.begin(), run.end());
    start = end;
  }
  return order;
}

PsiMap compute_psi(const DirectedGraph& pre, const NodeSet& normal,
                   const std::vector<NodeId>& order, NodeId leader) {
  std::map<NodeId, std::size_t> rank;
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  if (rank.size() != normal.size() || !normal.count(leader) || order.front() != leader)
    throw PreconditionError("selection order must rank exactly the normal agents, leader first");

  PsiMap psi;
  for (NodeId i : normal) {
    auto& list = psi[i];
    if (i == leader) continue;
    const std::size_t own = rank.at(i);
    for (const auto& [j, w] : pre.in_edges(i)) {
      auto it = rank.find(j);
      if (it != rank.end() && it->second < own) list.push_back(j);
    }
    std::sort(list.begin(), list.end(),
              [&](NodeId a, NodeId b) { return rank.at(a) < rank.at(b); });
    if (list.empty())
      throw StructureError("agent " + std::to_string(i) +
                           " has no admissible in-neighbor ranked below it");
  }
  return psi;
}

SelectionContext prepare_selection(const PreDiscriminativeGraph& initial,
                                   const NodeSet& normal,
                                   std::optional<NodeId> pinned_leader,
                                   SelectionPolicy policy, int epoch,
                                   const EigenSolverOptions& opts) {
  SelectionContext ctx;
  ctx.pre = build_pre_graph(initial, normal, epoch);
  ctx.normal = normal;
  ctx.policy = policy;
  ctx.leader = pick_virtual_leader(normal, pinned_leader);
  const DirectedGraph normal_pre = induced_subgraph(ctx.pre.graph, normal);
  ctx.eig = smallest_eigenpair(perturbed_laplacian(normal_pre, ctx.leader), opts);
  ctx.order = selection_order(ctx.eig, ctx.leader);
  ctx.psi = compute_psi(ctx.pre.graph, normal, ctx.order, ctx.leader);
  return ctx;
}

DirectedGraph select_in_neighbors(const PsiMap& psi, SelectionPolicy policy,
                                  const std::vector<NodeId>& all_nodes) {
  if (policy.per_agent() < 1)
    throw ConfigurationError("flexible selection needs degree >= 1");
  DirectedGraph g(all_nodes, false);
  const auto take = static_cast<std::size_t>(policy.per_agent());
  for (const auto& [i, list] : psi)
    for (std::size_t r = 0; r < std::min(take, list.size()); ++r)
      g.add_edge(list[r], i, 1.0);
  return g;
}

}  // namespace asns
