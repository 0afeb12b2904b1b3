#include "asns/generate.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "asns/errors.hpp"

namespace asns {

DirectedGraph random_robust_graph(int n, int r, std::mt19937_64& rng, int node_limit) {
  if (n < 1) throw PreconditionError("n must be positive");
  if (r < 0 || r > (n >= 2 ? (n + 1) / 2 : 0))
    throw PreconditionError("no graph on " + std::to_string(n) + " nodes is " +
                            std::to_string(r) + "-robust");
  if (n > node_limit)
    throw CapacityError("robustness certificate limited to " + std::to_string(node_limit) +
                            " nodes",
                        node_limit);

  std::vector<std::pair<NodeId, NodeId>> missing;
  for (NodeId a = 1; a <= n; ++a)
    for (NodeId b = a + 1; b <= n; ++b) missing.emplace_back(a, b);
  std::shuffle(missing.begin(), missing.end(), rng);

  DirectedGraph g(n, true);
  // Every node of an r-robust graph has degree >= r, so seed with that many edges.
  std::size_t next = 0;
  const std::size_t seed_edges = std::min(missing.size(), static_cast<std::size_t>(n) * r / 2);
  for (; next < seed_edges; ++next) g.add_edge(missing[next].first, missing[next].second);
  while (max_robustness(g, node_limit) < r) {
    g.add_edge(missing[next].first, missing[next].second);
    ++next;
  }
  return g;
}

DirectedGraph random_robust_graph(int n, int r, std::uint64_t seed, int node_limit) {
  std::mt19937_64 rng(seed);
  return random_robust_graph(n, r, rng, node_limit);
}

}  // namespace asns
