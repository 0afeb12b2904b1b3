#pragma once

#include <cstdint>
#include <random>

#include "asns/graph.hpp"

namespace asns {

/// Undirected graph on 1..n that max_robustness certifies r-robust.
/// Starts from a sparse random graph and adds random missing edges until
/// the certificate holds, so the result is reproducible from `seed`.
/// Throws PreconditionError when r > ceil(n/2) (not even K_n qualifies)
/// and CapacityError when n exceeds `node_limit`.
DirectedGraph random_robust_graph(int n, int r, std::uint64_t seed,
                                  int node_limit = kDefaultRobustnessLimit);

/// Same, drawing from a caller-owned engine.
DirectedGraph random_robust_graph(int n, int r, std::mt19937_64& rng,
                                  int node_limit = kDefaultRobustnessLimit);

}  // namespace asns
