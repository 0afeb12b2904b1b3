#pragma once

#include <set>
#include <vector>

namespace asns {

/// Stable agent identifier. Scenarios number agents 1..N.
using NodeId = int;

/// Discrete time index.
using Step = long;

/// Agent state x_i(k) in R^n.
using Vec = std::vector<double>;

using NodeSet = std::set<NodeId>;

}  // namespace asns
