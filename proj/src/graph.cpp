#include "asns/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <queue>
#include <sstream>

#include "asns/errors.hpp"
#include "text_util.hpp"

namespace asns {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Identifier: return "identifier";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Structure: return "structure";
    case ErrorKind::Protocol: return "protocol";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Validation: return "validation";
  }
  return "unknown";
}

namespace {

const std::map<NodeId, double> kNoEdges;

}  // namespace

DirectedGraph::DirectedGraph(int node_count, bool undirected)
    : undirected_(undirected) {
  if (node_count < 0) throw PreconditionError("negative node count");
  for (NodeId id = 1; id <= node_count; ++id) {
    index_[id] = nodes_.size();
    nodes_.push_back(id);
  }
}

DirectedGraph::DirectedGraph(std::vector<NodeId> nodes, bool undirected)
    : nodes_(std::move(nodes)), undirected_(undirected) {
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end())
    throw PreconditionError("duplicate node id");
  for (std::size_t i = 0; i < nodes_.size(); ++i) index_[nodes_[i]] = i;
}

void DirectedGraph::add_edge(NodeId from, NodeId to, double weight) {
  if (!contains(from) || !contains(to))
    throw IdentifierError("edge " + std::to_string(from) + " -> " +
                          std::to_string(to) + " references an unknown node");
  if (from == to)
    throw PreconditionError("self-loop on node " + std::to_string(from));
  if (!(weight > 0.0) || !std::isfinite(weight))
    throw PreconditionError("edge weights must be positive and finite");
  in_[to][from] = weight;
  if (undirected_) in_[from][to] = weight;
}

void DirectedGraph::remove_edge(NodeId from, NodeId to) {
  auto erase = [this](NodeId a, NodeId b) {
    auto it = in_.find(b);
    if (it == in_.end()) return;
    it->second.erase(a);
    if (it->second.empty()) in_.erase(it);
  };
  erase(from, to);
  if (undirected_) erase(to, from);
}

std::size_t DirectedGraph::edge_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [to, senders] : in_) n += senders.size();
  return n;
}

std::size_t DirectedGraph::index_of(NodeId id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw IdentifierError("unknown node " + std::to_string(id));
  return it->second;
}

bool DirectedGraph::has_edge(NodeId from, NodeId to) const {
  auto it = in_.find(to);
  return it != in_.end() && it->second.count(from) != 0;
}

double DirectedGraph::weight(NodeId from, NodeId to) const {
  auto it = in_.find(to);
  if (it == in_.end()) return 0.0;
  auto w = it->second.find(from);
  return w == it->second.end() ? 0.0 : w->second;
}

const std::map<NodeId, double>& DirectedGraph::in_edges(NodeId id) const {
  auto it = in_.find(id);
  return it == in_.end() ? kNoEdges : it->second;
}

std::vector<NodeId> DirectedGraph::in_neighbors(NodeId id) const {
  std::vector<NodeId> out;
  for (const auto& [from, w] : in_edges(id)) out.push_back(from);
  return out;
}

std::vector<NodeId> DirectedGraph::out_neighbors(NodeId id) const {
  std::vector<NodeId> out;
  for (const auto& [to, senders] : in_)
    if (senders.count(id)) out.push_back(to);
  return out;
}

double DirectedGraph::in_weight(NodeId id) const {
  double s = 0.0;
  for (const auto& [from, w] : in_edges(id)) s += w;
  return s;
}

std::vector<Edge> DirectedGraph::edges() const {
  std::vector<Edge> out;
  for (const auto& [to, senders] : in_)
    for (const auto& [from, w] : senders) out.push_back({from, to, w});
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  return out;
}

LaplacianMatrix build_laplacian(const DirectedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  LaplacianMatrix lap{g.nodes(), Eigen::MatrixXd::Zero(n, n)};
  for (NodeId i : g.nodes()) {
    const auto row = static_cast<Eigen::Index>(g.index_of(i));
    double diag = 0.0;
    for (const auto& [j, w] : g.in_edges(i)) {
      lap.matrix(row, static_cast<Eigen::Index>(g.index_of(j))) = -w;
      diag += w;
    }
    lap.matrix(row, row) = diag;
  }
  return lap;
}

bool is_r_reachable(const DirectedGraph& g, const NodeSet& subset, int r) {
  if (subset.empty()) throw PreconditionError("r-reachability of an empty set");
  for (NodeId i : subset) {
    if (!g.contains(i))
      throw IdentifierError("unknown node " + std::to_string(i));
  }
  for (NodeId i : subset) {
    int outside = 0;
    for (const auto& [j, w] : g.in_edges(i))
      if (!subset.count(j)) ++outside;
    if (outside >= r) return true;
  }
  return false;
}

int max_robustness(const DirectedGraph& g, int node_limit) {
  const int n = static_cast<int>(g.node_count());
  if (n > node_limit || n > 24)
    throw CapacityError("exhaustive robustness check is limited to " +
                            std::to_string(std::min(node_limit, 24)) +
                            " nodes, graph has " + std::to_string(n),
                        std::min(node_limit, 24));
  if (n < 2) return 0;

  using Mask = std::uint32_t;
  std::vector<Mask> in_mask(n, 0);
  for (int i = 0; i < n; ++i)
    for (const auto& [j, w] : g.in_edges(g.nodes()[i]))
      in_mask[i] |= Mask{1} << g.index_of(j);

  // reach[S] = max over i in S of |N_i^+ \ S|, the largest r for which S is
  // r-reachable.
  const Mask full = (Mask{1} << n) - 1;
  std::vector<std::uint8_t> reach(std::size_t{1} << n, 0);
  for (Mask s = 1; s <= full; ++s) {
    int best = 0;
    for (Mask rest = s; rest; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      best = std::max(best, std::popcount(in_mask[i] & ~s));
    }
    reach[s] = static_cast<std::uint8_t>(best);
  }

  // The graph is r-robust iff min over disjoint pairs of max(reach(A),
  // reach(B)) >= r. Unordered pairs: A holds the lowest member of A | B.
  int worst = std::numeric_limits<int>::max();
  for (Mask a = 1; a <= full; ++a) {
    const Mask low = a & (~a + 1);
    const Mask free = full & ~a & ~(low - 1);
    // max(reach(A), .) >= reach(A), so this A cannot lower the minimum.
    if (reach[a] >= worst) continue;
    for (Mask b = free; b; b = (b - 1) & free) {
      const int m = std::max(reach[a], reach[b]);
      if (m < worst) {
        worst = m;
        if (worst == 0) return 0;
      }
    }
  }
  return worst;
}

std::optional<NodeId> has_rooted_spanning_tree(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return std::nullopt;
  std::vector<std::vector<std::size_t>> out(n);
  for (const Edge& e : g.edges())
    out[g.index_of(e.from)].push_back(g.index_of(e.to));
  for (std::size_t root = 0; root < n; ++root) {
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> q;
    q.push(root);
    seen[root] = true;
    std::size_t count = 1;
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto v : out[u])
        if (!seen[v]) {
          seen[v] = true;
          ++count;
          q.push(v);
        }
    }
    if (count == n) return g.nodes()[root];
  }
  return std::nullopt;
}

DirectedGraph induced_subgraph(const DirectedGraph& g, const NodeSet& keep) {
  for (NodeId id : keep)
    if (!g.contains(id))
      throw IdentifierError("unknown node " + std::to_string(id));
  DirectedGraph sub(std::vector<NodeId>(keep.begin(), keep.end()),
                    g.undirected());
  for (const Edge& e : g.edges())
    if (keep.count(e.from) && keep.count(e.to)) sub.add_edge(e.from, e.to, e.weight);
  return sub;
}

bool is_weakly_connected(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  if (n <= 1) return true;
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Edge& e : g.edges()) {
    auto a = g.index_of(e.from), b = g.index_of(e.to);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    for (auto v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
  }
  return count == n;
}

bool is_edge_subgraph(const DirectedGraph& sub, const DirectedGraph& super) {
  for (const Edge& e : sub.edges())
    if (!super.has_edge(e.from, e.to)) return false;
  return true;
}

DirectedGraph parse_graph_literal(std::string_view text, int first_line) {
  std::optional<long> node_count;
  bool undirected = false;
  struct Pending {
    NodeId from, to;
    double w;
    int line;
  };
  std::vector<Pending> pending;

  int line_no = first_line - 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    auto tok = text::split_ws(text::strip_comment(raw));
    if (tok.empty()) continue;
    if (tok[0] == "nodes" && tok.size() == 2) {
      node_count = text::parse_long(tok[1], line_no);
      if (*node_count < 0) throw ParseError("negative node count", line_no);
    } else if (tok[0] == "undirected" && tok.size() == 2) {
      if (tok[1] == "true") undirected = true;
      else if (tok[1] == "false") undirected = false;
      else throw ParseError("undirected expects true|false", line_no);
    } else if ((tok.size() == 3 || tok.size() == 4) && tok[1] == "->") {
      Pending p{static_cast<NodeId>(text::parse_long(tok[0], line_no)),
                static_cast<NodeId>(text::parse_long(tok[2], line_no)), 1.0,
                line_no};
      if (tok.size() == 4) p.w = text::parse_double(tok[3], line_no);
      pending.push_back(p);
    } else {
      throw ParseError("unrecognized graph line '" + std::string(raw) + "'",
                       line_no);
    }
    if (nl == text.size()) break;
  }
  if (!node_count) throw ParseError("graph literal lacks a 'nodes N' line", first_line);

  DirectedGraph g(static_cast<int>(*node_count), undirected);
  for (const auto& p : pending) {
    try {
      g.add_edge(p.from, p.to, p.w);
    } catch (const Error& e) {
      throw ParseError(e.what(), p.line);
    }
  }
  return g;
}

std::string format_graph_literal(const DirectedGraph& g) {
  for (std::size_t i = 0; i < g.node_count(); ++i)
    if (g.nodes()[i] != static_cast<NodeId>(i + 1))
      throw PreconditionError("graph literals require node ids 1..N");
  std::ostringstream os;
  os << "nodes " << g.node_count() << "\n";
  os << "undirected " << (g.undirected() ? "true" : "false") << "\n";
  for (const Edge& e : g.edges()) {
    if (g.undirected() && e.from > e.to) continue;
    os << e.from << " -> " << e.to;
    if (e.weight != 1.0) os << " " << text::fmt_double(e.weight);
    os << "\n";
  }
  return os.str();
}

}  // namespace asns
