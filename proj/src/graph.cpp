#include "ubsea/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

namespace ubsea {

namespace {

void build_csr(NodeId n, std::span<const Edge> edges, bool by_source,
               std::vector<std::int64_t>& offsets, std::vector<NodeId>& targets) {
  offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [u, v] : edges) ++offsets[(by_source ? u : v) + 1];
  for (NodeId i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  targets.resize(edges.size());
  std::vector<std::int64_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [u, v] : edges) {
    if (by_source)
      targets[cursor[u]++] = v;
    else
      targets[cursor[v]++] = u;
  }
  for (NodeId i = 0; i < n; ++i)
    std::sort(targets.begin() + offsets[i], targets.begin() + offsets[i + 1]);
}

}  // namespace

Graph::Graph(NodeId node_count, bool directed, std::vector<Edge> edges)
    : node_count_(node_count), directed_(directed), edges_(std::move(edges)) {
  if (node_count_ < 1) throw std::invalid_argument("graph needs at least one node");
  for (auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= node_count_ || v >= node_count_)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop on node " + std::to_string(u));
    if (!directed_ && u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("duplicate edge");

  if (directed_) {
    build_csr(node_count_, edges_, true, out_offsets_, out_targets_);
    build_csr(node_count_, edges_, false, in_offsets_, in_sources_);
  } else {
    std::vector<Edge> both;
    both.reserve(edges_.size() * 2);
    for (const auto& [u, v] : edges_) {
      both.emplace_back(u, v);
      both.emplace_back(v, u);
    }
    build_csr(node_count_, both, true, out_offsets_, out_targets_);
    in_offsets_ = out_offsets_;
    in_sources_ = out_targets_;
  }
}

std::span<const NodeId> Graph::out_neighbors(NodeId i) const {
  return {out_targets_.data() + out_offsets_[i],
          static_cast<std::size_t>(out_offsets_[i + 1] - out_offsets_[i])};
}

std::span<const NodeId> Graph::in_neighbors(NodeId i) const {
  return {in_sources_.data() + in_offsets_[i],
          static_cast<std::size_t>(in_offsets_[i + 1] - in_offsets_[i])};
}

std::int64_t Graph::degree(NodeId i) const {
  return directed_ ? in_degree(i) + out_degree(i) : out_degree(i);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nb = out_neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph Graph::relabeled(std::span<const NodeId> perm) const {
  if (perm.size() != static_cast<std::size_t>(node_count_))
    throw std::invalid_argument("permutation length mismatch");
  std::vector<Edge> mapped;
  mapped.reserve(edges_.size());
  for (const auto& [u, v] : edges_) mapped.emplace_back(perm[u], perm[v]);
  return Graph(node_count_, directed_, std::move(mapped));
}

GraphConstants graph_constants(const Graph& g) {
  GraphConstants c;
  c.directed = g.directed();
  c.g_size = g.edge_count();
  const std::int64_t G = c.g_size;
  if (!g.directed()) {
    std::int64_t shared = 0;
    for (NodeId i = 0; i < g.node_count(); ++i) {
      const auto k = g.degree(i);
      shared += k * (k - 1);
    }
    c.q2 = G * G - G - shared;
    return c;
  }

  // Ordered pairs of distinct edges are: reciprocal pairs (q1), pairs sharing
  // exactly one node (same tail, same head, head-to-tail either way), and
  // node-disjoint pairs (q2).
  std::int64_t reciprocal = 0;
  std::int64_t same_tail = 0, same_head = 0, chained = 0;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    for (NodeId j : g.in_neighbors(i))
      if (g.has_edge(i, j)) ++reciprocal;
    const auto ko = g.out_degree(i), ki = g.in_degree(i);
    same_tail += ko * (ko - 1);
    same_head += ki * (ki - 1);
    chained += ki * ko;
  }
  c.q1 = reciprocal;
  c.q2 = G * G - G - reciprocal - 2 * (chained - reciprocal) - same_tail - same_head;
  return c;
}

LoadedGraph load_edge_list(std::istream& in, bool directed) {
  LoadedGraph out;
  std::unordered_map<std::string, NodeId> index;
  auto intern = [&](const std::string& tok) {
    auto [it, fresh] = index.try_emplace(tok, static_cast<NodeId>(out.node_ids.size()));
    if (fresh) out.node_ids.push_back(tok);
    return it->second;
  };

  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a) || a.front() == '#') continue;
    if (!(ls >> b) || (ls >> extra))
      throw InputError("line " + std::to_string(lineno) + ": expected two node ids");
    if (a == b)
      throw InputError("line " + std::to_string(lineno) + ": self-loop on node '" + a + "'");
    NodeId u = intern(a), v = intern(b);
    if (!directed && u > v) std::swap(u, v);
    edges.emplace_back(u, v);
  }

  std::sort(edges.begin(), edges.end());
  auto last = std::unique(edges.begin(), edges.end());
  out.duplicate_edges = std::distance(last, edges.end());
  edges.erase(last, edges.end());

  if (out.node_ids.size() < 4)
    throw InputError("graph too small: " + std::to_string(out.node_ids.size()) +
                     " nodes (need at least 4)");
  out.graph = Graph(static_cast<NodeId>(out.node_ids.size()), directed, std::move(edges));
  return out;
}

LoadedGraph load_edge_list_file(const std::string& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge list '" + path + "'");
  return load_edge_list(in, directed);
}

}  // namespace ubsea
