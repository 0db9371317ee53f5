#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ubsea {

using NodeId = std::int32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Malformed or unusable input data (edge lists, label files).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simple graph on nodes 0..N-1 without self-loops or duplicate edges.
///
/// Undirected graphs store each edge once as (min, max); in_neighbors and
/// out_neighbors then coincide. Adjacency lists are sorted.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Throws std::invalid_argument on
  /// self-loops, out-of-range endpoints or duplicates (after canonicalizing
  /// undirected pairs).
  Graph(NodeId node_count, bool directed, std::vector<Edge> edges);

  NodeId node_count() const { return node_count_; }
  bool directed() const { return directed_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const NodeId> out_neighbors(NodeId i) const;
  std::span<const NodeId> in_neighbors(NodeId i) const;

  std::int64_t out_degree(NodeId i) const { return out_offsets_[i + 1] - out_offsets_[i]; }
  std::int64_t in_degree(NodeId i) const { return in_offsets_[i + 1] - in_offsets_[i]; }
  /// Undirected degree; for directed graphs this is in + out.
  std::int64_t degree(NodeId i) const;

  bool has_edge(NodeId u, NodeId v) const;

  /// Same graph with node i renamed to perm[i].
  Graph relabeled(std::span<const NodeId> perm) const;

 private:
  NodeId node_count_ = 0;
  bool directed_ = false;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<std::int64_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
};

/// Label-independent quantities entering the permutation-null moments.
///
/// g_size is the (ordered, when directed) edge count. q1 counts directed
/// edges whose reverse is also present. q2 counts ordered pairs of distinct
/// edges sharing no endpoint.
struct GraphConstants {
  std::int64_t g_size = 0;
  std::int64_t q1 = 0;
  std::int64_t q2 = 0;
  bool directed = false;

  bool operator==(const GraphConstants&) const = default;
};

GraphConstants graph_constants(const Graph& g);

/// Result of parsing an edge list: the graph plus the token of every node.
struct LoadedGraph {
  Graph graph;
  std::vector<std::string> node_ids;
  std::int64_t duplicate_edges = 0;
};

/// Parses whitespace separated "u v" lines. '#' comments and blank lines are
/// skipped; node tokens are numbered in first-seen order. Throws InputError
/// for malformed lines, self-loops and graphs with fewer than 4 nodes.
LoadedGraph load_edge_list(std::istream& in, bool directed);
LoadedGraph load_edge_list_file(const std::string& path, bool directed);

}  // namespace ubsea
