#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tfm {

/// Undirected edge between 1-based vertices, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Vertex subset as a bitmask: bit i-1 set <=> vertex i selected. Limits subset
/// arithmetic to n <= 32; graphs themselves may be larger.
using Subset = std::uint32_t;

class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Simple undirected graph with ordered edges (the order fixes edge indices 1..s).
class Graph {
 public:
  /// Throws InstanceError for n < 2, self-loops, out-of-range endpoints or duplicates.
  Graph(int n, std::vector<Edge> edges);

  int vertex_count() const noexcept { return n_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// 1-based indices of edges incident to vertex v, ascending.
  std::vector<int> incident(int v) const;

 private:
  int n_;
  std::vector<Edge> edges_;
};

/// An independent-set question: does the graph have an independent set of size >= k?
struct Instance {
  /// Throws InstanceError unless 1 <= k < n.
  Instance(Graph g, int k);

  Graph graph;
  int k;

  int n() const noexcept { return graph.vertex_count(); }
  int s() const noexcept { return graph.edge_count(); }
};

}  // namespace tfm
