#include "tfm/construction/graph.hpp"

#include <set>
#include <string>
#include <utility>

namespace tfm {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ < 2) throw InstanceError("graph needs at least 2 vertices, got " + std::to_string(n_));
  std::set<std::pair<int, int>> seen;
  for (auto& e : edges_) {
    if (e.u == e.v) throw InstanceError("self-loop on vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 1 || e.v > n_)
      throw InstanceError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          ") out of range 1.." + std::to_string(n_));
    if (!seen.emplace(e.u, e.v).second)
      throw InstanceError("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
  }
}

std::vector<int> Graph::incident(int v) const {
  std::vector<int> out;
  for (std::size_t h = 0; h < edges_.size(); ++h)
    if (edges_[h].u == v || edges_[h].v == v) out.push_back(static_cast<int>(h) + 1);
  return out;
}

Instance::Instance(Graph g, int k_) : graph(std::move(g)), k(k_) {
  if (k < 1 || k >= graph.vertex_count())
    throw InstanceError("threshold k=" + std::to_string(k) + " outside [1, " +
                        std::to_string(graph.vertex_count() - 1) + "]");
}

}  // namespace tfm
