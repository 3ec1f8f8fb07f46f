#include "lgsbm/graph.hpp"

#include <algorithm>
#include <string>

#include "lgsbm/error.hpp"

namespace lgsbm {

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges) {
  for (std::size_t k = 0; k < edges.size(); ++k) {
    Edge& e = edges[k];
    if (e.u >= n || e.v >= n) {
      throw Error(ErrorCode::InvalidGraph, "edge " + std::to_string(k) + " (" + std::to_string(e.u) + "," +
                                               std::to_string(e.v) + ") has an endpoint >= n=" +
                                               std::to_string(n));
    }
    if (e.u == e.v) throw Error(ErrorCode::InvalidGraph, "self-loop on node " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    throw Error(ErrorCode::InvalidGraph,
                "duplicate edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) + ")");
  }
  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  return g;
}

Graph Graph::from_trusted_edges(std::size_t n, std::vector<Edge> edges) {
  for (Edge& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  return g;
}

std::vector<std::uint32_t> Graph::degrees() const {
  std::vector<std::uint32_t> d(n_, 0);
  for (const Edge& e : edges_) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

Adjacency::Adjacency(const Graph& g) : offsets_(g.nodes() + 1, 0) {
  for (const Edge& e : g.edges()) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  targets_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : g.edges()) {
    targets_[cursor[e.u]++] = e.v;
    targets_[cursor[e.v]++] = e.u;
  }
  for (std::size_t i = 0; i + 1 < offsets_.size(); ++i) {
    std::sort(targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
  }
}

bool Adjacency::connected(NodeId i, NodeId j) const noexcept {
  const auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

}  // namespace lgsbm
