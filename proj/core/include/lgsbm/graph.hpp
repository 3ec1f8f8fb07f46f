#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lgsbm/model.hpp"

namespace lgsbm {

struct Edge {
  NodeId u;
  NodeId v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph on nodes 0..n-1. Edges are stored with u < v;
/// no self-loops and no duplicates.
class Graph {
 public:
  Graph() = default;

  /// Validates and normalizes (orients u < v). Throws InvalidGraph on a
  /// self-loop, an endpoint >= n, or a duplicate edge. Edge order is kept.
  static Graph from_edges(std::size_t n, std::vector<Edge> edges);

  /// Trusted construction for producers that already guarantee the
  /// invariants (the sampler). Only orientation is normalized.
  static Graph from_trusted_edges(std::size_t n, std::vector<Edge> edges);

  std::size_t nodes() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// One pass over the edge stream.
  template <class F>
  void for_each_edge(F&& f) const {
    for (const Edge& e : edges_) f(e.u, e.v);
  }

  /// D_i for every node, accumulated in one pass with integer counters.
  std::vector<std::uint32_t> degrees() const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Sorted neighbor lists (CSR) built once from a Graph.
class Adjacency {
 public:
  explicit Adjacency(const Graph& g);

  std::size_t nodes() const noexcept { return offsets_.size() - 1; }
  std::span<const NodeId> neighbors(NodeId i) const noexcept {
    return {targets_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::size_t degree(NodeId i) const noexcept { return offsets_[i + 1] - offsets_[i]; }
  bool connected(NodeId i, NodeId j) const noexcept;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

}  // namespace lgsbm
