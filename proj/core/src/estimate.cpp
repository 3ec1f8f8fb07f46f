#include "lgsbm/estimate.hpp"

#include <bit>
#include <string>

#include "lgsbm/error.hpp"

namespace lgsbm {

EstimateResult estimate_from_counts(std::size_t q, std::vector<std::uint64_t> class_sizes,
                                    std::vector<std::uint64_t> edge_counts) {
  if (q == 0) throw Error(ErrorCode::ZeroQ, "estimate needs at least one class");
  if (class_sizes.size() != q || edge_counts.size() != q * q) {
    throw Error(ErrorCode::ShapeMismatch, "count arrays do not match " + std::to_string(q) + " classes");
  }
  EstimateResult out;
  out.classes = q;
  for (std::uint64_t s : class_sizes) out.nodes += s;
  out.alpha_hat.resize(q);
  out.pair_counts.resize(q * q);
  out.pi_hat.resize(q * q);
  for (std::size_t a = 0; a < q; ++a) {
    out.alpha_hat[a] = out.nodes == 0 ? 0.0
                                      : static_cast<double>(class_sizes[a]) / static_cast<double>(out.nodes);
    for (std::size_t b = 0; b < q; ++b) {
      const std::uint64_t na = class_sizes[a];
      const std::uint64_t pairs = a != b ? na * class_sizes[b] : na == 0 ? 0 : na * (na - 1) / 2;
      out.pair_counts[a * q + b] = pairs;
      if (pairs > 0) {
        out.pi_hat[a * q + b] = static_cast<double>(edge_counts[a * q + b]) / static_cast<double>(pairs);
      }
    }
  }
  out.class_sizes = std::move(class_sizes);
  out.edge_counts = std::move(edge_counts);
  return out;
}

BlockEdgeCounter::BlockEdgeCounter(std::span<const ClassId> labels, std::size_t q)
    : labels_(labels), q_(q), raw_(q * q, 0) {
  if (q == 0) throw Error(ErrorCode::ZeroQ, "counter needs at least one class");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= q) {
      throw Error(ErrorCode::LabelOutOfRange, "node " + std::to_string(i) + " has label " +
                                                  std::to_string(labels[i] + 1) + " > " + std::to_string(q));
    }
  }
}

void BlockEdgeCounter::begin_block(std::span<const NodeId> rows, std::span<const NodeId> cols, bool /*diag*/) {
  rows_ = rows;
  const std::size_t words = (cols.size() + 63) / 64;
  masks_.assign(words * q_, 0);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    masks_[(k / 64) * q_ + labels_[cols[k]]] |= std::uint64_t{1} << (k % 64);
  }
}

void BlockEdgeCounter::packed_row(std::size_t a, std::size_t first_word,
                                  std::span<const std::uint64_t> bits) noexcept {
  std::uint64_t* row = raw_.data() + labels_[rows_[a]] * q_;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] == 0) continue;
    const std::uint64_t* mask = masks_.data() + (first_word + j) * q_;
    for (std::size_t c = 0; c < q_; ++c) row[c] += static_cast<std::uint64_t>(std::popcount(bits[j] & mask[c]));
  }
}

std::vector<std::uint64_t> BlockEdgeCounter::counts() const {
  std::vector<std::uint64_t> out(q_ * q_);
  for (std::size_t a = 0; a < q_; ++a) {
    for (std::size_t b = 0; b < q_; ++b) {
      out[a * q_ + b] = a == b ? raw_[a * q_ + a] : raw_[a * q_ + b] + raw_[b * q_ + a];
    }
  }
  return out;
}

std::vector<std::uint64_t> BlockEdgeCounter::class_sizes() const {
  std::vector<std::uint64_t> sizes(q_, 0);
  for (ClassId c : labels_) ++sizes[c];
  return sizes;
}

EstimateResult estimate(const Graph& g, const LabelVector& z, std::size_t q) {
  if (z.size() != g.nodes()) {
    throw Error(ErrorCode::LengthMismatch, "graph has " + std::to_string(g.nodes()) + " nodes but " +
                                               std::to_string(z.size()) + " labels were given");
  }
  BlockEdgeCounter counter(z.labels(), q);
  g.for_each_edge([&](NodeId u, NodeId v) { counter.edge(u, v); });
  return estimate_from_counts(q, counter.class_sizes(), counter.counts());
}

LgEstimate estimate_via_lg(const Graph& g, std::size_t q) {
  LgResult lg = lg_partition(degree_profile(g), q);
  EstimateResult est = estimate(g, lg.labels, q);
  return {std::move(lg), std::move(est)};
}

}  // namespace lgsbm
