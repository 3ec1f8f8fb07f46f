#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lgsbm/graph.hpp"
#include "lgsbm/lg_classify.hpp"
#include "lgsbm/model.hpp"

namespace lgsbm {

/// Plug-in estimates of (alpha, pi) for one partition. Matrices are Q x Q,
/// row-major. Counting is exact; division happens once, at the end.
struct EstimateResult {
  std::size_t classes = 0;
  std::size_t nodes = 0;
  std::vector<std::uint64_t> class_sizes;  // N_q
  std::vector<double> alpha_hat;           // N_q / n
  std::vector<std::optional<double>> pi_hat;  // absent where N_qr == 0
  std::vector<std::uint64_t> pair_counts;  // N_qq = N_q(N_q-1)/2, N_qr = N_q N_r
  std::vector<std::uint64_t> edge_counts;  // observed edges in block pair (q, r)

  std::optional<double> pi(std::size_t q, std::size_t r) const { return pi_hat[q * classes + r]; }
  std::uint64_t pairs(std::size_t q, std::size_t r) const { return pair_counts[q * classes + r]; }
  std::uint64_t edges(std::size_t q, std::size_t r) const { return edge_counts[q * classes + r]; }
};

/// Finishes an estimate from class sizes and symmetric block edge counts.
EstimateResult estimate_from_counts(std::size_t q, std::vector<std::uint64_t> class_sizes,
                                    std::vector<std::uint64_t> edge_counts);

/// Counts edges per block pair under a fixed labeling. Works on any edge
/// stream, including the packed rows of the sampler, where it costs one
/// masked popcount per class and 64 pairs.
class BlockEdgeCounter {
 public:
  /// Throws LabelOutOfRange if some label >= q.
  BlockEdgeCounter(std::span<const ClassId> labels, std::size_t q);

  void edge(NodeId u, NodeId v) noexcept { ++raw_[labels_[u] * q_ + labels_[v]]; }

  void begin_block(std::span<const NodeId> rows, std::span<const NodeId> cols, bool diag);
  void packed_row(std::size_t a, std::size_t first_word, std::span<const std::uint64_t> bits) noexcept;
  void end_block() noexcept {}

  /// Symmetric Q x Q edge counts.
  std::vector<std::uint64_t> counts() const;
  std::vector<std::uint64_t> class_sizes() const;

 private:
  std::span<const ClassId> labels_;
  std::size_t q_;
  std::vector<std::uint64_t> raw_;
  std::span<const NodeId> rows_;
  std::vector<std::uint64_t> masks_;  // word-major: masks_[w * q_ + c] marks columns of class c
};

/// alpha_hat_q = N_q / n and pi_hat_qr = C_qr / N_qr in one pass over the
/// edges. Throws LengthMismatch if z.size() != g.nodes() and LabelOutOfRange
/// if some label >= q.
EstimateResult estimate(const Graph& g, const LabelVector& z, std::size_t q);

struct LgEstimate {
  LgResult partition;
  EstimateResult estimate;
};

/// Plug-in estimates on the Largest Gaps partition with q classes.
LgEstimate estimate_via_lg(const Graph& g, std::size_t q);

}  // namespace lgsbm
