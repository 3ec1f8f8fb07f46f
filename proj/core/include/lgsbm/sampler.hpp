#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "lgsbm/graph.hpp"
#include "lgsbm/model.hpp"
#include "lgsbm/rng.hpp"

namespace lgsbm {

/// Block pairs whose connection probability is at least this value are
/// sampled 64 pairs at a time as packed Bernoulli words; sparser pairs use
/// geometric skipping. Both are exact and cost O(pairs/64 + edges) and
/// O(edges) respectively.
inline constexpr double kPackedSamplingThreshold = 1.0 / 32.0;

/// Anything that accepts the sampled edge stream.
template <class S>
concept EdgeSink = requires(S& s, NodeId u, NodeId v) { s.edge(u, v); };

/// Optional fast path: a sink that consumes packed rows of a block pair.
/// begin_block/end_block bracket every block pair sampled in packed mode;
/// packed_row(a, w, bits) reports that row node rows[a] is adjacent to
/// cols[64*(w+j)+b] for every set bit b of bits[j].
template <class S>
concept PackedRowSink =
    EdgeSink<S> && requires(S& s, std::span<const NodeId> ids, bool diag, std::size_t k,
                            std::span<const std::uint64_t> bits) {
      s.begin_block(ids, ids, diag);
      s.packed_row(k, k, bits);
      s.end_block();
    };

/// n i.i.d. draws from the categorical distribution alpha.
LabelVector sample_labels(const ModelParams& p, std::size_t n, Seed seed);

namespace detail {

void check_sampler_inputs(const ModelParams& p, const LabelVector& z);

/// p * 2^64 as an integer; exact for p in [2^-5, 1).
inline std::uint64_t probability_threshold(double p) noexcept {
  return static_cast<std::uint64_t>(std::ldexp(p, 64));
}

/// 64 independent Bernoulli lanes restricted to `lanes`. Lane k is set iff a
/// uniform U_k, revealed one bit at a time, falls below threshold / 2^64.
/// Every undecided lane consumes the same random word, so the expected cost
/// is about log2(64) + 2 draws per word.
inline std::uint64_t bernoulli_word(Rng& rng, std::uint64_t threshold, std::uint64_t lanes) noexcept {
  std::uint64_t ones = 0;
  std::uint64_t undecided = lanes;
  const int lowest = std::countr_zero(threshold);
  for (int bit = 63; undecided != 0 && bit >= lowest; --bit) {
    const std::uint64_t r = rng();
    if ((threshold >> bit) & 1U) {
      ones |= undecided & ~r;
      undecided &= r;
    } else {
      undecided &= ~r;
    }
  }
  // Lanes still tied with the threshold after its last set bit are >= p.
  return ones;
}

template <class Sink>
void sample_block_packed(Rng& rng, double prob, std::span<const NodeId> rows, std::span<const NodeId> cols,
                         bool diag, Sink& sink, std::vector<std::uint64_t>& buf) {
  const std::size_t ncols = cols.size();
  const std::size_t words = (ncols + 63) / 64;
  const bool certain = prob >= 1.0;
  const std::uint64_t threshold = certain ? 0 : probability_threshold(prob);
  const std::uint64_t tail_mask = (ncols % 64) != 0 ? (std::uint64_t{1} << (ncols % 64)) - 1 : ~std::uint64_t{0};
  const std::size_t nrows = diag ? rows.size() - 1 : rows.size();
  buf.resize(words);

  if constexpr (PackedRowSink<Sink>) sink.begin_block(rows, cols, diag);
  for (std::size_t a = 0; a < nrows; ++a) {
    const std::size_t start = diag ? a + 1 : 0;
    const std::size_t first = start / 64;
    for (std::size_t w = first; w < words; ++w) {
      std::uint64_t lanes = ~std::uint64_t{0};
      if (w == first) lanes &= ~std::uint64_t{0} << (start % 64);
      if (w + 1 == words) lanes &= tail_mask;
      buf[w - first] = certain ? lanes : bernoulli_word(rng, threshold, lanes);
    }
    const std::span<const std::uint64_t> bits(buf.data(), words - first);
    if constexpr (PackedRowSink<Sink>) {
      sink.packed_row(a, first, bits);
    } else {
      for (std::size_t j = 0; j < bits.size(); ++j) {
        std::uint64_t word = bits[j];
        const std::size_t base = (first + j) * 64;
        while (word != 0) {
          sink.edge(rows[a], cols[base + static_cast<std::size_t>(std::countr_zero(word))]);
          word &= word - 1;
        }
      }
    }
  }
  if constexpr (PackedRowSink<Sink>) sink.end_block();
}

/// Geometric skipping over the pairs of one block pair in row-major order.
/// Gaps between successive edges are Geometric(prob) on {0,1,...}.
template <class Sink>
void sample_block_skipping(Rng& rng, double prob, std::span<const NodeId> rows, std::span<const NodeId> cols,
                           bool diag, Sink& sink) {
  const double log_fail = std::log1p(-prob);
  const std::size_t ncols = cols.size();
  const std::size_t nrows = diag ? rows.size() - 1 : rows.size();
  constexpr double kCap = 0x1.0p62;
  std::size_t a = 0;
  std::size_t b = diag ? 1 : 0;
  for (;;) {
    const double s = std::floor(std::log(rng.uniform_pos()) / log_fail);
    std::uint64_t skip = s < kCap ? static_cast<std::uint64_t>(s) : static_cast<std::uint64_t>(kCap);
    for (;;) {
      const std::size_t avail = ncols - b;
      if (skip < avail) {
        b += static_cast<std::size_t>(skip);
        break;
      }
      skip -= avail;
      if (++a >= nrows) return;
      b = diag ? a + 1 : 0;
    }
    sink.edge(rows[a], cols[b]);
    ++b;
  }
}

}  // namespace detail

/// Streams the edges of one graph from G(n, pi, alpha) given labels z.
///
/// Block pairs (q, r), q <= r, are visited in lexicographic order with a
/// single generator seeded from `seed`, so the edge set is a deterministic
/// function of (p, z, seed) and independent of the sink. Expected time is
/// O(n + m) for sparse block pairs and O(pairs / 64 + m) for dense ones.
template <EdgeSink Sink>
void stream_graph(const ModelParams& p, const LabelVector& z, Seed seed, Sink& sink) {
  detail::check_sampler_inputs(p, z);
  const auto members = z.members();
  Rng rng(seed);
  std::vector<std::uint64_t> buf;
  for (std::size_t q = 0; q < p.blocks(); ++q) {
    for (std::size_t r = q; r < p.blocks(); ++r) {
      const std::span<const NodeId> rows = members[q];
      const std::span<const NodeId> cols = members[r];
      const bool diag = q == r;
      if (rows.empty() || cols.empty() || (diag && rows.size() < 2)) continue;
      const double prob = p.pi(q, r);
      if (prob <= 0.0) continue;
      if (prob >= kPackedSamplingThreshold) {
        detail::sample_block_packed(rng, prob, rows, cols, diag, sink, buf);
      } else {
        detail::sample_block_skipping(rng, prob, rows, cols, diag, sink);
      }
    }
  }
}

/// Materializes the graph streamed by stream_graph.
Graph sample_graph(const ModelParams& p, const LabelVector& z, Seed seed);

/// Degrees of exactly the graph sample_graph(p, z, seed) would return, in
/// O(n) memory.
std::vector<std::uint32_t> sample_degrees(const ModelParams& p, const LabelVector& z, Seed seed);

}  // namespace lgsbm
