#include "lgsbm/sampler.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "lgsbm/error.hpp"

namespace lgsbm {

LabelVector sample_labels(const ModelParams& p, std::size_t n, Seed seed) {
  std::vector<double> cumulative(p.blocks());
  double acc = 0.0;
  for (std::size_t q = 0; q < p.blocks(); ++q) {
    acc += p.alpha(q);
    cumulative[q] = acc;
  }
  Rng rng(seed);
  std::vector<ClassId> labels(n);
  const auto last = static_cast<ClassId>(p.blocks() - 1);
  for (auto& label : labels) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    label = it == cumulative.end() ? last : static_cast<ClassId>(it - cumulative.begin());
  }
  return LabelVector(std::move(labels), p.blocks());
}

namespace detail {

void check_sampler_inputs(const ModelParams& p, const LabelVector& z) {
  if (z.classes() != p.blocks()) {
    throw Error(ErrorCode::ShapeMismatch, "labels have " + std::to_string(z.classes()) +
                                             " classes but the model has " + std::to_string(p.blocks()));
  }
  if (z.size() > std::numeric_limits<NodeId>::max()) {
    throw Error(ErrorCode::ParamOutOfRange, "node count exceeds the 32-bit node id range");
  }
}

}  // namespace detail

namespace {

struct EdgeCollector {
  std::vector<Edge> edges;
  void edge(NodeId u, NodeId v) { edges.push_back(u < v ? Edge{u, v} : Edge{v, u}); }
};

/// Degree accumulation. Packed rows add their popcount to the row node and
/// feed a bit-sliced vertical counter per column word, so column degrees
/// cost a few word operations per 64 pairs instead of one per edge.
class DegreeAccumulator {
 public:
  explicit DegreeAccumulator(std::size_t n) : degrees_(n, 0) {}

  void edge(NodeId u, NodeId v) {
    ++degrees_[u];
    ++degrees_[v];
  }

  void begin_block(std::span<const NodeId> rows, std::span<const NodeId> cols, bool /*diag*/) {
    rows_ = rows;
    cols_ = cols;
    levels_ = static_cast<std::size_t>(std::bit_width(rows.size()));
    planes_.assign(((cols.size() + 63) / 64) * levels_, 0);
  }

  void packed_row(std::size_t a, std::size_t first_word, std::span<const std::uint64_t> bits) {
    std::uint32_t row_degree = 0;
    for (std::size_t j = 0; j < bits.size(); ++j) {
      std::uint64_t carry = bits[j];
      row_degree += static_cast<std::uint32_t>(std::popcount(carry));
      std::uint64_t* plane = planes_.data() + (first_word + j) * levels_;
      for (std::size_t k = 0; carry != 0; ++k) {
        const std::uint64_t next = plane[k] & carry;
        plane[k] ^= carry;
        carry = next;
      }
    }
    degrees_[rows_[a]] += row_degree;
  }

  void end_block() {
    const std::size_t words = planes_.size() / std::max<std::size_t>(levels_, 1);
    for (std::size_t w = 0; w < words; ++w) {
      for (std::size_t k = 0; k < levels_; ++k) {
        std::uint64_t word = planes_[w * levels_ + k];
        while (word != 0) {
          degrees_[cols_[w * 64 + static_cast<std::size_t>(std::countr_zero(word))]] += std::uint32_t{1} << k;
          word &= word - 1;
        }
      }
    }
  }

  std::vector<std::uint32_t> take() { return std::move(degrees_); }

 private:
  std::vector<std::uint32_t> degrees_;
  std::span<const NodeId> rows_;
  std::span<const NodeId> cols_;
  std::size_t levels_ = 0;
  std::vector<std::uint64_t> planes_;  // word-major: planes_[w * levels_ + k] is bit k of the counts
};

static_assert(PackedRowSink<DegreeAccumulator>);
static_assert(!PackedRowSink<EdgeCollector>);

}  // namespace

Graph sample_graph(const ModelParams& p, const LabelVector& z, Seed seed) {
  EdgeCollector sink;
  stream_graph(p, z, seed, sink);
  return Graph::from_trusted_edges(z.size(), std::move(sink.edges));
}

std::vector<std::uint32_t> sample_degrees(const ModelParams& p, const LabelVector& z, Seed seed) {
  DegreeAccumulator sink(z.size());
  stream_graph(p, z, seed, sink);
  return sink.take();
}

}  // namespace lgsbm
