#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lgsbm/graph.hpp"
#include "lgsbm/model.hpp"

namespace lgsbm {

/// Normalized values T_i = counts_i / denominator for n items, with the
/// stable ascending order on (T_i, i).
///
/// Values are kept as integer numerators over a common denominator so that
/// gap comparisons, and therefore tie-breaks, are exact. For node degrees the
/// denominator is n - 1; for common-neighbor counts it is n - 2.
class DegreeProfile {
 public:
  DegreeProfile() = default;

  /// Throws DegreeOutOfRange if some count exceeds the denominator and
  /// ParamOutOfRange if the denominator is zero or counts is empty.
  static DegreeProfile from_counts(std::vector<std::uint32_t> counts, std::uint64_t denominator);

  std::size_t size() const noexcept { return counts_.size(); }
  std::uint64_t denominator() const noexcept { return denominator_; }
  std::span<const std::uint32_t> counts() const noexcept { return counts_; }
  double value(std::size_t i) const noexcept {
    return static_cast<double>(counts_[i]) / static_cast<double>(denominator_);
  }
  std::vector<double> values() const;

  /// order()[k] is the index of the k-th smallest value.
  std::span<const NodeId> order() const noexcept { return order_; }
  std::uint32_t sorted_count(std::size_t k) const noexcept { return counts_[order_[k]]; }

 private:
  std::vector<std::uint32_t> counts_;
  std::uint64_t denominator_ = 1;
  std::vector<NodeId> order_;
};

/// T_i = D_i / (n - 1) from one pass over the edges. Throws TooFewNodes if n < 2.
DegreeProfile degree_profile(const Graph& g);

/// Same profile from a degree sequence alone. Throws DegreeOutOfRange if
/// some d_i > n - 1, LengthMismatch if d.size() != n.
DegreeProfile degree_profile_from_degrees(std::size_t n, std::span<const std::uint32_t> d);

/// Output of the Largest Gaps partition for one class count.
struct LgResult {
  std::size_t classes = 0;
  /// Class k holds the k-th interval of the ascending order; classes are
  /// numbered by increasing normalized degree.
  LabelVector labels;
  /// i_1 < ... < i_{q-1}: class k covers sorted positions (i_{k-1}, i_k],
  /// 1-based, with i_0 = 0 and i_q = n.
  std::vector<std::size_t> boundaries;
  /// All n - 1 consecutive gaps, nonincreasing.
  std::vector<double> gaps_desc;
  /// m_k, mean normalized value of predicted class k.
  std::vector<double> class_means;
  /// Gaps between consecutive class means, nonincreasing.
  std::vector<double> mean_gaps_desc;
  /// Per boundary, left to right: the selected gap and the class-mean gap
  /// that spans it (always at least as long).
  std::vector<double> boundary_gaps;
  std::vector<double> spanning_mean_gaps;
  /// A zero-length gap had to be selected (fewer than q - 1 positive gaps).
  bool degenerate_separation = false;
};

/// Shares the sort and gap ranking of one profile across many class counts.
class LargestGaps {
 public:
  /// Throws TooFewNodes if the profile has fewer than 2 values.
  explicit LargestGaps(const DegreeProfile& profile);

  /// Cuts at the q - 1 largest consecutive gaps; equal gaps prefer the
  /// smaller left index. Throws QTooLarge unless 1 <= q <= n.
  LgResult partition(std::size_t q) const;

  std::size_t size() const noexcept { return sorted_.size(); }
  /// G_1 >= ... >= G_{n-1}.
  const std::vector<double>& gaps_desc() const noexcept { return gaps_desc_; }

 private:
  std::vector<NodeId> order_;
  std::uint64_t denominator_;
  std::vector<std::uint32_t> sorted_;  // counts in ascending order
  std::vector<std::size_t> ranked_;    // gap positions by (gap desc, position asc)
  std::vector<double> gaps_desc_;
};

LgResult lg_partition(const DegreeProfile& profile, std::size_t q);

/// All n - 1 consecutive gaps of the sorted values, nonincreasing.
std::vector<double> gap_sequence(const DegreeProfile& profile);

/// Consecutive differences of the sorted conditional mean degrees,
/// nonincreasing, length Q - 1 (empty when Q == 1). Throws
/// AssumptionAViolated when two means are within `tolerance`.
std::vector<double> theoretical_gaps(const ModelParams& p, double tolerance = 1e-12);

}  // namespace lgsbm
