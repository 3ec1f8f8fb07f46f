#include "lgsbm/lg_classify.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lgsbm/error.hpp"

namespace lgsbm {

namespace {

/// Indices 0..keys.size()-1 ordered by (key, index). Counting sort when the
/// key range is comparable to the input size, comparison sort otherwise.
std::vector<std::size_t> order_by_key(std::span<const std::uint64_t> keys, std::uint64_t max_key) {
  const std::size_t n = keys.size();
  std::vector<std::size_t> idx(n);
  if (max_key <= 4 * static_cast<std::uint64_t>(n) + 1024) {
    std::vector<std::size_t> start(static_cast<std::size_t>(max_key) + 2, 0);
    for (std::uint64_t k : keys) ++start[static_cast<std::size_t>(k) + 1];
    std::partial_sum(start.begin(), start.end(), start.begin());
    for (std::size_t i = 0; i < n; ++i) idx[start[static_cast<std::size_t>(keys[i])]++] = i;
  } else {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return keys[a] != keys[b] ? keys[a] < keys[b] : a < b; });
  }
  return idx;
}

long double ratio(__int128 num, __int128 den) {
  return static_cast<long double>(num) / static_cast<long double>(den);
}

}  // namespace

DegreeProfile DegreeProfile::from_counts(std::vector<std::uint32_t> counts, std::uint64_t denominator) {
  if (denominator == 0) throw Error(ErrorCode::ParamOutOfRange, "denominator must be positive");
  if (counts.empty()) throw Error(ErrorCode::ParamOutOfRange, "profile needs at least one value");
  std::vector<std::uint64_t> keys(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > denominator) {
      throw Error(ErrorCode::DegreeOutOfRange, "value " + std::to_string(i) + " is " + std::to_string(counts[i]) +
                                                   " > " + std::to_string(denominator));
    }
    keys[i] = counts[i];
  }
  const auto idx = order_by_key(keys, denominator);
  DegreeProfile p;
  p.counts_ = std::move(counts);
  p.denominator_ = denominator;
  p.order_.assign(idx.begin(), idx.end());
  return p;
}

std::vector<double> DegreeProfile::values() const {
  std::vector<double> t(size());
  for (std::size_t i = 0; i < size(); ++i) t[i] = value(i);
  return t;
}

DegreeProfile degree_profile(const Graph& g) {
  if (g.nodes() < 2) throw Error(ErrorCode::TooFewNodes, "degree profile needs n >= 2");
  return DegreeProfile::from_counts(g.degrees(), g.nodes() - 1);
}

DegreeProfile degree_profile_from_degrees(std::size_t n, std::span<const std::uint32_t> d) {
  if (n < 2) throw Error(ErrorCode::TooFewNodes, "degree profile needs n >= 2");
  if (d.size() != n) {
    throw Error(ErrorCode::LengthMismatch,
                "expected " + std::to_string(n) + " degrees, got " + std::to_string(d.size()));
  }
  return DegreeProfile::from_counts({d.begin(), d.end()}, n - 1);
}

LargestGaps::LargestGaps(const DegreeProfile& profile)
    : order_(profile.order().begin(), profile.order().end()), denominator_(profile.denominator()) {
  const std::size_t n = profile.size();
  if (n < 2) throw Error(ErrorCode::TooFewNodes, "largest gaps needs at least 2 values");
  sorted_.resize(n);
  for (std::size_t k = 0; k < n; ++k) sorted_[k] = profile.sorted_count(k);

  // Rank gap positions by decreasing length, then increasing position.
  std::vector<std::uint64_t> keys(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) keys[k] = denominator_ - (sorted_[k + 1] - sorted_[k]);
  ranked_ = order_by_key(keys, denominator_);

  gaps_desc_.resize(n - 1);
  const auto den = static_cast<double>(denominator_);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t pos = ranked_[k];
    gaps_desc_[k] = static_cast<double>(sorted_[pos + 1] - sorted_[pos]) / den;
  }
}

LgResult LargestGaps::partition(std::size_t q) const {
  const std::size_t n = sorted_.size();
  if (q == 0 || q > n) {
    throw Error(ErrorCode::QTooLarge,
                "class count " + std::to_string(q) + " outside [1, " + std::to_string(n) + "]");
  }
  std::vector<std::size_t> cuts(ranked_.begin(), ranked_.begin() + static_cast<std::ptrdiff_t>(q - 1));
  std::sort(cuts.begin(), cuts.end());

  LgResult out;
  out.classes = q;
  out.gaps_desc = gaps_desc_;
  out.boundaries.reserve(q - 1);
  for (std::size_t k : cuts) out.boundaries.push_back(k + 1);

  std::vector<ClassId> labels(n);
  std::vector<std::uint64_t> sums(q, 0);
  std::vector<std::uint64_t> sizes(q, 0);
  ClassId cls = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (cls + 1 < q && s == out.boundaries[cls]) ++cls;
    labels[order_[s]] = cls;
    sums[cls] += sorted_[s];
    ++sizes[cls];
  }
  out.labels = LabelVector(std::move(labels), q);

  const auto den = static_cast<__int128>(denominator_);
  out.class_means.resize(q);
  for (std::size_t c = 0; c < q; ++c) {
    out.class_means[c] = static_cast<double>(ratio(sums[c], static_cast<__int128>(sizes[c]) * den));
  }
  for (std::size_t c = 0; c + 1 < q; ++c) {
    const std::size_t k = cuts[c];
    const std::uint32_t gap = sorted_[k + 1] - sorted_[k];
    if (gap == 0) out.degenerate_separation = true;
    const double selected = static_cast<double>(gap) / static_cast<double>(denominator_);
    const __int128 num = static_cast<__int128>(sums[c + 1]) * sizes[c] - static_cast<__int128>(sums[c]) * sizes[c + 1];
    const double spanning = static_cast<double>(ratio(num, static_cast<__int128>(sizes[c]) * sizes[c + 1] * den));
    out.boundary_gaps.push_back(selected);
    // The class-mean interval contains the selected gap; rounding must not say otherwise.
    out.spanning_mean_gaps.push_back(std::max(spanning, selected));
  }
  out.mean_gaps_desc = out.spanning_mean_gaps;
  std::sort(out.mean_gaps_desc.begin(), out.mean_gaps_desc.end(), std::greater<>());
  return out;
}

LgResult lg_partition(const DegreeProfile& profile, std::size_t q) { return LargestGaps(profile).partition(q); }

std::vector<double> gap_sequence(const DegreeProfile& profile) { return LargestGaps(profile).gaps_desc(); }

std::vector<double> theoretical_gaps(const ModelParams& p, double tolerance) {
  const auto check = check_assumption_a(p, tolerance);
  if (!check.holds) {
    const auto [a, b] = check.collisions.front();
    throw Error(ErrorCode::AssumptionAViolated, "classes " + std::to_string(a + 1) + " and " +
                                                    std::to_string(b + 1) + " share a conditional mean degree");
  }
  auto pibar = mean_degrees(p).pibar;
  std::sort(pibar.begin(), pibar.end());
  std::vector<double> gaps;
  for (std::size_t k = 0; k + 1 < pibar.size(); ++k) gaps.push_back(pibar[k + 1] - pibar[k]);
  std::sort(gaps.begin(), gaps.end(), std::greater<>());
  return gaps;
}

}  // namespace lgsbm
