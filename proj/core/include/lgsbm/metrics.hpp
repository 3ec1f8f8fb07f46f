#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lgsbm/lg_classify.hpp"
#include "lgsbm/model.hpp"

namespace lgsbm {

/// Share of node pairs on which z and zhat disagree about "same class",
/// from the contingency table in O(n + K^2). Throws LengthMismatch on
/// different lengths and TooFewNodes if n < 2.
double global_error_rate(const LabelVector& z, const LabelVector& zhat);

/// Number of discordant pairs behind global_error_rate.
std::uint64_t discordant_pairs(const LabelVector& z, const LabelVector& zhat);

struct ClassRates {
  std::vector<std::optional<double>> intruders;  // I_q, absent if predicted class q is empty
  std::vector<std::optional<double>> missing;    // M_q, absent if true class q is empty
};

/// Per-class rates for labels already expressed in the same numbering.
/// Throws LengthMismatch, or LabelOutOfRange if a label is >= q.
ClassRates class_rates(const LabelVector& z, const LabelVector& zhat, std::size_t q);

/// Relabels zhat to maximize agreement with z: over all permutations for
/// q <= 8 (identity kept on ties), greedily above that.
LabelVector align_labels(const LabelVector& z, const LabelVector& zhat, std::size_t q);

/// d_n = max_i |T_i - pibar_{z_i}|. Throws LengthMismatch.
double spreading(const DegreeProfile& profile, const LabelVector& z, std::span<const double> pibar);

/// Relabels true classes by increasing pibar, so that they follow the same
/// convention as Largest Gaps output. Ties keep the original order.
LabelVector order_by_mean_degree(const LabelVector& z, std::span<const double> pibar);

struct MetricReport {
  double g = 0.0;
  ClassRates rates;
  bool exact = false;
  std::optional<double> spreading;
  bool empty_true_class = false;
};

/// All metrics of one replicate; spreading is filled when pibar is given.
MetricReport evaluate(const LabelVector& z, const LabelVector& zhat, std::size_t q,
                      const DegreeProfile* profile = nullptr, std::span<const double> pibar = {});

}  // namespace lgsbm
