#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lgsbm/lg_classify.hpp"

namespace lgsbm {

inline constexpr double kDefaultBeta = 0.5;
inline constexpr std::size_t kDefaultQMax = 30;

/// One evaluation of f_Q = sum_{q<Q} (H_q - G_q) + 1 / (n^{(1-beta)/2} G_{Q-1}).
struct Criterion {
  std::size_t classes = 0;
  double sum_hg = 0.0;
  double penalty = 0.0;  // +inf when G_{Q-1} == 0
  double f = 0.0;
};

/// Throws QTooLarge unless 2 <= q <= n, BetaOutOfRange unless 0 < beta < 1.
Criterion f_criterion(const DegreeProfile& profile, std::size_t q, double beta = kDefaultBeta);
Criterion f_criterion(const LargestGaps& gaps, std::size_t q, double beta = kDefaultBeta);

struct SelectionReport {
  double beta = kDefaultBeta;
  std::size_t nodes = 0;
  std::vector<Criterion> candidates;  // Q = 2, ..., q_max
  std::size_t q_hat = 0;
  /// penalty_2 > 1: since sum_hg never exceeds the value range [0, 1], f_2
  /// is then dominated by its penalty. Q = 1 is never a candidate, so this
  /// is the only hint that no structure may exist.
  bool weak_structure = false;
};

/// min(n, 30).
std::size_t default_q_max(std::size_t n) noexcept;

/// Minimizes f_Q over Q in {2, ..., q_max}; ties go to the smallest Q.
/// q_max defaults to default_q_max(n). Throws QTooLarge unless 2 <= q_max <= n.
SelectionReport select_q(const DegreeProfile& profile, std::optional<std::size_t> q_max = std::nullopt,
                         double beta = kDefaultBeta);

}  // namespace lgsbm
