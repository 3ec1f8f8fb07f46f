#include "lgsbm/model_select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lgsbm/error.hpp"

namespace lgsbm {

namespace {

void check_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw Error(ErrorCode::BetaOutOfRange, "beta must lie in (0,1), got " + std::to_string(beta));
  }
}

}  // namespace

Criterion f_criterion(const LargestGaps& gaps, std::size_t q, double beta) {
  check_beta(beta);
  const std::size_t n = gaps.size();
  if (q < 2 || q > n) {
    throw Error(ErrorCode::QTooLarge, "candidate " + std::to_string(q) + " outside [2, " + std::to_string(n) + "]");
  }
  const LgResult lg = gaps.partition(q);
  Criterion c;
  c.classes = q;
  // The q-1 largest global gaps are exactly the selected boundary gaps, so
  // the pairing of H with G does not affect the sum.
  c.sum_hg = std::accumulate(lg.spanning_mean_gaps.begin(), lg.spanning_mean_gaps.end(), 0.0) -
             std::accumulate(lg.boundary_gaps.begin(), lg.boundary_gaps.end(), 0.0);
  c.sum_hg = std::max(c.sum_hg, 0.0);
  const double g_last = gaps.gaps_desc()[q - 2];
  c.penalty = g_last > 0.0 ? 1.0 / (std::pow(static_cast<double>(n), (1.0 - beta) / 2.0) * g_last)
                           : std::numeric_limits<double>::infinity();
  c.f = c.sum_hg + c.penalty;
  return c;
}

Criterion f_criterion(const DegreeProfile& profile, std::size_t q, double beta) {
  check_beta(beta);
  return f_criterion(LargestGaps(profile), q, beta);
}

std::size_t default_q_max(std::size_t n) noexcept { return std::min(n, kDefaultQMax); }

SelectionReport select_q(const DegreeProfile& profile, std::optional<std::size_t> q_max, double beta) {
  check_beta(beta);
  const LargestGaps gaps(profile);
  const std::size_t n = gaps.size();
  const std::size_t cap = q_max.value_or(default_q_max(n));
  if (cap < 2 || cap > n) {
    throw Error(ErrorCode::QTooLarge, "q_max " + std::to_string(cap) + " outside [2, " + std::to_string(n) + "]");
  }
  SelectionReport report;
  report.beta = beta;
  report.nodes = n;
  for (std::size_t q = 2; q <= cap; ++q) report.candidates.push_back(f_criterion(gaps, q, beta));
  const auto best = std::min_element(report.candidates.begin(), report.candidates.end(),
                                     [](const Criterion& a, const Criterion& b) { return a.f < b.f; });
  report.q_hat = best->classes;
  report.weak_structure = report.candidates.front().penalty > 1.0;
  return report;
}

}  // namespace lgsbm
