#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

namespace lgsbm {

/// One evaluated bound. `log_value` is exact even where `value` overflows
/// to infinity or underflows to zero; `value` may exceed 1.
struct BoundReport {
  std::string_view name;
  double n = 0.0;
  std::optional<double> t;
  std::optional<double> delta;
  std::optional<double> alpha0;
  std::optional<std::size_t> classes;
  double log_value = 0.0;
  double value = 0.0;

  double clamped() const noexcept { return value < 1.0 ? value : 1.0; }
};

/// 2 exp(-2 n t^2). Throws NonpositiveT unless t > 0, ParamOutOfRange unless n >= 1.
BoundReport hoeffding_bound(double n, double t);

/// 2 n exp(-n delta^2 / 8) + Q (1 - alpha0)^(n+1). Throws ParamOutOfRange
/// unless n >= 1, 0 < delta <= 1, 0 < alpha0 <= 1 and Q >= 1.
BoundReport error_bound(double n, double delta, double alpha0, std::size_t q);

/// 2 n exp(-2 n t^2), a bound on P(d_n > t).
BoundReport spreading_bound(double n, double t);

enum class EstimationForm {
  /// exponent -n^2 t^2 (alpha0^2 - n^(-1/4))
  Expanded,
  /// exponent -n^(7/4) t^2 (n^(1/4) alpha0^2 - 1)
  Factored,
};

/// 2Q^2 (exp(-E) + 4 exp(-sqrt(n)/2)) + 2Q exp(-2 n t^2)
///   + 2 n exp(-n delta^2 / 8) + Q (1 - alpha0)^n,
/// with E from `form`. Throws as error_bound plus NonpositiveT.
BoundReport estimation_bound(double n, double t, double delta, double alpha0, std::size_t q,
                             EstimationForm form = EstimationForm::Expanded);

/// 4 exp(-n t^2 / 2) for |XY/n^2 - pq| with independent binomials.
BoundReport product_concentration_bound(double n, double t);

/// 4 exp(-2 n t^2) for the same-class pair count X(X-1)/(2n^2). Throws
/// TOutOfRange if t > 1/4.
BoundReport pair_count_bound(double n, double t);

/// Smallest integer n in [lo, hi] with f(n) < level, scanning upward.
std::optional<std::uint64_t> first_below(const std::function<double(double)>& f, std::uint64_t lo,
                                         std::uint64_t hi, double level);

}  // namespace lgsbm
