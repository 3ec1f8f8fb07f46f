#include "lgsbm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <string>

#include "lgsbm/error.hpp"

namespace lgsbm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(sum_k exp(x_k)), with -inf terms allowed.
double log_sum_exp(std::initializer_list<double> xs) {
  const double hi = std::max(xs);
  if (hi == kNegInf) return kNegInf;
  if (std::isinf(hi)) return hi;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - hi);
  return hi + std::log(s);
}

/// log(k (1 - a)^e), -inf when a == 1.
double log_geometric(double k, double a, double e) { return a >= 1.0 ? kNegInf : std::log(k) + e * std::log1p(-a); }

void check_n(double n) {
  if (!(n >= 1.0)) throw Error(ErrorCode::ParamOutOfRange, "n must be >= 1, got " + std::to_string(n));
}

void check_t(double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::NonpositiveT, "t must be positive, got " + std::to_string(t));
}

void check_model_args(double delta, double alpha0, std::size_t q) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw Error(ErrorCode::ParamOutOfRange, "delta must lie in (0,1], got " + std::to_string(delta));
  }
  if (!(alpha0 > 0.0 && alpha0 <= 1.0)) {
    throw Error(ErrorCode::ParamOutOfRange, "alpha0 must lie in (0,1], got " + std::to_string(alpha0));
  }
  if (q == 0) throw Error(ErrorCode::ParamOutOfRange, "Q must be >= 1");
}

BoundReport finish(std::string_view name, double n, std::optional<double> t, std::optional<double> delta,
                   std::optional<double> alpha0, std::optional<std::size_t> classes, double log_value) {
  BoundReport r;
  r.name = name;
  r.n = n;
  r.t = t;
  r.delta = delta;
  r.alpha0 = alpha0;
  r.classes = classes;
  r.log_value = log_value;
  r.value = std::exp(log_value);
  return r;
}

}  // namespace

BoundReport hoeffding_bound(double n, double t) {
  check_n(n);
  check_t(t);
  return finish("hoeffding", n, t, {}, {}, {}, std::log(2.0) - 2.0 * n * t * t);
}

BoundReport error_bound(double n, double delta, double alpha0, std::size_t q) {
  check_n(n);
  check_model_args(delta, alpha0, q);
  const double lv = log_sum_exp({std::log(2.0 * n) - n * delta * delta / 8.0,
                                 log_geometric(static_cast<double>(q), alpha0, n + 1.0)});
  return finish("error", n, {}, delta, alpha0, q, lv);
}

BoundReport spreading_bound(double n, double t) {
  check_n(n);
  check_t(t);
  return finish("spreading", n, t, {}, {}, {}, std::log(2.0 * n) - 2.0 * n * t * t);
}

BoundReport estimation_bound(double n, double t, double delta, double alpha0, std::size_t q, EstimationForm form) {
  check_n(n);
  check_t(t);
  check_model_args(delta, alpha0, q);
  const double qd = static_cast<double>(q);
  const double exponent = form == EstimationForm::Expanded
                              ? n * n * t * t * (alpha0 * alpha0 - std::pow(n, -0.25))
                              : std::pow(n, 1.75) * t * t * (std::pow(n, 0.25) * alpha0 * alpha0 - 1.0);
  const double lv = log_sum_exp({std::log(2.0 * qd * qd) - exponent,
                                 std::log(8.0 * qd * qd) - 0.5 * std::sqrt(n),
                                 std::log(2.0 * qd) - 2.0 * n * t * t,
                                 std::log(2.0 * n) - n * delta * delta / 8.0,
                                 log_geometric(qd, alpha0, n)});
  return finish(form == EstimationForm::Expanded ? "estimation" : "estimation_factored", n, t, delta, alpha0, q, lv);
}

BoundReport product_concentration_bound(double n, double t) {
  check_n(n);
  check_t(t);
  return finish("product", n, t, {}, {}, {}, std::log(4.0) - 0.5 * n * t * t);
}

BoundReport pair_count_bound(double n, double t) {
  check_n(n);
  check_t(t);
  if (t > 0.25) throw Error(ErrorCode::TOutOfRange, "t must be <= 1/4, got " + std::to_string(t));
  return finish("pair_count", n, t, {}, {}, {}, std::log(4.0) - 2.0 * n * t * t);
}

std::optional<std::uint64_t> first_below(const std::function<double(double)>& f, std::uint64_t lo,
                                         std::uint64_t hi, double level) {
  for (std::uint64_t n = lo; n <= hi; ++n) {
    if (f(static_cast<double>(n)) < level) return n;
  }
  return std::nullopt;
}

}  // namespace lgsbm
