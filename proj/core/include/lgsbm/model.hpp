#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace lgsbm {

using NodeId = std::uint32_t;
using ClassId = std::uint32_t;

/// Block proportions and connection probabilities of a stochastic block
/// model with Q blocks. Only obtainable through validation, so every live
/// instance satisfies: Q >= 1, alpha_q in (0,1] summing to 1 within 1e-12,
/// pi symmetric (exactly) with entries in [0,1].
class ModelParams {
 public:
  static constexpr double kAlphaTolerance = 1e-12;

  std::size_t blocks() const noexcept { return alpha_.size(); }
  std::span<const double> alpha() const noexcept { return alpha_; }
  double alpha(std::size_t q) const { return alpha_.at(q); }
  double pi(std::size_t q, std::size_t r) const noexcept { return pi_[q * blocks() + r]; }
  std::span<const double> pi_row(std::size_t q) const noexcept { return {pi_.data() + q * blocks(), blocks()}; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  friend ModelParams validate_params(std::size_t, std::span<const double>,
                                     const std::vector<std::vector<double>>&);
  ModelParams(std::vector<double> alpha, std::vector<double> pi) : alpha_(std::move(alpha)), pi_(std::move(pi)) {}

  std::vector<double> alpha_;
  std::vector<double> pi_;  // row-major Q x Q
};

/// Checks raw parameters and returns them as ModelParams. Never repairs:
/// alpha is not renormalized and pi is not symmetrized.
ModelParams validate_params(std::size_t q, std::span<const double> alpha,
                            const std::vector<std::vector<double>>& pi);

/// Conditional mean normalized degrees and the quantities derived from them.
struct MeanDegrees {
  std::vector<double> pibar;    // pibar_q = sum_r alpha_r pi_qr
  std::optional<double> delta;  // min_{q != r} |pibar_q - pibar_r|; absent when Q == 1
  double alpha0 = 0.0;          // min_q alpha_q
  double connectivity = 0.0;    // sum_q alpha_q pibar_q
};

MeanDegrees mean_degrees(const ModelParams& p);

/// Result of testing that all conditional mean degrees are pairwise distinct.
struct AssumptionCheck {
  bool holds = true;
  std::vector<std::pair<std::size_t, std::size_t>> collisions;  // 0-based, first < second
};

AssumptionCheck check_assumption_a(const ModelParams& p, double tolerance);

/// Class assignment of n nodes into Q classes, stored 0-based.
class LabelVector {
 public:
  LabelVector() = default;
  /// Throws LabelOutOfRange if any label >= classes, ZeroQ if classes == 0.
  LabelVector(std::vector<ClassId> labels, std::size_t classes);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t classes() const noexcept { return classes_; }
  ClassId operator[](std::size_t i) const noexcept { return labels_[i]; }
  std::span<const ClassId> labels() const noexcept { return labels_; }

  /// N_q for every class.
  std::vector<std::size_t> class_sizes() const;
  /// Node ids of every class, each list ascending.
  std::vector<std::vector<NodeId>> members() const;

  friend bool operator==(const LabelVector&, const LabelVector&) = default;

 private:
  std::vector<ClassId> labels_;
  std::size_t classes_ = 0;
};

}  // namespace lgsbm
