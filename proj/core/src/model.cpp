#include "lgsbm/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lgsbm/error.hpp"

namespace lgsbm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroQ: return "ZeroQ";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonStochasticAlpha: return "NonStochasticAlpha";
    case ErrorCode::AsymmetricPi: return "AsymmetricPi";
    case ErrorCode::OutOfRangePi: return "OutOfRangePi";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::TooFewNodes: return "TooFewNodes";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::QTooLarge: return "QTooLarge";
    case ErrorCode::AssumptionAViolated: return "AssumptionAViolated";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::BetaOutOfRange: return "BetaOutOfRange";
    case ErrorCode::GroupTooSmall: return "GroupTooSmall";
    case ErrorCode::NonpositiveT: return "NonpositiveT";
    case ErrorCode::TOutOfRange: return "TOutOfRange";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

ModelParams validate_params(std::size_t q, std::span<const double> alpha,
                            const std::vector<std::vector<double>>& pi) {
  if (q == 0) throw Error(ErrorCode::ZeroQ, "block count must be at least 1");
  if (alpha.size() != q) {
    throw Error(ErrorCode::ShapeMismatch,
                "alpha has " + std::to_string(alpha.size()) + " entries, expected " + std::to_string(q));
  }
  if (pi.size() != q) throw Error(ErrorCode::ShapeMismatch, "pi must have Q rows");
  for (const auto& row : pi) {
    if (row.size() != q) throw Error(ErrorCode::ShapeMismatch, "pi must be Q x Q");
  }

  double sum = 0.0;
  for (std::size_t k = 0; k < q; ++k) {
    const double a = alpha[k];
    if (!(a > 0.0 && a <= 1.0)) {
      throw Error(ErrorCode::NonStochasticAlpha, "alpha[" + std::to_string(k) + "] not in (0,1]");
    }
    sum += a;
  }
  if (std::abs(sum - 1.0) > ModelParams::kAlphaTolerance) {
    throw Error(ErrorCode::NonStochasticAlpha, "alpha sums to " + std::to_string(sum));
  }

  std::vector<double> flat(q * q);
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      const double v = pi[a][b];
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::OutOfRangePi,
                    "pi[" + std::to_string(a) + "][" + std::to_string(b) + "] not in [0,1]");
      }
      if (v != pi[b][a]) {
        throw Error(ErrorCode::AsymmetricPi,
                    "pi[" + std::to_string(a) + "][" + std::to_string(b) + "] != pi[" + std::to_string(b) +
                        "][" + std::to_string(a) + "]");
      }
      flat[a * q + b] = v;
    }
  }
  return ModelParams({alpha.begin(), alpha.end()}, std::move(flat));
}

MeanDegrees mean_degrees(const ModelParams& p) {
  const std::size_t q = p.blocks();
  MeanDegrees out;
  out.pibar.assign(q, 0.0);
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t r = 0; r < q; ++r) out.pibar[a] += p.alpha(r) * p.pi(a, r);
  }
  out.alpha0 = *std::min_element(p.alpha().begin(), p.alpha().end());
  for (std::size_t a = 0; a < q; ++a) out.connectivity += p.alpha(a) * out.pibar[a];
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = a + 1; b < q; ++b) {
      const double d = std::abs(out.pibar[a] - out.pibar[b]);
      out.delta = out.delta ? std::min(*out.delta, d) : d;
    }
  }
  return out;
}

AssumptionCheck check_assumption_a(const ModelParams& p, double tolerance) {
  const auto md = mean_degrees(p);
  AssumptionCheck out;
  for (std::size_t a = 0; a < md.pibar.size(); ++a) {
    for (std::size_t b = a + 1; b < md.pibar.size(); ++b) {
      if (!(std::abs(md.pibar[a] - md.pibar[b]) > tolerance)) out.collisions.emplace_back(a, b);
    }
  }
  out.holds = out.collisions.empty();
  return out;
}

LabelVector::LabelVector(std::vector<ClassId> labels, std::size_t classes)
    : labels_(std::move(labels)), classes_(classes) {
  if (classes_ == 0) throw Error(ErrorCode::ZeroQ, "label vector needs at least one class");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] >= classes_) {
      throw Error(ErrorCode::LabelOutOfRange, "node " + std::to_string(i) + " has label " +
                                                  std::to_string(labels_[i] + 1) + " > " +
                                                  std::to_string(classes_));
    }
  }
}

std::vector<std::size_t> LabelVector::class_sizes() const {
  std::vector<std::size_t> sizes(classes_, 0);
  for (ClassId c : labels_) ++sizes[c];
  return sizes;
}

std::vector<std::vector<NodeId>> LabelVector::members() const {
  const auto sizes = class_sizes();
  std::vector<std::vector<NodeId>> out(classes_);
  for (std::size_t c = 0; c < classes_; ++c) out[c].reserve(sizes[c]);
  for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(static_cast<NodeId>(i));
  return out;
}

}  // namespace lgsbm
