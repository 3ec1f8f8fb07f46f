#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lgsbm/graph.hpp"
#include "lgsbm/model.hpp"

namespace lgsbm {

/// ||pi_q||^2_alpha, ||pi_r||^2_alpha and <pi_q, pi_r>_alpha with
/// <x, y>_alpha = sum_l alpha_l x_l y_l over rows of pi.
struct InnerProducts {
  double norm_q = 0.0;
  double norm_r = 0.0;
  double cross = 0.0;
};

InnerProducts alpha_inner_products(const ModelParams& p, std::size_t q, std::size_t r);

/// Common-neighbor counts D_ij for every unordered pair of a node group,
/// normalized by n - 2. Pair k = (a, b), a < b, indexes members in
/// row-major upper-triangular order.
struct PairStatistics {
  std::vector<NodeId> members;
  std::vector<std::uint32_t> counts;
  std::uint64_t denominator = 1;

  std::size_t pair_count() const noexcept { return counts.size(); }
  double value(std::size_t k) const noexcept {
    return static_cast<double>(counts[k]) / static_cast<double>(denominator);
  }
  std::vector<double> values() const;
  /// Member positions (a, b) of pair k.
  std::pair<std::size_t, std::size_t> pair(std::size_t k) const noexcept;
  std::size_t index(std::size_t a, std::size_t b) const noexcept;
};

/// Throws GroupTooSmall if fewer than 2 members or n < 3, ParamOutOfRange on
/// a member id >= n or a repeated member.
PairStatistics pair_statistics(const Graph& g, std::span<const NodeId> members);
PairStatistics pair_statistics(const Adjacency& adj, std::span<const NodeId> members);

enum class Verdict { OneClique, TwoCliques, Ambiguous };

std::string_view to_string(Verdict v) noexcept;

struct SplitOptions {
  /// A component counts as a clique when at least this share of its
  /// internal pairs was selected.
  double density_threshold = 0.9;
  /// Above this many pairs the result carries a budget warning.
  std::size_t pair_budget = 20000;
};

struct SplitResult {
  Verdict verdict = Verdict::Ambiguous;
  std::vector<std::pair<NodeId, NodeId>> selected_pairs;  // W
  std::vector<NodeId> involved_nodes;                     // F, ascending
  std::vector<std::vector<NodeId>> components;            // of K = (F, W), each ascending
  std::vector<double> component_density;
  /// Two-way split of the members; both empty when the verdict is Ambiguous.
  /// For OneClique the first subgroup is the clique.
  std::array<std::vector<NodeId>, 2> subgroups;
  bool pair_budget_exceeded = false;
  std::string diagnostic;
};

/// Splits a group holding two classes with equal mean degree. Runs Largest
/// Gaps with two classes on the pair values, keeps the upper group W, and
/// reads the verdict off the connected components of K = (F, W).
SplitResult split_mixed_group(const Graph& g, std::span<const NodeId> members, const SplitOptions& opts = {});

}  // namespace lgsbm
