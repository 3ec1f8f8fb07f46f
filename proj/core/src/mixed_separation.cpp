#include "lgsbm/mixed_separation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>

#include "lgsbm/error.hpp"
#include "lgsbm/lg_classify.hpp"

namespace lgsbm {

InnerProducts alpha_inner_products(const ModelParams& p, std::size_t q, std::size_t r) {
  if (q >= p.blocks() || r >= p.blocks()) {
    throw Error(ErrorCode::LabelOutOfRange, "class index outside [1, " + std::to_string(p.blocks()) + "]");
  }
  InnerProducts out;
  for (std::size_t l = 0; l < p.blocks(); ++l) {
    const double a = p.alpha(l);
    out.norm_q += a * p.pi(q, l) * p.pi(q, l);
    out.norm_r += a * p.pi(r, l) * p.pi(r, l);
    out.cross += a * p.pi(q, l) * p.pi(r, l);
  }
  return out;
}

std::vector<double> PairStatistics::values() const {
  std::vector<double> v(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) v[k] = value(k);
  return v;
}

std::size_t PairStatistics::index(std::size_t a, std::size_t b) const noexcept {
  const std::size_t m = members.size();
  return a * m - a * (a + 1) / 2 + (b - a - 1);
}

std::pair<std::size_t, std::size_t> PairStatistics::pair(std::size_t k) const noexcept {
  const std::size_t m = members.size();
  // Row a starts at a*m - a(a+1)/2; estimate a from the quadratic, then fix rounding.
  const double mm = static_cast<double>(2 * m - 1);
  auto a = static_cast<std::size_t>(std::max(0.0, std::floor((mm - std::sqrt(mm * mm - 8.0 * static_cast<double>(k))) / 2.0)));
  auto row_start = [m](std::size_t r) { return r * m - r * (r + 1) / 2; };
  while (a > 0 && row_start(a) > k) --a;
  while (a + 1 < m && row_start(a + 1) <= k) ++a;
  return {a, a + 1 + (k - row_start(a))};
}

namespace {

void check_members(std::size_t n, std::span<const NodeId> members) {
  if (members.size() < 2) throw Error(ErrorCode::GroupTooSmall, "group needs at least 2 members");
  if (n < 3) throw Error(ErrorCode::GroupTooSmall, "common-neighbor counts need n >= 3");
  std::vector<NodeId> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.back() >= n) {
    throw Error(ErrorCode::ParamOutOfRange, "member " + std::to_string(sorted.back()) + " >= n=" + std::to_string(n));
  }
  const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw Error(ErrorCode::ParamOutOfRange, "member " + std::to_string(*dup) + " repeated");
}

std::size_t merge_count(std::span<const NodeId> a, std::span<const NodeId> b) noexcept {
  std::size_t i = 0, j = 0, c = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++c;
      ++i;
      ++j;
    }
  }
  return c;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

constexpr std::size_t kMaxBitsetWords = std::size_t{1} << 25;  // 256 MiB

}  // namespace

PairStatistics pair_statistics(const Adjacency& adj, std::span<const NodeId> members) {
  const std::size_t n = adj.nodes();
  check_members(n, members);
  const std::size_t m = members.size();
  PairStatistics out;
  out.members.assign(members.begin(), members.end());
  out.denominator = n - 2;
  out.counts.resize(m * (m - 1) / 2);

  const std::size_t words = (n + 63) / 64;
  std::size_t degree_sum = 0;
  for (NodeId v : members) degree_sum += adj.degree(v);
  // A merge costs about d_i + d_j steps per pair, a bitset AND about n/64.
  const bool use_bitsets = 2 * degree_sum >= words * m && m * words <= kMaxBitsetWords;

  std::size_t k = 0;
  if (use_bitsets) {
    std::vector<std::uint64_t> bits(m * words, 0);
    for (std::size_t a = 0; a < m; ++a) {
      for (NodeId v : adj.neighbors(members[a])) bits[a * words + v / 64] |= std::uint64_t{1} << (v % 64);
    }
    for (std::size_t a = 0; a < m; ++a) {
      const std::uint64_t* ra = bits.data() + a * words;
      for (std::size_t b = a + 1; b < m; ++b) {
        const std::uint64_t* rb = bits.data() + b * words;
        std::uint32_t c = 0;
        for (std::size_t w = 0; w < words; ++w) c += static_cast<std::uint32_t>(std::popcount(ra[w] & rb[w]));
        out.counts[k++] = c;
      }
    }
  } else {
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        out.counts[k++] = static_cast<std::uint32_t>(merge_count(adj.neighbors(members[a]), adj.neighbors(members[b])));
      }
    }
  }
  return out;
}

PairStatistics pair_statistics(const Graph& g, std::span<const NodeId> members) {
  check_members(g.nodes(), members);
  return pair_statistics(Adjacency(g), members);
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::OneClique:
      return "OneClique";
    case Verdict::TwoCliques:
      return "TwoCliques";
    case Verdict::Ambiguous:
      return "Ambiguous";
  }
  return "Ambiguous";
}

SplitResult split_mixed_group(const Graph& g, std::span<const NodeId> members, const SplitOptions& opts) {
  const PairStatistics stats = pair_statistics(g, members);
  const std::size_t m = stats.members.size();
  SplitResult out;
  out.pair_budget_exceeded = stats.pair_count() > opts.pair_budget;
  if (m == 2) {
    out.diagnostic = "a single pair carries no gap structure";
    return out;
  }

  const LgResult lg = lg_partition(DegreeProfile::from_counts(stats.counts, stats.denominator), 2);
  if (lg.degenerate_separation) {
    out.diagnostic = "all pair values are equal";
    return out;
  }

  UnionFind uf(m);
  std::vector<bool> involved(m, false);
  std::vector<std::pair<std::size_t, std::size_t>> w_pos;
  for (std::size_t k = 0; k < stats.pair_count(); ++k) {
    if (lg.labels[k] != 1) continue;
    const auto [a, b] = stats.pair(k);
    w_pos.emplace_back(a, b);
    involved[a] = involved[b] = true;
    uf.unite(a, b);
  }

  // Components keyed by root; ordered by their smallest node id.
  std::vector<std::size_t> comp_of(m, SIZE_MAX);
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> by_id(m);
  std::iota(by_id.begin(), by_id.end(), std::size_t{0});
  std::sort(by_id.begin(), by_id.end(), [&](std::size_t a, std::size_t b) { return stats.members[a] < stats.members[b]; });
  std::vector<std::size_t> root_comp(m, SIZE_MAX);
  for (std::size_t a : by_id) {
    if (!involved[a]) continue;
    const std::size_t r = uf.find(a);
    if (root_comp[r] == SIZE_MAX) {
      root_comp[r] = comps.size();
      comps.emplace_back();
    }
    comp_of[a] = root_comp[r];
    comps[root_comp[r]].push_back(a);
    out.involved_nodes.push_back(stats.members[a]);
  }
  std::vector<std::size_t> internal(comps.size(), 0);
  for (const auto& [a, b] : w_pos) {
    ++internal[comp_of[a]];
    out.selected_pairs.emplace_back(std::min(stats.members[a], stats.members[b]),
                                    std::max(stats.members[a], stats.members[b]));
  }
  std::sort(out.selected_pairs.begin(), out.selected_pairs.end());

  std::size_t dense = 0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const double size = static_cast<double>(comps[c].size());
    out.component_density.push_back(static_cast<double>(internal[c]) / (size * (size - 1) / 2));
    if (out.component_density.back() >= opts.density_threshold) ++dense;
    std::vector<NodeId> ids;
    for (std::size_t a : comps[c]) ids.push_back(stats.members[a]);
    out.components.push_back(std::move(ids));
  }

  auto to_ids = [&](const std::vector<std::size_t>& pos) {
    std::vector<NodeId> ids;
    for (std::size_t a : pos) ids.push_back(stats.members[a]);
    std::sort(ids.begin(), ids.end());
    return ids;
  };

  if (comps.size() == 1 && dense == 1) {
    out.verdict = Verdict::OneClique;
    out.subgroups[0] = out.components[0];
    std::vector<std::size_t> rest;
    for (std::size_t a = 0; a < m; ++a) {
      if (comp_of[a] != 0) rest.push_back(a);
    }
    out.subgroups[1] = to_ids(rest);
  } else if (comps.size() == 2 && dense == 2) {
    out.verdict = Verdict::TwoCliques;
    std::array<std::vector<std::size_t>, 2> groups{comps[0], comps[1]};
    for (std::size_t a = 0; a < m; ++a) {
      if (involved[a]) continue;
      std::array<double, 2> mean{};
      for (int s = 0; s < 2; ++s) {
        double sum = 0.0;
        for (std::size_t b : comps[s]) sum += stats.value(a < b ? stats.index(a, b) : stats.index(b, a));
        mean[s] = sum / static_cast<double>(comps[s].size());
      }
      groups[mean[1] > mean[0] ? 1 : 0].push_back(a);
    }
    out.subgroups[0] = to_ids(groups[0]);
    out.subgroups[1] = to_ids(groups[1]);
  } else {
    std::ostringstream msg;
    msg << comps.size() << " components, " << dense << " above density " << opts.density_threshold;
    out.diagnostic = msg.str();
  }
  return out;
}

}  // namespace lgsbm
