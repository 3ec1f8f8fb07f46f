#include "lgsbm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lgsbm/error.hpp"

namespace lgsbm {

namespace {

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::LengthMismatch,
                "label vectors have lengths " + std::to_string(a) + " and " + std::to_string(b));
  }
}

std::uint64_t choose2(std::uint64_t x) noexcept { return x < 2 ? 0 : x * (x - 1) / 2; }

void check_labels(const LabelVector& z, std::size_t q) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] >= q) {
      throw Error(ErrorCode::LabelOutOfRange,
                  "node " + std::to_string(i) + " has label " + std::to_string(z[i] + 1) + " > " + std::to_string(q));
    }
  }
}

/// agree[a * q + b]: nodes with predicted label a and true label b.
std::vector<std::uint64_t> agreement(const LabelVector& z, const LabelVector& zhat, std::size_t q) {
  std::vector<std::uint64_t> m(q * q, 0);
  for (std::size_t i = 0; i < z.size(); ++i) ++m[zhat[i] * q + z[i]];
  return m;
}

}  // namespace

std::uint64_t discordant_pairs(const LabelVector& z, const LabelVector& zhat) {
  check_lengths(z.size(), zhat.size());
  const std::size_t a = std::max<std::size_t>(z.classes(), 1);
  const std::size_t b = std::max<std::size_t>(zhat.classes(), 1);
  std::vector<std::uint64_t> table(a * b, 0), rows(a, 0), cols(b, 0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    ++table[z[i] * b + zhat[i]];
    ++rows[z[i]];
    ++cols[zhat[i]];
  }
  std::uint64_t same_z = 0, same_zhat = 0, same_both = 0;
  for (std::uint64_t r : rows) same_z += choose2(r);
  for (std::uint64_t c : cols) same_zhat += choose2(c);
  for (std::uint64_t t : table) same_both += choose2(t);
  // Pairs together in exactly one of the two partitions.
  return same_z + same_zhat - 2 * same_both;
}

double global_error_rate(const LabelVector& z, const LabelVector& zhat) {
  check_lengths(z.size(), zhat.size());
  if (z.size() < 2) throw Error(ErrorCode::TooFewNodes, "error rate needs n >= 2");
  return static_cast<double>(discordant_pairs(z, zhat)) / static_cast<double>(choose2(z.size()));
}

ClassRates class_rates(const LabelVector& z, const LabelVector& zhat, std::size_t q) {
  check_lengths(z.size(), zhat.size());
  check_labels(z, q);
  check_labels(zhat, q);
  const auto agree = agreement(z, zhat, q);
  ClassRates out;
  out.intruders.resize(q);
  out.missing.resize(q);
  for (std::size_t c = 0; c < q; ++c) {
    std::uint64_t predicted = 0, truth = 0;
    for (std::size_t o = 0; o < q; ++o) {
      predicted += agree[c * q + o];
      truth += agree[o * q + c];
    }
    const auto hit = static_cast<double>(agree[c * q + c]);
    if (predicted > 0) out.intruders[c] = 1.0 - hit / static_cast<double>(predicted);
    if (truth > 0) out.missing[c] = 1.0 - hit / static_cast<double>(truth);
  }
  return out;
}

LabelVector align_labels(const LabelVector& z, const LabelVector& zhat, std::size_t q) {
  check_lengths(z.size(), zhat.size());
  check_labels(z, q);
  check_labels(zhat, q);
  const auto agree = agreement(z, zhat, q);
  std::vector<ClassId> map(q);  // predicted label -> true label
  std::iota(map.begin(), map.end(), ClassId{0});

  if (q <= 8) {
    std::vector<ClassId> perm = map;
    std::uint64_t best = 0;
    for (std::size_t c = 0; c < q; ++c) best += agree[c * q + c];
    while (std::next_permutation(perm.begin(), perm.end())) {
      std::uint64_t score = 0;
      for (std::size_t c = 0; c < q; ++c) score += agree[c * q + perm[c]];
      if (score > best) {
        best = score;
        map = perm;
      }
    }
  } else {
    std::vector<bool> used_pred(q, false), used_true(q, false);
    for (std::size_t step = 0; step < q; ++step) {
      std::size_t bp = q, bt = q;
      for (std::size_t a = 0; a < q; ++a) {
        if (used_pred[a]) continue;
        for (std::size_t b = 0; b < q; ++b) {
          if (used_true[b]) continue;
          if (bp == q || agree[a * q + b] > agree[bp * q + bt]) {
            bp = a;
            bt = b;
          }
        }
      }
      used_pred[bp] = used_true[bt] = true;
      map[bp] = static_cast<ClassId>(bt);
    }
  }

  std::vector<ClassId> out(zhat.size());
  for (std::size_t i = 0; i < zhat.size(); ++i) out[i] = map[zhat[i]];
  return LabelVector(std::move(out), q);
}

double spreading(const DegreeProfile& profile, const LabelVector& z, std::span<const double> pibar) {
  check_lengths(profile.size(), z.size());
  if (pibar.size() < z.classes()) {
    throw Error(ErrorCode::LengthMismatch, "need " + std::to_string(z.classes()) + " mean degrees, got " +
                                               std::to_string(pibar.size()));
  }
  double d = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) d = std::max(d, std::abs(profile.value(i) - pibar[z[i]]));
  return d;
}

LabelVector order_by_mean_degree(const LabelVector& z, std::span<const double> pibar) {
  if (pibar.size() != z.classes()) {
    throw Error(ErrorCode::LengthMismatch, "need " + std::to_string(z.classes()) + " mean degrees, got " +
                                               std::to_string(pibar.size()));
  }
  std::vector<ClassId> rank_of(pibar.size());
  std::vector<std::size_t> by_mean(pibar.size());
  std::iota(by_mean.begin(), by_mean.end(), std::size_t{0});
  std::stable_sort(by_mean.begin(), by_mean.end(), [&](std::size_t a, std::size_t b) { return pibar[a] < pibar[b]; });
  for (std::size_t k = 0; k < by_mean.size(); ++k) rank_of[by_mean[k]] = static_cast<ClassId>(k);
  std::vector<ClassId> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = rank_of[z[i]];
  return LabelVector(std::move(out), z.classes());
}

MetricReport evaluate(const LabelVector& z, const LabelVector& zhat, std::size_t q, const DegreeProfile* profile,
                      std::span<const double> pibar) {
  MetricReport r;
  const std::uint64_t bad = discordant_pairs(z, zhat);
  r.g = global_error_rate(z, zhat);
  r.exact = bad == 0;
  r.rates = class_rates(z, zhat, q);
  r.empty_true_class = z.classes() < q;
  for (std::size_t s : z.class_sizes()) r.empty_true_class = r.empty_true_class || s == 0;
  if (profile != nullptr && !pibar.empty()) r.spreading = spreading(*profile, z, pibar);
  return r;
}

}  // namespace lgsbm
