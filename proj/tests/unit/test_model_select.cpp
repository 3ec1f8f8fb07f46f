#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "lgsbm/error.hpp"
#include "lgsbm/model_select.hpp"

namespace lgsbm {
namespace {

DegreeProfile six() { return DegreeProfile::from_counts({10, 11, 12, 50, 51, 52}, 100); }

TEST(FCriterion, TwoClassesByHand) {
  const Criterion c = f_criterion(six(), 2, 0.5);
  EXPECT_NEAR(c.sum_hg, 0.40 - 0.38, 1e-12);
  EXPECT_NEAR(c.penalty, 1.0 / (std::pow(6.0, 0.25) * 0.38), 1e-12);
  EXPECT_NEAR(c.f, 1.701, 5e-4);
  EXPECT_DOUBLE_EQ(c.f, c.sum_hg + c.penalty);
}

TEST(FCriterion, FourClassesPenaltyExplodes) {
  const Criterion c = f_criterion(six(), 4, 0.5);
  EXPECT_NEAR(c.penalty, 1.0 / (std::pow(6.0, 0.25) * 0.01), 1e-9);
  EXPECT_NEAR(c.penalty, 63.9, 0.05);
  EXPECT_GT(c.f, f_criterion(six(), 2, 0.5).f);
}

TEST(FCriterion, ZeroGapIsInfinite) {
  const auto p = DegreeProfile::from_counts({1, 1, 5, 5}, 10);
  const Criterion c = f_criterion(p, 3);
  EXPECT_EQ(c.penalty, std::numeric_limits<double>::infinity());
  EXPECT_EQ(c.f, std::numeric_limits<double>::infinity());
}

TEST(FCriterion, Errors) {
  try {
    f_criterion(six(), 2, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BetaOutOfRange);
  }
  EXPECT_THROW(f_criterion(six(), 2, 0.0), Error);
  EXPECT_THROW(f_criterion(six(), 1), Error);
  EXPECT_THROW(f_criterion(six(), 7), Error);
}

// By brute force: H_q - G_q summed over the q-1 selected boundaries equals
// the difference between mean gaps spanning each cut and the cut gaps.
TEST(FCriterion, DominanceOnRandomProfiles) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::uint32_t> cd(0, 200);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint32_t> counts(25);
    for (auto& c : counts) c = cd(rng);
    const auto prof = DegreeProfile::from_counts(counts, 200);
    const LargestGaps lg(prof);
    for (std::size_t q = 2; q <= 10; ++q) {
      const Criterion c = f_criterion(lg, q, 0.3);
      EXPECT_GE(c.sum_hg, -1e-12);
      EXPECT_GT(c.penalty, 0.0);
      EXPECT_GE(c.f, c.penalty);
      const LgResult r = lg.partition(q);
      double s = 0;
      for (std::size_t k = 0; k + 1 < q; ++k) s += r.spanning_mean_gaps[k] - r.boundary_gaps[k];
      EXPECT_NEAR(c.sum_hg, s, 1e-9);
    }
  }
}

TEST(SelectQ, TwoConstantBlobs) {
  const auto p = DegreeProfile::from_counts({5, 5, 5, 5, 90, 90, 90}, 100);
  const SelectionReport r = select_q(p, 7);
  EXPECT_EQ(r.q_hat, 2u);
  ASSERT_EQ(r.candidates.size(), 6u);
  for (std::size_t k = 1; k < r.candidates.size(); ++k) EXPECT_TRUE(std::isinf(r.candidates[k].f));
  EXPECT_FALSE(r.weak_structure);
}

TEST(SelectQ, CapOfTwo) {
  const SelectionReport r = select_q(six(), 2);
  EXPECT_EQ(r.q_hat, 2u);
  EXPECT_EQ(r.candidates.size(), 1u);
}

TEST(SelectQ, MatchesArgminOfCriteria) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::uint32_t> cd(0, 300);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::uint32_t> counts(40);
    for (auto& c : counts) c = cd(rng) / (1 + trial % 3) * (1 + trial % 3);
    const auto prof = DegreeProfile::from_counts(counts, 300);
    const SelectionReport r = select_q(prof, 12, 0.5);
    std::size_t best = 2;
    for (std::size_t q = 2; q <= 12; ++q) {
      if (f_criterion(prof, q, 0.5).f < f_criterion(prof, best, 0.5).f) best = q;
    }
    EXPECT_EQ(r.q_hat, best);
  }
}

TEST(SelectQ, DefaultCapAndErrors) {
  EXPECT_EQ(default_q_max(6), 6u);
  EXPECT_EQ(default_q_max(1000), 30u);
  EXPECT_EQ(select_q(six()).candidates.size(), 5u);
  EXPECT_THROW(select_q(six(), 7), Error);
  EXPECT_THROW(select_q(six(), 1), Error);
}

TEST(SelectQ, WeakStructureFlag) {
  // Uniformly spread values: the first gap is tiny, so its penalty dominates.
  std::vector<std::uint32_t> counts;
  for (std::uint32_t i = 0; i < 50; ++i) counts.push_back(i * 2);
  const SelectionReport r = select_q(DegreeProfile::from_counts(counts, 100), 5);
  EXPECT_TRUE(r.weak_structure);
}

}  // namespace
}  // namespace lgsbm
