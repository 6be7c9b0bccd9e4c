#include "seqbias/estimator.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "seqbias/metrics.hpp"
#include "test_util.hpp"

using namespace seqbias;

namespace {

// argmin_r |y - x(t, r)| by linear scan, first minimum wins.
int scan_relative_rank(double y, std::size_t t, const ScoreTable& table) {
  int best = 1;
  double best_gap = std::abs(y - table(t, 1));
  for (std::size_t r = 2; r <= t; ++r) {
    const double gap = std::abs(y - table(t, static_cast<long long>(r)));
    if (gap < best_gap) {
      best_gap = gap;
      best = static_cast<int>(r);
    }
  }
  return best;
}

bool contains(const std::vector<Permutation>& set, const Permutation& p) {
  return std::find(set.begin(), set.end(), p) != set.end();
}

TEST(ChooseRelativeRank, Examples) {
  const auto table = ScoreTable::parametric();
  EXPECT_EQ(choose_relative_rank(0.25, 3, table), 1);
  EXPECT_EQ(choose_relative_rank(2.0 / 3.0, 2, table), 2);
  EXPECT_EQ(choose_relative_rank(0.625, 3, table), 2);
  EXPECT_EQ(choose_relative_rank(-4.0, 5, table), 1);
  EXPECT_EQ(choose_relative_rank(9.0, 5, table), 5);
  EXPECT_EQ(choose_relative_rank(0.9, 1, table), 1);
  EXPECT_THROW(choose_relative_rank(std::nan(""), 2, table), std::domain_error);
}

TEST(ChooseRelativeRank, ClosedFormMatchesScan) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> score(-0.3, 1.3);
  const auto table = ScoreTable::parametric();
  for (int trial = 0; trial < 20000; ++trial) {
    const std::size_t t = 1 + rng() % 300;
    const double y = score(rng);
    const int got = choose_relative_rank(y, t, table);
    const int want = scan_relative_rank(y, t, table);
    // Only exact float ties may disagree, and then both are minimizers.
    if (got != want) {
      ASSERT_NEAR(std::abs(y - table(t, got)), std::abs(y - table(t, want)), 1e-15);
    }
  }
}

TEST(ChooseRelativeRank, ExplicitTableMatchesScan) {
  std::mt19937_64 rng(81);
  const auto table = ScoreTable::from_rows(test::random_monotone_rows(40, rng));
  std::uniform_real_distribution<double> score(-3.0, 40.0);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::size_t t = 1 + rng() % 40;
    const double y = score(rng);
    ASSERT_EQ(choose_relative_rank(y, t, table), scan_relative_rank(y, t, table));
  }
  // Exact midpoint goes to the smaller rank.
  const auto simple = ScoreTable::from_rows({{0.0}, {0.0, 1.0}});
  EXPECT_EQ(choose_relative_rank(0.5, 2, simple), 1);
}

TEST(InsertionState, Replay) {
  InsertionState state(ScoreTable::parametric());
  EXPECT_EQ(state.step(0.93), 1);
  EXPECT_EQ(state.sequence().to_sequence(), std::vector<OrderStatTree::Item>{1});

  InsertionState replay(ScoreTable::parametric());
  for (const double y : {0.5, 2.0 / 3.0, 0.25}) replay.step(y);
  EXPECT_EQ(replay.sequence().to_sequence(), (std::vector<OrderStatTree::Item>{3, 1, 2}));
  EXPECT_EQ(replay.consumed(), 3u);
  EXPECT_EQ(replay.result().ranking, Permutation({2, 3, 1}));
}

TEST(InsertionState, RefusesPositionsBeyondTable) {
  InsertionState state(ScoreTable::from_rows({{0.5}}));
  state.step(0.5);
  EXPECT_THROW(state.step(0.5), std::domain_error);
  EXPECT_THROW(InsertionState(ScoreTable::parametric()).result(), std::domain_error);
}

TEST(LsEstimate, Examples) {
  const auto table = ScoreTable::parametric();
  const std::vector<double> y{0.5, 2.0 / 3.0, 0.25};
  const auto res = ls_estimate(y, table);
  EXPECT_EQ(res.ranking, Permutation({2, 3, 1}));
  EXPECT_EQ(res.objective, 0.0);
  EXPECT_EQ(res.rhat, RelativeRankVector({1, 2, 1}));

  const std::vector<double> single{0.9};
  const auto one = ls_estimate(single, table);
  EXPECT_EQ(one.ranking, Permutation({1}));
  EXPECT_DOUBLE_EQ(one.objective, 0.4 * 0.4);
  EXPECT_THROW(ls_estimate(std::vector<double>{}, table), std::domain_error);
}

TEST(LsEstimate, InvariantsOfResult) {
  std::mt19937_64 rng(12);
  const auto table = ScoreTable::parametric();
  for (int trial = 0; trial < 100; ++trial) {
    const auto truth = test::random_permutation(1 + rng() % 200, rng);
    const auto y = generate_scores(truth, table, NoiseSpec::uniform(0.2), rng());
    const auto res = ls_estimate(y, table);
    ASSERT_EQ(relative_ranks(res.ranking), res.rhat);
    ASSERT_NEAR(res.objective, ls_objective(y.values(), res.ranking, table), 1e-12);
  }
}

TEST(LsEstimate, NoiselessExactExhaustive) {
  const auto table = ScoreTable::parametric();
  for (std::size_t n = 1; n <= 7; ++n) {
    std::vector<int> ranks(n);
    std::iota(ranks.begin(), ranks.end(), 1);
    do {
      const Permutation truth(ranks);
      const auto res = ls_estimate(generate_scores(truth, table, NoiseSpec::none(), 0), table);
      ASSERT_EQ(res.ranking, truth);
      ASSERT_EQ(res.objective, 0.0);
    } while (std::next_permutation(ranks.begin(), ranks.end()));
  }
}

TEST(LsEstimate, NoiselessExactExplicitTable) {
  std::mt19937_64 rng(31);
  const auto table = ScoreTable::from_rows(test::random_monotone_rows(60, rng));
  for (int trial = 0; trial < 50; ++trial) {
    const auto truth = test::random_permutation(60, rng);
    ASSERT_EQ(ls_estimate(generate_scores(truth, table, NoiseSpec::none(), 0), table).ranking, truth);
  }
}

TEST(LsEstimate, OnlinePrefixesAgree) {
  std::mt19937_64 rng(44);
  const auto table = ScoreTable::parametric();
  const auto truth = test::random_permutation(80, rng);
  const auto y = generate_scores(truth, table, NoiseSpec::uniform(0.3), 5);
  const auto full = ls_estimate(y, table);
  for (std::size_t k = 1; k <= y.size(); k += 7) {
    const auto prefix = ls_estimate(y.values().first(k), table);
    for (std::size_t t = 1; t <= k; ++t) ASSERT_EQ(prefix.rhat.at(t), full.rhat.at(t));
  }
}

TEST(LsEstimate, BoundedDisplacement) {
  std::mt19937_64 rng(55);
  const auto table = ScoreTable::parametric();
  for (const double delta : {0.01, 0.05, 0.2, 0.5}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto truth = test::random_permutation(300, rng);
      const auto y = generate_scores(truth, table, NoiseSpec::uniform(delta), rng());
      const auto rel = relative_ranks(truth);
      const auto res = ls_estimate(y, table);
      for (std::size_t t = 1; t <= truth.size(); ++t) {
        ASSERT_LE(std::abs(res.rhat.at(t) - rel.at(t)), noise_rank_radius(delta, t));
      }
    }
  }
}

TEST(BruteForceLs, Examples) {
  const auto table = ScoreTable::parametric();
  const std::vector<double> tie{0.5, 0.5};
  const auto bf = brute_force_ls(tie, table);
  EXPECT_EQ(bf.minimizers.size(), 2u);
  EXPECT_TRUE(contains(bf.minimizers, Permutation({1, 2})));
  EXPECT_TRUE(contains(bf.minimizers, Permutation({2, 1})));
  EXPECT_NEAR(bf.objective, 1.0 / 36.0, 1e-15);
  EXPECT_THROW(brute_force_ls(std::vector<double>(9, 0.5), table), std::domain_error);
}

TEST(BruteForceLs, NoiselessHasUniqueZeroMinimizer) {
  std::mt19937_64 rng(66);
  const auto table = ScoreTable::parametric();
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto truth = test::random_permutation(n, rng);
      const auto bf = brute_force_ls(noiseless_scores(truth, table), table);
      ASSERT_EQ(bf.objective, 0.0);
      ASSERT_EQ(bf.minimizers, std::vector<Permutation>{truth});
    }
  }
}

TEST(BruteForceLs, AgreesWithInsertion) {
  std::mt19937_64 rng(77);
  const auto table = ScoreTable::parametric();
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    const double delta = trial % 2 ? 0.05 : 0.3;
    const auto truth = test::random_permutation(n, rng);
    const auto y = generate_scores(truth, table, NoiseSpec::uniform(delta), rng());
    const auto bf = brute_force_ls(y.values(), table);
    const auto ls = ls_estimate(y, table);
    ASSERT_NEAR(ls.objective, bf.objective, 1e-12);
    ASSERT_TRUE(contains(bf.minimizers, ls.ranking));
  }
}

TEST(BruteForceLs, AgreesWithInsertionExplicitTable) {
  std::mt19937_64 rng(78);
  for (int trial = 0; trial < 50; ++trial) {
    const auto table = ScoreTable::from_rows(test::random_monotone_rows(6, rng));
    const auto truth = test::random_permutation(6, rng);
    auto y = noiseless_scores(truth, table);
    std::uniform_real_distribution<double> eps(-0.5, 0.5);
    for (auto& v : y) v += eps(rng);
    const auto bf = brute_force_ls(y, table);
    const auto ls = ls_estimate(y, table);
    ASSERT_NEAR(ls.objective, bf.objective, 1e-12);
    ASSERT_TRUE(contains(bf.minimizers, ls.ranking));
  }
}

TEST(SfErrorBound, Examples) {
  std::mt19937_64 rng(3);
  const auto p = test::random_permutation(50, rng);
  EXPECT_EQ(sf_error_bound(p, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(sf_error_bound(Permutation::identity(3), 0.5), 1.0 / 3.0);
  EXPECT_THROW(sf_error_bound(p, -0.1), std::domain_error);
  EXPECT_THROW(sf_error_bound(p, 1.5), std::domain_error);
}

TEST(SfErrorBound, MatchesDirectRhoSum) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = test::random_permutation(1 + rng() % 60, rng);
    const double delta = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto rel = test::brute_relative_ranks(p);
    long long total = 0;
    for (std::size_t t = 1; t <= p.size(); ++t) {
      const long long k = noise_rank_radius(delta, t);
      total += rho(p, t, rel[t - 1] + k) - rho(p, t, rel[t - 1] - k);
    }
    const auto n = static_cast<double>(p.size());
    ASSERT_DOUBLE_EQ(sf_error_bound(p, delta), static_cast<double>(total) / (n * n));
  }
}

TEST(SfErrorBound, NondecreasingInDelta) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = test::random_permutation(100, rng);
    double prev = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double bound = sf_error_bound(p, i / 20.0);
      ASSERT_GE(bound, prev);
      prev = bound;
    }
  }
}

TEST(NoiseRankRadius, SnapsRoundingNoise) {
  EXPECT_EQ(noise_rank_radius(0.0, 10), 0);
  EXPECT_EQ(noise_rank_radius(0.5, 1), 1);
  EXPECT_EQ(noise_rank_radius(0.5, 2), 2);
  EXPECT_EQ(noise_rank_radius(0.1, 29), 3); // 0.1 * 30 is 3.0000000000000004 in binary
  EXPECT_EQ(noise_rank_radius(0.11, 9), 2);
}

} // namespace
