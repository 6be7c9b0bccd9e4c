#include "seqbias/permutation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "test_util.hpp"

using namespace seqbias;

namespace {

TEST(Permutation, RejectsNonBijections) {
  EXPECT_THROW(Permutation({}), std::domain_error);
  EXPECT_THROW(Permutation({1, 1}), std::domain_error);
  EXPECT_THROW(Permutation({0, 1}), std::domain_error);
  EXPECT_THROW(Permutation({1, 3}), std::domain_error);
  EXPECT_NO_THROW(Permutation({2, 1}));
}

TEST(Permutation, ParseAndFormat) {
  EXPECT_EQ(Permutation::parse("2,3,1"), Permutation({2, 3, 1}));
  EXPECT_EQ(Permutation::parse(" 1 , 2 "), Permutation({1, 2}));
  EXPECT_EQ(Permutation({2, 3, 1}).to_string(), "2,3,1");
  EXPECT_THROW(Permutation::parse("1,,2"), std::invalid_argument);
  EXPECT_THROW(Permutation::parse("1,x"), std::invalid_argument);
  EXPECT_THROW(Permutation::parse("1,1"), std::domain_error);
}

TEST(Permutation, RankAtBounds) {
  const Permutation p({2, 3, 1});
  EXPECT_EQ(p.rank_at(1), 2);
  EXPECT_EQ(p.rank_at(3), 1);
  EXPECT_THROW(p.rank_at(0), std::domain_error);
  EXPECT_THROW(p.rank_at(4), std::domain_error);
}

TEST(RelativeRank, IdentityGivesPosition) {
  const auto id = Permutation::identity(9);
  for (std::size_t t = 1; t <= 9; ++t) EXPECT_EQ(relative_rank(id, t), static_cast<int>(t));
}

TEST(RelativeRank, Examples) {
  EXPECT_EQ(relative_rank(Permutation({1, 3, 2}), 3), 2);
  EXPECT_EQ(relative_ranks(Permutation({2, 3, 1})), RelativeRankVector({1, 2, 1}));
  EXPECT_THROW(relative_rank(Permutation({1, 2}), 3), std::domain_error);
  EXPECT_THROW(relative_rank(Permutation({1, 2}), 0), std::domain_error);
}

TEST(RelativeRank, VectorMatchesSinglePosition) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = test::random_permutation(1 + rng() % 60, rng);
    const auto rel = relative_ranks(p);
    for (std::size_t t = 1; t <= p.size(); ++t) ASSERT_EQ(rel.at(t), relative_rank(p, t));
  }
}

TEST(RelativeRankVector, RejectsOutOfRange) {
  EXPECT_THROW(RelativeRankVector({2}), std::domain_error);
  EXPECT_THROW(RelativeRankVector({1, 3}), std::domain_error);
  EXPECT_THROW(RelativeRankVector({1, 0}), std::domain_error);
  EXPECT_NO_THROW(RelativeRankVector({1, 2, 1}));
}

TEST(RelativeRankVector, BijectionExhaustive) {
  for (std::size_t n = 1; n <= 8; ++n) {
    std::vector<int> ranks(n);
    std::iota(ranks.begin(), ranks.end(), 1);
    std::size_t count = 0;
    do {
      const Permutation p(ranks);
      ASSERT_EQ(from_relative_ranks(relative_ranks(p)), p);
      ++count;
    } while (std::next_permutation(ranks.begin(), ranks.end()));
    EXPECT_EQ(count, test::factorial(n));
  }
}

TEST(RelativeRankVector, EveryInversionVectorDecodes) {
  // Enumerate [1] x [2] x ... x [6] and check the round trip from the other side.
  const std::size_t n = 6;
  std::vector<int> rel(n, 1);
  while (true) {
    const RelativeRankVector v(rel);
    ASSERT_EQ(relative_ranks(from_relative_ranks(v)), v);
    std::size_t i = 0;
    while (i < n && rel[i] == static_cast<int>(i + 1)) rel[i++] = 1;
    if (i == n) break;
    ++rel[i];
  }
}

TEST(RelativeRankVector, BijectionSampledLarge) {
  std::mt19937_64 rng(5);
  for (const std::size_t n : {100u, 1000u, 10000u}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto p = test::random_permutation(n, rng);
      ASSERT_EQ(from_relative_ranks(relative_ranks(p)), p);
    }
  }
}

TEST(Restrict, Examples) {
  const Permutation g({1, 4, 3, 2});
  EXPECT_EQ(restrict(g, 2), Permutation({1, 2}));
  EXPECT_EQ(restrict(g, 3), Permutation({1, 3, 2}));
  EXPECT_EQ(restrict(g, 4), g);
  EXPECT_THROW(restrict(g, 5), std::domain_error);
}

TEST(Restrict, LastEntryIsRelativeRank) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = test::random_permutation(1 + rng() % 40, rng);
    for (std::size_t t = 1; t <= p.size(); ++t) ASSERT_EQ(restrict(p, t).rank_at(t), relative_rank(p, t));
  }
}

TEST(Rho, Examples) {
  const Permutation p({1, 3, 2});
  EXPECT_EQ(rho(p, 3, 2), 2);
  EXPECT_EQ(rho(p, 2, 2), 3);
  EXPECT_EQ(rho(p, 2, 0), rho(p, 2, 1));
  EXPECT_EQ(rho(p, 2, -7), rho(p, 2, 1));
  EXPECT_EQ(rho(p, 2, 99), rho(p, 2, 2));
  EXPECT_THROW(rho(p, 4, 1), std::domain_error);
}

TEST(Rho, MonotoneInRankExhaustive) {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<int> ranks(n);
    std::iota(ranks.begin(), ranks.end(), 1);
    do {
      const Permutation p(ranks);
      for (std::size_t t = 1; t <= n; ++t) {
        for (long long r = -1; r <= static_cast<long long>(t) + 1; ++r) {
          ASSERT_LE(rho(p, t, r), rho(p, t, r + 1));
        }
      }
    } while (std::next_permutation(ranks.begin(), ranks.end()));
  }
}

TEST(Inverse, Examples) {
  EXPECT_EQ(inverse(Permutation({1, 2, 3})), Permutation({1, 2, 3}));
  EXPECT_EQ(inverse(Permutation({2, 3, 1})), Permutation({3, 1, 2}));
}

TEST(Inverse, InvolutionAndComposition) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = test::random_permutation(1 + rng() % 200, rng);
    ASSERT_EQ(inverse(inverse(p)), p);
    ASSERT_EQ(compose(p, inverse(p)), Permutation::identity(p.size()));
  }
}

TEST(RankingFromScores, Examples) {
  const std::vector<double> y{0.5, 0.2, 0.7};
  EXPECT_EQ(ranking_from_scores(y), Permutation({2, 1, 3}));
  const std::vector<double> sorted{-1.0, 0.0, 0.3, 2.0};
  EXPECT_EQ(ranking_from_scores(sorted), Permutation::identity(4));
  const std::vector<double> tie{0.3, 0.3};
  EXPECT_EQ(ranking_from_scores(tie), Permutation({1, 2}));
}

TEST(RankingFromScores, RejectsNonFinite) {
  const std::vector<double> nan{0.1, std::numeric_limits<double>::quiet_NaN()};
  EXPECT_THROW(ranking_from_scores(nan), std::domain_error);
  const std::vector<double> inf{std::numeric_limits<double>::infinity()};
  EXPECT_THROW(ranking_from_scores(inf), std::domain_error);
  EXPECT_THROW(ranking_from_scores({}), std::domain_error);
}

} // namespace
