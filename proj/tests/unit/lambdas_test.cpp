#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "sessrank/error.hpp"
#include "sessrank/eval.hpp"
#include "sessrank/ltr/lambdas.hpp"

namespace sessrank::ltr {
namespace {

TEST(Lambdas, EqualLabelsGiveZeros) {
  const std::vector<double> scores{0.3, -1.0, 2.0};
  const std::vector<int> labels{1, 1, 1};
  const auto l = compute_lambdas(scores, labels, 10, 1.0);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(l.lambdas[i], 0.0);
    EXPECT_EQ(l.weights[i], 0.0);
  }
}

TEST(Lambdas, ZeroIdealGroupGivesZeros) {
  const auto l = compute_lambdas(std::vector<double>{1, 2}, std::vector<int>{0, 0}, 10, 1.0);
  EXPECT_EQ(l.lambdas, (std::vector<double>{0, 0}));
}

TEST(Lambdas, TwoDocsEqualScores) {
  for (double sigma : {0.5, 1.0, 2.0}) {
    const auto l = compute_lambdas(std::vector<double>{0.0, 0.0}, std::vector<int>{1, 0}, 10,
                                   sigma);
    // Already ideal: swapping drops NDCG from 1 to 1/log2(3).
    const double delta = 1.0 - 1.0 / std::log2(3.0);
    EXPECT_NEAR(l.lambdas[0], 0.5 * sigma * delta, 1e-15);
    EXPECT_EQ(l.lambdas[1], -l.lambdas[0]);
    EXPECT_NEAR(l.weights[0], sigma * sigma * 0.25 * delta, 1e-15);
  }
}

TEST(Lambdas, FrozenThreeDocCase) {
  const auto l = compute_lambdas(std::vector<double>{0.1, 0.3, 0.2}, std::vector<int>{2, 1, 0},
                                 10, 1.0);
  EXPECT_NEAR(l.lambdas[0], 0.20822220080383158, 1e-12);
  EXPECT_NEAR(l.lambdas[1], -0.10314656972040298, 1e-12);
  EXPECT_NEAR(l.lambdas[2], -0.1050756310834286, 1e-12);
  EXPECT_NEAR(l.weights[0], 0.09514609938110022, 1e-12);
  EXPECT_NEAR(l.weights[1], 0.09351705275631741, 1e-12);
  EXPECT_NEAR(l.weights[2], 0.05232530507860439, 1e-12);
}

TEST(Lambdas, LengthMismatch) {
  try {
    compute_lambdas(std::vector<double>{1, 2}, std::vector<int>{1}, 10, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::length_mismatch);
  }
}

TEST(Lambdas, MatchBruteForceAndSumToZero) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> size(1, 8), label(0, 4), kk(1, 10);
  std::uniform_real_distribution<double> score(-3, 3), sigma(0.2, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size(rng);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) {
      // Coarse grid so that tied scores show up.
      scores[i] = std::round(score(rng) * 2) / 2;
      labels[i] = label(rng);
    }
    const int k = kk(rng);
    const double s = sigma(rng);
    const auto got = compute_lambdas(scores, labels, k, s);
    const auto want = oracle::lambdas(scores, labels, k, s);
    for (int i = 0; i < n; ++i) {
      EXPECT_NEAR(got.lambdas[i], want.lambdas[i], 1e-9);
      EXPECT_NEAR(got.weights[i], want.weights[i], 1e-9);
      EXPECT_GE(got.weights[i], 0.0);
    }
    EXPECT_NEAR(std::accumulate(got.lambdas.begin(), got.lambdas.end(), 0.0), 0.0, 1e-9);
  }
}

// Lambdas point towards better orderings: moving each doc a small step along
// its lambda does not lower NDCG for a two-doc misordered group.
TEST(Lambdas, AscentDirection) {
  const std::vector<double> scores{0.0, 1.0};
  const std::vector<int> labels{1, 0};
  const auto l = compute_lambdas(scores, labels, 10, 1.0);
  EXPECT_GT(l.lambdas[0], 0.0);
  EXPECT_LT(l.lambdas[1], 0.0);
}

}  // namespace
}  // namespace sessrank::ltr
