#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "sessrank/error.hpp"
#include "sessrank/ltr/model.hpp"
#include "sessrank/ltr/trainer.hpp"
#include "synthetic.hpp"

namespace sessrank::ltr {
namespace {

std::vector<double> scores_of(const LtrModel& m, const FeatureSet& set) {
  std::vector<double> out;
  for (const auto& v : set.vectors) out.push_back(predict(m, v));
  return out;
}

std::string serialize(const LtrModel& m) {
  std::ostringstream out;
  save_model(m, out);
  return out.str();
}

TEST(Train, SeparableTaskReachesPerfectNdcg) {
  const FeatureSet data = synthetic::separable_task(1);
  LtrParams p;
  p.n_trees = 100;
  const auto result = train(data, nullptr, p);
  const auto& log = result.log;
  const auto hit = std::find_if(log.begin(), log.end(),
                                [](const RoundLog& r) { return r.train_ndcg == 1.0; });
  ASSERT_NE(hit, log.end());
  EXPECT_LE(hit->round, 100u);
  EXPECT_EQ(mean_ndcg(data, scores_of(result.model, data), 10), 1.0);
}

TEST(Train, SeparableModelOrdersByThreshold) {
  const FeatureSet data = synthetic::separable_task(2);
  LtrParams p;
  p.n_trees = 100;
  const auto model = train(data, nullptr, p).model;
  double worst_pos = 1e300, best_neg = -1e300;
  for (const auto& v : data.vectors) {
    const double s = predict(model, v);
    if (v.values[3] > 0.7) worst_pos = std::min(worst_pos, s);
    else best_neg = std::max(best_neg, s);
  }
  EXPECT_GT(worst_pos, best_neg);
}

TEST(Train, TrainingNdcgTrendIsMonotone) {
  const FeatureSet data = synthetic::separable_task(4);
  LtrParams p;
  p.n_trees = 20;
  const auto log = train(data, nullptr, p).log;
  ASSERT_EQ(log.size(), 20u);
  int dips = 0;
  for (std::size_t i = 1; i < log.size(); ++i) {
    const double drop = log[i - 1].train_ndcg - log[i].train_ndcg;
    if (drop > 0) {
      ++dips;
      EXPECT_LT(drop, 1e-6);
    }
  }
  EXPECT_LE(dips, 1);
}

TEST(Train, DeterministicSerialization) {
  const auto bench = synthetic::session_benchmark(3, 30, 10, 5);
  LtrParams p;
  p.n_trees = 40;
  const auto a = train(bench.train, &bench.valid, p).model;
  const auto b = train(bench.train, &bench.valid, p).model;
  EXPECT_EQ(serialize(a), serialize(b));
}

TEST(Train, ThreadedMatchesSingleThreaded) {
  const auto bench = synthetic::session_benchmark(6, 40, 10, 5);
  LtrParams p;
  p.n_trees = 30;
  const auto one = train(bench.train, &bench.valid, p).model;
  p.threads = 4;
  const auto four = train(bench.train, &bench.valid, p).model;
  EXPECT_EQ(serialize(one), serialize(four));
}

TEST(Train, EarlyStopTruncatesToBestRound) {
  const auto bench = synthetic::session_benchmark(8, 40, 20, 5);
  LtrParams p;
  p.n_trees = 200;
  p.early_stop_rounds = 5;
  const auto result = train(bench.train, &bench.valid, p);
  ASSERT_FALSE(result.log.empty());
  ASSERT_GE(result.best_round, 1u);
  EXPECT_EQ(result.model.trees.size(), result.best_round);

  double best = -1;
  std::size_t best_round = 0;
  for (const auto& r : result.log) {
    ASSERT_TRUE(r.valid_ndcg.has_value());
    if (*r.valid_ndcg > best) {
      best = *r.valid_ndcg;
      best_round = r.round;
    }
  }
  EXPECT_EQ(best_round, result.best_round);
  if (result.log.size() < 200u) {
    EXPECT_EQ(result.log.size(), result.best_round + 5);
  }
  EXPECT_DOUBLE_EQ(mean_ndcg(bench.valid, scores_of(result.model, bench.valid), 10), best);

  // The kept prefix is exactly the first trees of a run without early stopping.
  LtrParams full = p;
  full.n_trees = static_cast<int>(result.best_round);
  const auto prefix = train(bench.train, nullptr, full).model;
  EXPECT_EQ(serialize(prefix), serialize(result.model));
}

TEST(Train, NoTrainablePairs) {
  FeatureSet data = synthetic::separable_task(1, 3, 4);
  for (auto& v : data.vectors) v.label = 1;
  try {
    train(data, nullptr, LtrParams{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::no_trainable_pairs);
  }
}

TEST(Train, SchemaMismatch) {
  FeatureSet data = synthetic::separable_task(1, 3, 4);
  data.vectors[2].values.push_back(0.0);
  EXPECT_THROW(train(data, nullptr, LtrParams{}), Error);

  FeatureSet train_set = synthetic::separable_task(1, 3, 4);
  FeatureSet valid = synthetic::separable_task(2, 3, 4);
  valid.schema = Schema::pmtm;
  for (auto& v : valid.vectors) v.values.resize(11);
  EXPECT_THROW(train(train_set, &valid, LtrParams{}), Error);
}

TEST(Train, ParamsValidated) {
  LtrParams p;
  p.n_trees = 0;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.n_leaves = 1;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.shrinkage = 0.0;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.shrinkage = 1.5;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  EXPECT_NO_THROW(p.validate());
}

TEST(Train, CallbackSeesEveryRound) {
  const FeatureSet data = synthetic::separable_task(1);
  LtrParams p;
  p.n_trees = 7;
  std::size_t calls = 0;
  train(data, nullptr, p, [&](const RoundLog& r) { EXPECT_EQ(r.round, ++calls); });
  EXPECT_EQ(calls, 7u);
}

}  // namespace
}  // namespace sessrank::ltr
