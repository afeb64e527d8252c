#include <gtest/gtest.h>

#include <map>

#include "sessrank/error.hpp"
#include "sessrank/filter.hpp"
#include "sessrank/ltr/model.hpp"
#include "sessrank/ltr/trainer.hpp"
#include "sessrank/pipeline.hpp"
#include "test_paths.hpp"

namespace sessrank {
namespace {

Corpus sample_corpus() {
  Corpus c;
  c.add(Document::from_raw("d209", "赛尔号 4399 赛尔号 游戏 在线 玩 精灵 大全 攻略"));
  c.add(Document::from_raw("d210", "小游戏 4399 小游戏 大全 双人 小游戏"));
  c.add(Document::from_raw("d211", "<unk>"));
  c.add(Document::from_raw("d215", "4399赛尔号 百科 词条 介绍 游戏"));
  c.add(Document::from_raw("d216", "赛尔号 官网 淘米 网络 游戏"));
  return c;
}

std::vector<Session> sample_sessions() {
  return load_session_log(testing::data_path("sample_session.log"));
}

TEST(Pipeline, AtmFeaturesFromSessions) {
  const Corpus kept = filter_corpus(sample_corpus(), FilterRules::defaults()).kept;
  const auto build = build_session_features(sample_sessions(), kept, PipelineOptions{});
  EXPECT_EQ(build.groups, 2u);
  EXPECT_EQ(build.skipped_turns, 0u);
  EXPECT_EQ(build.unavailable_docs, 2u * 6u);  // 10 impressions, 4 resolvable per turn
  EXPECT_EQ(build.features.schema, Schema::atm);
  ASSERT_EQ(build.features.vectors.size(), 8u);
  std::map<std::string, int> per_group;
  for (const auto& v : build.features.vectors) {
    ++per_group[v.group_key];
    EXPECT_EQ(v.label, v.doc_id == "d209" ? 1 : 0);
    EXPECT_EQ(v.values.size(), 8u);
    EXPECT_EQ(v.values[atm::query_length], 1.0);
  }
  EXPECT_EQ(per_group, (std::map<std::string, int>{{"11:1", 4}, {"11:2", 4}}));
}

TEST(Pipeline, PmtmUsesExternalScores) {
  const Corpus kept = filter_corpus(sample_corpus(), FilterRules::defaults()).kept;
  PipelineOptions opts;
  opts.kind = PipelineKind::pmtm;
  opts.adhoc_scores.set("11:1", "d209", 4.0);
  opts.session_scores.set("11:2", "d216", -2.0);
  const auto build = build_session_features(sample_sessions(), kept, opts);
  EXPECT_EQ(build.features.schema, Schema::pmtm);
  EXPECT_EQ(build.missing_adhoc, 7u);
  EXPECT_EQ(build.missing_session, 7u);
  for (const auto& v : build.features.vectors) {
    ASSERT_EQ(v.values.size(), 11u);
    if (v.group_key == "11:1" && v.doc_id == "d209") EXPECT_EQ(v.values[pmtm::neural_adhoc], 4.0);
    if (v.group_key == "11:2" && v.doc_id == "d216") {
      EXPECT_EQ(v.values[pmtm::neural_session], -2.0);
    }
  }
}

TEST(Pipeline, PerQueryStatsScope) {
  const Corpus kept = filter_corpus(sample_corpus(), FilterRules::defaults()).kept;
  PipelineOptions corpus_scope, query_scope;
  query_scope.stats_scope = StatsScope::per_query;
  const auto a = build_session_features(sample_sessions(), kept, corpus_scope);
  const auto b = build_session_features(sample_sessions(), kept, query_scope);
  ASSERT_EQ(a.features.vectors.size(), b.features.vectors.size());
  // Same candidates (the kept corpus is exactly the candidate set here).
  for (std::size_t i = 0; i < a.features.vectors.size(); ++i) {
    EXPECT_EQ(a.features.vectors[i].values, b.features.vectors[i].values);
  }
}

TEST(Pipeline, TurnsWithoutCandidatesAreSkipped) {
  Corpus c;
  c.add(Document::from_raw("d999", "nothing to do with the sample"));
  const auto build = build_session_features(sample_sessions(), c, PipelineOptions{});
  EXPECT_EQ(build.groups, 0u);
  EXPECT_EQ(build.skipped_turns, 2u);
  EXPECT_TRUE(build.features.vectors.empty());
}

TEST(Pipeline, ClickQrels) {
  const Corpus kept = filter_corpus(sample_corpus(), FilterRules::defaults()).kept;
  const auto q = click_qrels(sample_sessions(), kept);
  EXPECT_EQ(q.label("11:1", "d209"), 1);
  EXPECT_EQ(q.label("11:2", "d209"), 1);
  EXPECT_EQ(q.label("11:1", "d210"), 0);
  EXPECT_EQ(q.judged_labels("11:1").size(), 4u);
}

TEST(Pipeline, RerankOrdersByModelScore) {
  const Corpus kept = filter_corpus(sample_corpus(), FilterRules::defaults()).kept;
  const auto build = build_session_features(sample_sessions(), kept, PipelineOptions{});
  ltr::LtrModel m;
  m.feature_count = 8;
  m.shrinkage = 1.0;
  // Score = doc length bucket: longer documents first.
  m.trees.push_back(ltr::RegressionTree({ltr::TreeNode{atm::doc_length, 5.5, 1, 2, 0},
                                         ltr::TreeNode{-1, 0, -1, -1, 0.0},
                                         ltr::TreeNode{-1, 0, -1, -1, 1.0}}));
  const auto run = rerank(m, build.features, "atm");
  ASSERT_EQ(run.size(), 8u);
  EXPECT_NO_THROW(eval::check_run(run));
  for (const auto& e : run) {
    EXPECT_EQ(e.run_tag, "atm");
    double expected = 0;
    for (const auto& v : build.features.vectors) {
      if (v.group_key == e.group_key && v.doc_id == e.doc_id) expected = ltr::predict(m, v);
    }
    EXPECT_EQ(e.score, expected);
  }
  // Per group: d209 (9 tokens) then d210 (6) first; the 5-token docs tie and follow by id.
  EXPECT_EQ(run[0].doc_id, "d209");
  EXPECT_EQ(run[1].doc_id, "d210");
  EXPECT_EQ(run[2].doc_id, "d215");
  EXPECT_EQ(run[3].doc_id, "d216");
}

TEST(Pipeline, RerankRejectsSchemaMismatch) {
  const Corpus kept = filter_corpus(sample_corpus(), FilterRules::defaults()).kept;
  const auto build = build_session_features(sample_sessions(), kept, PipelineOptions{});
  ltr::LtrModel m;
  m.schema = Schema::pmtm;
  m.feature_count = 11;
  EXPECT_THROW(rerank(m, build.features, "x"), Error);
}

TEST(Pipeline, RankByFeature) {
  const Corpus kept = filter_corpus(sample_corpus(), FilterRules::defaults()).kept;
  const auto build = build_session_features(sample_sessions(), kept, PipelineOptions{});
  const auto run = rank_by_feature(build.features, atm::bm25, "bm25");
  EXPECT_NO_THROW(eval::check_run(run));
  EXPECT_EQ(run.size(), 8u);
}

TEST(Pipeline, ParseNames) {
  EXPECT_EQ(parse_pipeline_kind("atm"), PipelineKind::atm);
  EXPECT_EQ(parse_pipeline_kind("pmtm"), PipelineKind::pmtm);
  EXPECT_FALSE(parse_pipeline_kind("bert").has_value());
  EXPECT_EQ(parse_stats_scope("per-query"), StatsScope::per_query);
  EXPECT_EQ(parse_stats_scope("corpus"), StatsScope::corpus);
  EXPECT_FALSE(parse_stats_scope("global").has_value());
  EXPECT_EQ(schema_for(PipelineKind::pmtm), Schema::pmtm);
}

}  // namespace
}  // namespace sessrank
