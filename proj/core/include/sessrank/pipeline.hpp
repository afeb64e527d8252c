#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sessrank/document.hpp"
#include "sessrank/eval.hpp"
#include "sessrank/features.hpp"
#include "sessrank/filter.hpp"
#include "sessrank/ltr/model.hpp"
#include "sessrank/scorers.hpp"
#include "sessrank/session_log.hpp"

namespace sessrank {

// atm: traditional scorers only. pmtm: adds the two neural reranker scores.
enum class PipelineKind { atm, pmtm };
std::optional<PipelineKind> parse_pipeline_kind(std::string_view name);
Schema schema_for(PipelineKind kind);

enum class StatsScope { corpus, per_query };
std::optional<StatsScope> parse_stats_scope(std::string_view name);

struct PipelineOptions {
  PipelineKind kind = PipelineKind::atm;
  StatsScope stats_scope = StatsScope::corpus;
  ScorerParams scorer;
  PmtmOptions pmtm;
  ExternalScores adhoc_scores;
  ExternalScores session_scores;
};

struct FeatureBuild {
  FeatureSet features;
  std::size_t groups = 0;
  std::size_t skipped_turns = 0;        // no candidate survived filtering
  std::size_t unavailable_docs = 0;     // impressions absent from the corpus
  std::size_t missing_adhoc = 0;
  std::size_t missing_session = 0;
};

// One group per session turn, keyed by turn_key(). Candidates are the turn's
// impressions that resolve in `corpus` (which should already be filtered), in
// SERP order; repeated doc ids keep their first impression. Label is 1 for a
// clicked document, else 0.
FeatureBuild build_session_features(const std::vector<Session>& sessions, const Corpus& corpus,
                                    const PipelineOptions& options);

// Click labels of every resolvable impression, keyed like the features.
eval::Qrels click_qrels(const std::vector<Session>& sessions, const Corpus& corpus);

// Scores every vector with the model and ranks within each group.
eval::Run rerank(const ltr::LtrModel& model, const FeatureSet& features,
                 const std::string& run_tag);

// Ranks by a single feature column, e.g. the BM25 baseline.
eval::Run rank_by_feature(const FeatureSet& features, std::size_t feature_index,
                          const std::string& run_tag);

}  // namespace sessrank
