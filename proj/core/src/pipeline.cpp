#include "sessrank/pipeline.hpp"

#include <functional>
#include <map>
#include <set>

#include "sessrank/asq.hpp"
#include "sessrank/error.hpp"

namespace sessrank {

std::optional<PipelineKind> parse_pipeline_kind(std::string_view name) {
  if (name == "atm") return PipelineKind::atm;
  if (name == "pmtm") return PipelineKind::pmtm;
  return std::nullopt;
}

Schema schema_for(PipelineKind kind) {
  return kind == PipelineKind::atm ? Schema::atm : Schema::pmtm;
}

std::optional<StatsScope> parse_stats_scope(std::string_view name) {
  if (name == "corpus") return StatsScope::corpus;
  if (name == "per-query") return StatsScope::per_query;
  return std::nullopt;
}

namespace {

struct Candidates {
  std::vector<const Document*> docs;
  std::vector<int> labels;
  std::size_t unavailable = 0;
};

Candidates resolve(const QueryTurn& turn, const Corpus& corpus) {
  Candidates c;
  std::map<std::string_view, std::size_t> seen;
  for (const auto& imp : turn.impressions) {
    const Document* doc = corpus.find(imp.doc_id);
    if (!doc) {
      ++c.unavailable;
      continue;
    }
    auto [it, inserted] = seen.try_emplace(doc->doc_id, c.docs.size());
    if (inserted) {
      c.docs.push_back(doc);
      c.labels.push_back(imp.clicked ? 1 : 0);
    } else if (imp.clicked) {
      c.labels[it->second] = 1;
    }
  }
  return c;
}

std::map<std::string, std::vector<std::pair<std::string, double>>> scores_by_group(
    const FeatureSet& features, const std::function<double(const FeatureVector&)>& score) {
  std::map<std::string, std::vector<std::pair<std::string, double>>> groups;
  std::map<std::string, std::set<std::string>> seen;
  for (const auto& v : features.vectors) {
    if (!seen[v.group_key].insert(v.doc_id).second) {
      throw Error(Errc::invalid_argument,
                  "doc " + v.doc_id + " appears twice in group " + v.group_key);
    }
    groups[v.group_key].emplace_back(v.doc_id, score(v));
  }
  return groups;
}

eval::Run rank_groups(const FeatureSet& features,
                      const std::function<double(const FeatureVector&)>& score,
                      const std::string& run_tag) {
  eval::Run run;
  for (const auto& [key, scored] : scores_by_group(features, score)) {
    auto ranked = eval::rank_group(key, scored, run_tag);
    run.insert(run.end(), ranked.begin(), ranked.end());
  }
  return run;
}

}  // namespace

FeatureBuild build_session_features(const std::vector<Session>& sessions, const Corpus& corpus,
                                    const PipelineOptions& options) {
  options.scorer.bm25.validate();
  options.scorer.f1exp.validate();

  FeatureBuild out;
  out.features.schema = schema_for(options.kind);

  std::optional<CorpusStats> corpus_stats;
  if (options.stats_scope == StatsScope::corpus) corpus_stats = build_stats(corpus);

  for (const auto& session : sessions) {
    for (std::size_t t = 0; t < session.turns.size(); ++t) {
      const QueryTurn& turn = session.turns[t];
      Candidates c = resolve(turn, corpus);
      out.unavailable_docs += c.unavailable;
      if (c.docs.empty()) {
        ++out.skipped_turns;
        continue;
      }
      const CorpusStats stats = corpus_stats ? *corpus_stats : build_stats(c.docs);
      const std::string key = turn_key(session, t);

      std::vector<FeatureVector> vectors;
      if (options.kind == PipelineKind::atm) {
        vectors = extract_atm(turn.query, key, c.docs, stats, options.scorer);
      } else {
        auto r = extract_pmtm(turn.query, key, c.docs, stats, options.scorer,
                              options.adhoc_scores, options.session_scores, options.pmtm);
        out.missing_adhoc += r.missing_adhoc;
        out.missing_session += r.missing_session;
        vectors = std::move(r.vectors);
      }
      for (std::size_t i = 0; i < vectors.size(); ++i) vectors[i].label = c.labels[i];
      out.features.vectors.insert(out.features.vectors.end(),
                                  std::make_move_iterator(vectors.begin()),
                                  std::make_move_iterator(vectors.end()));
      ++out.groups;
    }
  }
  return out;
}

eval::Qrels click_qrels(const std::vector<Session>& sessions, const Corpus& corpus) {
  eval::Qrels qrels;
  for (const auto& session : sessions) {
    for (std::size_t t = 0; t < session.turns.size(); ++t) {
      Candidates c = resolve(session.turns[t], corpus);
      const std::string key = turn_key(session, t);
      for (std::size_t i = 0; i < c.docs.size(); ++i) qrels.set(key, c.docs[i]->doc_id, c.labels[i]);
    }
  }
  return qrels;
}

eval::Run rerank(const ltr::LtrModel& model, const FeatureSet& features,
                 const std::string& run_tag) {
  if (features.schema != model.schema) {
    throw Error(Errc::schema_mismatch, "model schema " + std::string(to_string(model.schema)) +
                                           " vs features " +
                                           std::string(to_string(features.schema)));
  }
  return rank_groups(
      features, [&](const FeatureVector& v) { return ltr::predict(model, v); }, run_tag);
}

eval::Run rank_by_feature(const FeatureSet& features, std::size_t feature_index,
                          const std::string& run_tag) {
  if (feature_index >= feature_count(features.schema)) {
    throw Error(Errc::index_out_of_range, "feature index " + std::to_string(feature_index));
  }
  return rank_groups(
      features, [&](const FeatureVector& v) { return v.values.at(feature_index); }, run_tag);
}

}  // namespace sessrank
