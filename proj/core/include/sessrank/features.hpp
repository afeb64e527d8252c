#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sessrank/document.hpp"
#include "sessrank/scorers.hpp"
#include "sessrank/session_log.hpp"

namespace sessrank {

// Feature layouts.
//
//   atm  (8):  bm25, rank_bm25, tfidf, rank_tfidf, f1exp, rank_f1exp,
//              doc_length, query_length
//   pmtm (11): doc_length, query_length, doc_id, neural_adhoc, neural_session,
//              bm25, tfidf, f1exp, rank_bm25, rank_tfidf, rank_f1exp
enum class Schema { atm, pmtm };

std::size_t feature_count(Schema schema);
std::string_view to_string(Schema schema);
std::optional<Schema> parse_schema(std::string_view name);
const std::vector<std::string_view>& feature_names(Schema schema);

namespace atm {
enum Index : std::size_t {
  bm25 = 0, rank_bm25, tfidf, rank_tfidf, f1exp, rank_f1exp, doc_length, query_length
};
}  // namespace atm

namespace pmtm {
enum Index : std::size_t {
  doc_length = 0, query_length, doc_id, neural_adhoc, neural_session,
  bm25, tfidf, f1exp, rank_bm25, rank_tfidf, rank_f1exp
};
}  // namespace pmtm

struct FeatureVector {
  std::string group_key;
  std::string doc_id;
  int label = 0;
  std::vector<double> values;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

struct FeatureSet {
  Schema schema = Schema::atm;
  std::vector<FeatureVector> vectors;

  // Throws Error(schema_mismatch) if any vector has the wrong width or a
  // non-finite value.
  void check() const;
};

// Rank 1 for the highest score; equal scores are ordered by doc_id.
std::map<std::string, int> rank_feature(
    std::span<const std::pair<std::string, double>> scores);

// (group_key, doc_id) -> score produced by an external reranker.
class ExternalScores {
 public:
  void set(std::string group_key, std::string doc_id, double score);
  std::optional<double> get(std::string_view group_key, std::string_view doc_id) const;
  std::size_t size() const noexcept { return scores_.size(); }
  bool empty() const noexcept { return scores_.empty(); }

  auto begin() const { return scores_.begin(); }
  auto end() const { return scores_.end(); }

  friend bool operator==(const ExternalScores&, const ExternalScores&) = default;

 private:
  std::map<std::pair<std::string, std::string>, double, std::less<>> scores_;
};

// `group_key<TAB>doc_id<TAB>score` per line. Throws Error(malformed_line) on
// bad fields, non-finite scores or repeated keys.
ExternalScores read_external_scores(std::istream& in);
ExternalScores load_external_scores(const std::string& path);
void write_external_scores(const ExternalScores& scores, std::ostream& out);

// Traditional-method features. Labels are left at 0; callers assign them.
// Throws Error(empty_candidate_set).
std::vector<FeatureVector> extract_atm(const Query& q, std::string_view group_key,
                                       std::span<const Document* const> candidates,
                                       const CorpusStats& stats,
                                       const ScorerParams& params = {});

struct PmtmOptions {
  // Ablation: emit 0 for the document-id feature instead of the numeric id.
  bool drop_doc_id = false;
};

struct PmtmResult {
  std::vector<FeatureVector> vectors;
  std::size_t missing_adhoc = 0;
  std::size_t missing_session = 0;
};

// Traditional features plus the two external neural scores. Missing external
// scores become 0.0 and are counted. Throws Error(empty_candidate_set) or
// Error(unparseable_doc_id).
PmtmResult extract_pmtm(const Query& q, std::string_view group_key,
                        std::span<const Document* const> candidates,
                        const CorpusStats& stats, const ScorerParams& params,
                        const ExternalScores& adhoc, const ExternalScores& session,
                        const PmtmOptions& options = {});

// "d209" -> 209. Throws Error(unparseable_doc_id).
double numeric_doc_id(std::string_view doc_id);

}  // namespace sessrank
