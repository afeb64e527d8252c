#include "sessrank/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "sessrank/error.hpp"
#include "sessrank/text.hpp"

namespace sessrank {

std::size_t feature_count(Schema schema) {
  return schema == Schema::atm ? 8 : 11;
}

std::string_view to_string(Schema schema) {
  return schema == Schema::atm ? "atm" : "pmtm";
}

std::optional<Schema> parse_schema(std::string_view name) {
  if (name == "atm") return Schema::atm;
  if (name == "pmtm") return Schema::pmtm;
  return std::nullopt;
}

const std::vector<std::string_view>& feature_names(Schema schema) {
  static const std::vector<std::string_view> atm_names = {
      "bm25", "rank_bm25", "tfidf", "rank_tfidf",
      "f1exp", "rank_f1exp", "doc_length", "query_length"};
  static const std::vector<std::string_view> pmtm_names = {
      "doc_length", "query_length", "doc_id", "neural_adhoc",
      "neural_session", "bm25", "tfidf", "f1exp",
      "rank_bm25", "rank_tfidf", "rank_f1exp"};
  return schema == Schema::atm ? atm_names : pmtm_names;
}

void FeatureSet::check() const {
  const std::size_t width = feature_count(schema);
  for (const auto& v : vectors) {
    if (v.values.size() != width) {
      throw Error(Errc::schema_mismatch,
                  "vector for " + v.group_key + "/" + v.doc_id + " has " +
                      std::to_string(v.values.size()) + " values, schema " +
                      std::string(to_string(schema)) + " needs " + std::to_string(width));
    }
    for (double x : v.values) {
      if (!std::isfinite(x)) {
        throw Error(Errc::schema_mismatch,
                    "non-finite feature for " + v.group_key + "/" + v.doc_id);
      }
    }
  }
}

std::map<std::string, int> rank_feature(
    std::span<const std::pair<std::string, double>> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a].second != scores[b].second) return scores[a].second > scores[b].second;
    return scores[a].first < scores[b].first;
  });
  std::map<std::string, int> ranks;
  for (std::size_t r = 0; r < order.size(); ++r) {
    ranks.emplace(scores[order[r]].first, static_cast<int>(r + 1));
  }
  return ranks;
}

void ExternalScores::set(std::string group_key, std::string doc_id, double score) {
  scores_[{std::move(group_key), std::move(doc_id)}] = score;
}

std::optional<double> ExternalScores::get(std::string_view group_key,
                                          std::string_view doc_id) const {
  auto it = scores_.find(std::pair<std::string, std::string>(group_key, doc_id));
  if (it == scores_.end()) return std::nullopt;
  return it->second;
}

ExternalScores read_external_scores(std::istream& in) {
  ExternalScores scores;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
      throw Error(Errc::malformed_line, "expected group_key<TAB>doc_id<TAB>score", line_no);
    }
    std::string group = line.substr(0, t1);
    std::string doc = line.substr(t1 + 1, t2 - t1 - 1);
    auto score = parse_double(trim(std::string_view(line).substr(t2 + 1)));
    if (group.empty() || doc.empty() || !score || !std::isfinite(*score)) {
      throw Error(Errc::malformed_line, "bad external score row", line_no);
    }
    if (scores.get(group, doc)) {
      throw Error(Errc::malformed_line, "repeated key " + group + "/" + doc, line_no);
    }
    scores.set(std::move(group), std::move(doc), *score);
  }
  return scores;
}

ExternalScores load_external_scores(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::unreadable_source, "cannot open " + path);
  try {
    return read_external_scores(in);
  } catch (const Error& e) {
    throw e.with_source(path);
  }
}

void write_external_scores(const ExternalScores& scores, std::ostream& out) {
  for (const auto& [key, score] : scores) {
    out << key.first << '\t' << key.second << '\t' << format_double(score) << '\n';
  }
}

double numeric_doc_id(std::string_view doc_id) {
  if (doc_id.size() < 2 || doc_id.front() != 'd') {
    throw Error(Errc::unparseable_doc_id, std::string(doc_id));
  }
  std::string_view digits = doc_id.substr(1);
  if (!std::all_of(digits.begin(), digits.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(Errc::unparseable_doc_id, std::string(doc_id));
  }
  auto value = parse_int(digits);
  if (!value) throw Error(Errc::unparseable_doc_id, std::string(doc_id));
  return static_cast<double>(*value);
}

namespace {

struct TraditionalScores {
  std::vector<double> bm25, tfidf, f1exp;
  std::vector<int> rank_bm25, rank_tfidf, rank_f1exp;
};

std::vector<int> ranks_of(std::span<const Document* const> docs,
                          const std::vector<double>& scores) {
  std::vector<std::pair<std::string, double>> keyed;
  keyed.reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) keyed.emplace_back(docs[i]->doc_id, scores[i]);
  auto ranks = rank_feature(keyed);
  std::vector<int> out;
  out.reserve(docs.size());
  for (const auto* doc : docs) out.push_back(ranks.at(doc->doc_id));
  return out;
}

TraditionalScores score_candidates(const Query& q, std::span<const Document* const> docs,
                                   const CorpusStats& stats, const ScorerParams& params) {
  if (docs.empty()) throw Error(Errc::empty_candidate_set, "query " + q.qid);
  TraditionalScores s;
  for (const auto* doc : docs) {
    s.bm25.push_back(bm25(q, *doc, stats, params.bm25));
    s.tfidf.push_back(tfidf(q, *doc, stats));
    s.f1exp.push_back(f1exp(q, *doc, stats, params.f1exp));
  }
  s.rank_bm25 = ranks_of(docs, s.bm25);
  s.rank_tfidf = ranks_of(docs, s.tfidf);
  s.rank_f1exp = ranks_of(docs, s.f1exp);
  return s;
}

}  // namespace

std::vector<FeatureVector> extract_atm(const Query& q, std::string_view group_key,
                                       std::span<const Document* const> candidates,
                                       const CorpusStats& stats,
                                       const ScorerParams& params) {
  const auto s = score_candidates(q, candidates, stats, params);
  std::vector<FeatureVector> out;
  out.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    FeatureVector v;
    v.group_key = group_key;
    v.doc_id = candidates[i]->doc_id;
    v.values = {
        s.bm25[i],  static_cast<double>(s.rank_bm25[i]),
        s.tfidf[i], static_cast<double>(s.rank_tfidf[i]),
        s.f1exp[i], static_cast<double>(s.rank_f1exp[i]),
        static_cast<double>(candidates[i]->token_length()),
        static_cast<double>(q.token_length()),
    };
    out.push_back(std::move(v));
  }
  return out;
}

PmtmResult extract_pmtm(const Query& q, std::string_view group_key,
                        std::span<const Document* const> candidates,
                        const CorpusStats& stats, const ScorerParams& params,
                        const ExternalScores& adhoc, const ExternalScores& session,
                        const PmtmOptions& options) {
  const auto s = score_candidates(q, candidates, stats, params);
  PmtmResult result;
  result.vectors.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Document& doc = *candidates[i];
    const double id_value = numeric_doc_id(doc.doc_id);
    auto a = adhoc.get(group_key, doc.doc_id);
    auto b = session.get(group_key, doc.doc_id);
    if (!a) ++result.missing_adhoc;
    if (!b) ++result.missing_session;

    FeatureVector v;
    v.group_key = group_key;
    v.doc_id = doc.doc_id;
    v.values = {
        static_cast<double>(doc.token_length()),
        static_cast<double>(q.token_length()),
        options.drop_doc_id ? 0.0 : id_value,
        a.value_or(0.0),
        b.value_or(0.0),
        s.bm25[i],
        s.tfidf[i],
        s.f1exp[i],
        static_cast<double>(s.rank_bm25[i]),
        static_cast<double>(s.rank_tfidf[i]),
        static_cast<double>(s.rank_f1exp[i]),
    };
    result.vectors.push_back(std::move(v));
  }
  return result;
}

}  // namespace sessrank
