#include "sessrank/scorers.hpp"

#include <cmath>
#include <unordered_set>
#include <vector>

#include "sessrank/error.hpp"

namespace sessrank {

namespace {

// Counts, for each distinct query term, its occurrences in the query and in
// the document, in first-occurrence order of the query.
struct MatchedTerm {
  const std::string* term;
  std::size_t query_count;
  std::size_t doc_count;
};

std::vector<MatchedTerm> match_terms(const Query& q, const Document& d) {
  std::vector<MatchedTerm> terms;
  std::unordered_map<std::string_view, std::size_t> index;
  for (const auto& tok : q.text) {
    auto [it, inserted] = index.try_emplace(tok, terms.size());
    if (inserted) {
      terms.push_back({&tok, 1, 0});
    } else {
      ++terms[it->second].query_count;
    }
  }
  if (terms.empty()) return terms;
  for (const auto& tok : d.text) {
    auto it = index.find(tok);
    if (it != index.end()) ++terms[it->second].doc_count;
  }
  return terms;
}

template <typename DocRange>
CorpusStats build_stats_impl(const DocRange& docs) {
  CorpusStats stats;
  std::size_t total_len = 0;
  std::unordered_set<std::string_view> seen;
  for (const Document& doc : docs) {
    ++stats.n_docs;
    total_len += doc.token_length();
    seen.clear();
    for (const auto& tok : doc.text) {
      if (seen.insert(tok).second) ++stats.df[tok];
    }
  }
  if (stats.n_docs == 0) throw Error(Errc::empty_corpus, "cannot build statistics");
  stats.built_over = stats.n_docs;
  stats.avgdl = static_cast<double>(total_len) / static_cast<double>(stats.n_docs);
  return stats;
}

struct DerefRange {
  std::span<const Document* const> docs;
  struct iterator {
    const Document* const* p;
    const Document& operator*() const { return **p; }
    iterator& operator++() { ++p; return *this; }
    bool operator!=(const iterator& o) const { return p != o.p; }
  };
  iterator begin() const { return {docs.data()}; }
  iterator end() const { return {docs.data() + docs.size()}; }
};

struct CorpusValues {
  const Corpus& corpus;
  struct iterator {
    Corpus::Map::const_iterator it;
    const Document& operator*() const { return it->second; }
    iterator& operator++() { ++it; return *this; }
    bool operator!=(const iterator& o) const { return it != o.it; }
  };
  iterator begin() const { return {corpus.begin()}; }
  iterator end() const { return {corpus.end()}; }
};

}  // namespace

CorpusStats build_stats(const Corpus& corpus) {
  return build_stats_impl(CorpusValues{corpus});
}

CorpusStats build_stats(std::span<const Document* const> docs) {
  return build_stats_impl(DerefRange{docs});
}

void Bm25Params::validate() const {
  if (!(k1 > 0.0)) throw Error(Errc::invalid_argument, "bm25 k1 must be > 0");
  if (!(b >= 0.0 && b <= 1.0)) throw Error(Errc::invalid_argument, "bm25 b must be in [0,1]");
}

void F1ExpParams::validate() const {
  if (!(s > 0.0)) throw Error(Errc::invalid_argument, "f1exp s must be > 0");
  if (!(k > 0.0)) throw Error(Errc::invalid_argument, "f1exp k must be > 0");
}

double bm25_idf(std::size_t n_docs, std::size_t df) {
  const double n = static_cast<double>(n_docs);
  const double f = static_cast<double>(df);
  return std::log(1.0 + (n - f + 0.5) / (f + 0.5));
}

double bm25(const Query& q, const Document& d, const CorpusStats& stats,
            const Bm25Params& p) {
  const double len_norm =
      p.k1 * (1.0 - p.b + p.b * static_cast<double>(d.token_length()) / stats.avgdl);
  double score = 0.0;
  for (const auto& m : match_terms(q, d)) {
    if (m.doc_count == 0) continue;
    const std::size_t df = stats.doc_freq(*m.term);
    if (df == 0) continue;
    const double tf = static_cast<double>(m.doc_count);
    const double per_term =
        bm25_idf(stats.n_docs, df) * tf * (p.k1 + 1.0) / (tf + len_norm);
    score += static_cast<double>(m.query_count) * per_term;
  }
  return score;
}

double tfidf(const Query& q, const Document& d, const CorpusStats& stats) {
  double score = 0.0;
  for (const auto& m : match_terms(q, d)) {
    if (m.doc_count == 0) continue;
    const std::size_t df = stats.doc_freq(*m.term);
    if (df == 0) continue;
    const double idf =
        std::log(static_cast<double>(stats.n_docs) / static_cast<double>(df));
    score += static_cast<double>(m.query_count) * static_cast<double>(m.doc_count) * idf;
  }
  return score;
}

double f1exp(const Query& q, const Document& d, const CorpusStats& stats,
             const F1ExpParams& p) {
  const double len_norm =
      (stats.avgdl + p.s) / (stats.avgdl + static_cast<double>(d.token_length()) * p.s);
  const double n1 = static_cast<double>(stats.n_docs) + 1.0;
  double score = 0.0;
  for (const auto& m : match_terms(q, d)) {
    if (m.doc_count == 0) continue;
    const std::size_t df = stats.doc_freq(*m.term);
    if (df == 0) continue;
    const double tf_part = 1.0 + std::log(1.0 + std::log(static_cast<double>(m.doc_count)));
    const double idf_part = std::pow(n1 / static_cast<double>(df), p.k);
    score += static_cast<double>(m.query_count) * tf_part * len_norm * idf_part;
  }
  return score;
}

}  // namespace sessrank
