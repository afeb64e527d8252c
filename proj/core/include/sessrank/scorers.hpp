#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>

#include "sessrank/document.hpp"
#include "sessrank/session_log.hpp"

namespace sessrank {

// Collection statistics shared by every scorer: N, avgdl and df(t).
struct CorpusStats {
  std::size_t n_docs = 0;
  double avgdl = 0.0;
  std::unordered_map<std::string, std::size_t> df;
  std::size_t built_over = 0;

  std::size_t doc_freq(const std::string& term) const {
    auto it = df.find(term);
    return it == df.end() ? 0 : it->second;
  }
};

// Throws Error(empty_corpus).
CorpusStats build_stats(const Corpus& corpus);
CorpusStats build_stats(std::span<const Document* const> docs);

struct Bm25Params {
  double k1 = 2.0;
  double b = 0.5;

  void validate() const;
};

struct F1ExpParams {
  double s = 0.5;   // length normalization
  double k = 0.35;  // idf exponent

  void validate() const;
};

struct ScorerParams {
  Bm25Params bm25;
  F1ExpParams f1exp;
};

// ln(1 + (N - df + 0.5) / (df + 0.5)); never negative.
double bm25_idf(std::size_t n_docs, std::size_t df);

// Okapi BM25 summed over query tokens (repeated query terms count again).
// Out-of-vocabulary terms contribute nothing.
double bm25(const Query& q, const Document& d, const CorpusStats& stats,
            const Bm25Params& p = {});

// Raw TF times ln(N / df).
double tfidf(const Query& q, const Document& d, const CorpusStats& stats);

// Axiomatic F1-EXP:
//   sum over t in q with C(t,d) > 0 of
//     C(t,q) * F(C(t,d)) * LN(d) * ((N + 1) / df(t))^k
// with F(x) = 1 + ln(1 + ln x) and LN(d) = (avgdl + s) / (avgdl + |d| s).
double f1exp(const Query& q, const Document& d, const CorpusStats& stats,
             const F1ExpParams& p = {});

}  // namespace sessrank
