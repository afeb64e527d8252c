#pragma once

// Seeded synthetic datasets used by tests, the acceptance suite and the
// benchmarks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sessrank/document.hpp"
#include "sessrank/features.hpp"
#include "sessrank/scorers.hpp"
#include "sessrank/session_log.hpp"

namespace sessrank::synthetic {

inline std::string group_name(const char* prefix, std::size_t g) {
  return std::string(prefix) + std::to_string(g);
}

// ATM-width vectors with uniform [0,1) values; label = feature 3 > 0.7.
inline FeatureSet separable_task(std::uint64_t seed, std::size_t groups = 20,
                                 std::size_t docs_per_group = 10) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  FeatureSet set;
  set.schema = Schema::atm;
  for (std::size_t g = 0; g < groups; ++g) {
    for (std::size_t d = 0; d < docs_per_group; ++d) {
      FeatureVector v;
      v.group_key = group_name("g", g);
      v.doc_id = "d" + std::to_string(g * docs_per_group + d);
      v.values.resize(feature_count(Schema::atm));
      for (auto& x : v.values) x = unit(rng);
      v.label = v.values[3] > 0.7 ? 1 : 0;
      set.vectors.push_back(std::move(v));
    }
  }
  return set;
}

struct SessionBenchmark {
  Corpus corpus;
  FeatureSet train;
  FeatureSet valid;
  FeatureSet test;
};

// Query groups over a Zipfian vocabulary. Graded relevance (0-3) is a noisy
// monotone function of the BM25 score normalized within the group, plus a
// bonus for short documents that BM25 alone does not capture.
inline SessionBenchmark session_benchmark(std::uint64_t seed, std::size_t train_groups = 100,
                                          std::size_t valid_groups = 50,
                                          std::size_t test_groups = 100) {
  constexpr std::size_t kVocab = 300;
  constexpr std::size_t kDocsPerGroup = 10;
  std::mt19937_64 rng(seed);

  std::vector<double> zipf(kVocab);
  for (std::size_t i = 0; i < kVocab; ++i) zipf[i] = 1.0 / static_cast<double>(i + 1);
  std::discrete_distribution<std::size_t> pick_term(zipf.begin(), zipf.end());
  std::uniform_int_distribution<std::size_t> pick_query_term(20, 150);
  std::uniform_int_distribution<std::size_t> doc_len(10, 200);
  std::uniform_int_distribution<int> planted_tf(1, 5);
  std::bernoulli_distribution planted(0.6);
  std::normal_distribution<double> noise(0.0, 0.35);

  auto term = [](std::size_t i) { return "t" + std::to_string(i); };

  const std::size_t total = train_groups + valid_groups + test_groups;
  std::vector<Query> queries(total);
  std::vector<std::vector<std::string>> group_docs(total);

  SessionBenchmark out;
  std::size_t next_doc = 1;
  for (std::size_t g = 0; g < total; ++g) {
    Query& q = queries[g];
    q.qid = group_name("q", g);
    std::size_t a = pick_query_term(rng), b;
    do b = pick_query_term(rng); while (b == a);
    q.text = {term(a), term(b)};

    for (std::size_t d = 0; d < kDocsPerGroup; ++d) {
      std::vector<std::string> toks;
      const std::size_t len = doc_len(rng);
      for (std::size_t i = 0; i < len; ++i) toks.push_back(term(pick_term(rng)));
      for (const auto& qt : q.text) {
        if (!planted(rng)) continue;
        for (int i = planted_tf(rng); i > 0; --i) {
          std::uniform_int_distribution<std::size_t> at(0, toks.size());
          toks.insert(toks.begin() + static_cast<std::ptrdiff_t>(at(rng)), qt);
        }
      }
      std::string raw;
      for (const auto& t : toks) raw += (raw.empty() ? "" : " ") + t;
      std::string id = "d" + std::to_string(next_doc++);
      out.corpus.add(Document::from_raw(id, raw));
      group_docs[g].push_back(id);
    }
  }

  const CorpusStats stats = build_stats(out.corpus);
  for (std::size_t g = 0; g < total; ++g) {
    std::vector<const Document*> docs;
    for (const auto& id : group_docs[g]) docs.push_back(&out.corpus.at(id));
    auto vectors = extract_atm(queries[g], queries[g].qid, docs, stats);
    double max_bm25 = 0.0;
    for (const auto& v : vectors) max_bm25 = std::max(max_bm25, v.values[atm::bm25]);
    for (auto& v : vectors) {
      const double rel = max_bm25 > 0 ? v.values[atm::bm25] / max_bm25 : 0.0;
      const double short_bonus = v.values[atm::doc_length] < 60 ? 1.2 : 0.0;
      const double latent = 2.2 * rel + short_bonus + noise(rng);
      v.label = std::clamp(static_cast<int>(std::floor(latent)), 0, 3);
    }
    FeatureSet& dest = g < train_groups                ? out.train
                       : g < train_groups + valid_groups ? out.valid
                                                         : out.test;
    dest.schema = Schema::atm;
    dest.vectors.insert(dest.vectors.end(), vectors.begin(), vectors.end());
  }
  return out;
}

// Random small corpora for scorer property tests.
struct RandomCorpus {
  std::vector<std::vector<std::string>> docs;
  std::vector<std::string> vocab;
};

inline RandomCorpus random_corpus(std::mt19937_64& rng, std::size_t max_docs = 20,
                                  std::size_t max_vocab = 8, std::size_t max_len = 12) {
  RandomCorpus rc;
  const std::size_t vocab = std::uniform_int_distribution<std::size_t>(1, max_vocab)(rng);
  for (std::size_t i = 0; i < vocab; ++i) rc.vocab.push_back("w" + std::to_string(i));
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_docs)(rng);
  std::uniform_int_distribution<std::size_t> len(0, max_len), word(0, vocab - 1);
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<std::string> doc;
    const std::size_t l = len(rng);
    for (std::size_t i = 0; i < l; ++i) doc.push_back(rc.vocab[word(rng)]);
    rc.docs.push_back(std::move(doc));
  }
  // At least one token somewhere so avgdl > 0.
  if (std::all_of(rc.docs.begin(), rc.docs.end(), [](const auto& d) { return d.empty(); })) {
    rc.docs.front().push_back(rc.vocab.front());
  }
  return rc;
}

// Query of up to `max_len` words, possibly including out-of-vocabulary terms
// and repeats.
inline std::vector<std::string> random_query(std::mt19937_64& rng, const RandomCorpus& rc,
                                             std::size_t max_len = 5) {
  std::vector<std::string> q;
  const std::size_t l = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  std::uniform_int_distribution<std::size_t> word(0, rc.vocab.size());
  for (std::size_t i = 0; i < l; ++i) {
    const std::size_t w = word(rng);
    q.push_back(w == rc.vocab.size() ? "oov" : rc.vocab[w]);
  }
  return q;
}

inline std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

}  // namespace sessrank::synthetic
