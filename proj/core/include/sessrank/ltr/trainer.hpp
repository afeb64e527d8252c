#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sessrank/features.hpp"
#include "sessrank/ltr/model.hpp"

namespace sessrank::ltr {

// Defaults mirror RankLib's LambdaMART.
struct LtrParams {
  int n_trees = 1000;
  int n_leaves = 10;
  double shrinkage = 0.1;
  int min_leaf_support = 1;
  int n_threshold_candidates = 256;
  int train_metric_k = 10;
  double sigma = 1.0;
  int early_stop_rounds = 100;  // only with a validation set
  // Recorded with the run; the boosting loop itself makes no random choices.
  std::uint64_t seed = 42;
  int threads = 1;

  // Throws Error(invalid_argument).
  void validate() const;
};

struct RoundLog {
  std::size_t round = 0;  // number of trees in the ensemble
  double train_ndcg = 0.0;
  std::optional<double> valid_ndcg;
};

struct TrainResult {
  LtrModel model;
  std::vector<RoundLog> log;
  std::size_t best_round = 0;  // trees kept
};

using RoundCallback = std::function<void(const RoundLog&)>;

// LambdaMART boosting. Each round scores every row with the current
// ensemble, computes per-group lambdas and weights under NDCG@train_metric_k,
// fits one regression tree to them and appends it with shrinkage.
//
// With a validation set, the mean validation NDCG@k is tracked and the model
// is cut back to the best round once early_stop_rounds pass without
// improvement. Output depends only on the inputs and their order.
//
// Throws Error(schema_mismatch) or Error(no_trainable_pairs).
TrainResult train(const FeatureSet& train_set, const FeatureSet* valid_set,
                  const LtrParams& params, const RoundCallback& on_round = {});

// Mean NDCG@k of `scores` over groups with nonzero ideal DCG; equal scores are
// ordered by doc_id as in a run file. Zero-ideal groups are skipped.
double mean_ndcg(const FeatureSet& set, std::span<const double> scores, int k);

}  // namespace sessrank::ltr
