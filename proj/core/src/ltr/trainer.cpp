#include "sessrank/ltr/trainer.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <thread>

#include "sessrank/error.hpp"
#include "sessrank/eval.hpp"
#include "sessrank/ltr/lambdas.hpp"

namespace sessrank::ltr {

namespace {

struct Group {
  std::vector<std::size_t> rows;
};

std::vector<Group> group_rows(const FeatureSet& set) {
  std::vector<Group> groups;
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t r = 0; r < set.vectors.size(); ++r) {
    auto [it, inserted] = index.try_emplace(set.vectors[r].group_key, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].rows.push_back(r);
  }
  return groups;
}

FeatureMatrix to_matrix(const FeatureSet& set) {
  const std::size_t cols = feature_count(set.schema);
  FeatureMatrix x(set.vectors.size(), cols);
  for (std::size_t r = 0; r < set.vectors.size(); ++r) {
    std::copy(set.vectors[r].values.begin(), set.vectors[r].values.end(), x.row(r).begin());
  }
  return x;
}

bool has_pair(const FeatureSet& set, const Group& g) {
  const int first = set.vectors[g.rows.front()].label;
  return std::any_of(g.rows.begin(), g.rows.end(),
                     [&](std::size_t r) { return set.vectors[r].label != first; });
}

double group_ndcg(const FeatureSet& set, const Group& g, std::span<const double> scores, int k) {
  std::vector<std::size_t> order = g.rows;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return set.vectors[a].doc_id < set.vectors[b].doc_id;
  });
  std::vector<int> labels;
  labels.reserve(order.size());
  for (auto r : order) labels.push_back(set.vectors[r].label);
  return eval::ndcg_at_k(labels, k);
}

double mean_ndcg_groups(const FeatureSet& set, const std::vector<Group>& groups,
                        std::span<const double> scores, int k) {
  double sum = 0.0;
  std::size_t counted = 0;
  std::vector<int> labels;
  for (const auto& g : groups) {
    labels.clear();
    for (auto r : g.rows) labels.push_back(set.vectors[r].label);
    if (eval::ideal_dcg_at_k(labels, k) <= 0.0) continue;
    sum += group_ndcg(set, g, scores, k);
    ++counted;
  }
  return counted ? sum / static_cast<double>(counted) : 0.0;
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. Work is split into
// contiguous chunks and each index is handled by exactly one worker, so
// results written per index do not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
}

}  // namespace

void LtrParams::validate() const {
  auto bad = [](const char* what) { throw Error(Errc::invalid_argument, what); };
  if (n_trees < 1) bad("n_trees must be >= 1");
  if (n_leaves < 2) bad("n_leaves must be >= 2");
  if (!(shrinkage > 0.0 && shrinkage <= 1.0)) bad("shrinkage must be in (0, 1]");
  if (min_leaf_support < 1) bad("min_leaf_support must be >= 1");
  if (n_threshold_candidates < 1 || n_threshold_candidates > 65534) {
    bad("n_threshold_candidates must be in [1, 65534]");
  }
  if (train_metric_k < 1) bad("train_metric_k must be >= 1");
  if (!(sigma > 0.0)) bad("sigma must be > 0");
  if (early_stop_rounds < 1) bad("early_stop_rounds must be >= 1");
  if (threads < 1) bad("threads must be >= 1");
}

double mean_ndcg(const FeatureSet& set, std::span<const double> scores, int k) {
  if (scores.size() != set.vectors.size()) {
    throw Error(Errc::length_mismatch, "one score per vector required");
  }
  return mean_ndcg_groups(set, group_rows(set), scores, k);
}

TrainResult train(const FeatureSet& train_set, const FeatureSet* valid_set,
                  const LtrParams& params, const RoundCallback& on_round) {
  params.validate();
  train_set.check();
  if (valid_set) {
    valid_set->check();
    if (valid_set->schema != train_set.schema) {
      throw Error(Errc::schema_mismatch, "validation schema differs from training schema");
    }
  }
  if (train_set.vectors.empty()) throw Error(Errc::no_trainable_pairs, "empty training set");

  const auto groups = group_rows(train_set);
  if (std::none_of(groups.begin(), groups.end(),
                   [&](const Group& g) { return has_pair(train_set, g); })) {
    throw Error(Errc::no_trainable_pairs, "every group has uniform labels");
  }

  const FeatureMatrix x = to_matrix(train_set);
  const FeatureBins bins = make_bins(x, params.n_threshold_candidates);
  const TreeParams tree_params{params.n_leaves, params.min_leaf_support};

  std::vector<int> labels(train_set.vectors.size());
  for (std::size_t r = 0; r < labels.size(); ++r) labels[r] = train_set.vectors[r].label;

  std::vector<Group> valid_groups;
  FeatureMatrix valid_x;
  std::vector<double> valid_scores;
  const bool early_stopping = valid_set != nullptr && !valid_set->vectors.empty();
  if (early_stopping) {
    valid_groups = group_rows(*valid_set);
    valid_x = to_matrix(*valid_set);
    valid_scores.assign(valid_set->vectors.size(), 0.0);
  }

  TrainResult result;
  result.model.schema = train_set.schema;
  result.model.feature_count = feature_count(train_set.schema);
  result.model.shrinkage = params.shrinkage;

  std::vector<double> scores(x.rows(), 0.0);
  std::vector<double> lambdas(x.rows(), 0.0);
  std::vector<double> weights(x.rows(), 0.0);
  std::vector<std::vector<double>> group_buf(groups.size());

  double best_valid = -1.0;
  std::size_t best_round = 0;

  for (int round = 1; round <= params.n_trees; ++round) {
    parallel_for(groups.size(), params.threads, [&](std::size_t gi) {
      const auto& rows = groups[gi].rows;
      const std::size_t n = rows.size();
      auto& buf = group_buf[gi];
      buf.resize(4 * n);
      std::span<double> s(buf.data(), n), l(buf.data() + n, n), w(buf.data() + 2 * n, n);
      std::vector<int> lab(n);
      for (std::size_t i = 0; i < n; ++i) {
        s[i] = scores[rows[i]];
        lab[i] = labels[rows[i]];
      }
      compute_lambdas_into(s, lab, params.train_metric_k, params.sigma, l, w);
      for (std::size_t i = 0; i < n; ++i) {
        lambdas[rows[i]] = l[i];
        weights[rows[i]] = w[i];
      }
    });

    RegressionTree tree = fit_tree(bins, lambdas, weights, tree_params);
    for (std::size_t r = 0; r < x.rows(); ++r) {
      scores[r] += params.shrinkage * tree.evaluate(x.row(r));
    }

    RoundLog entry;
    entry.round = static_cast<std::size_t>(round);
    entry.train_ndcg = mean_ndcg_groups(train_set, groups, scores, params.train_metric_k);
    if (early_stopping) {
      for (std::size_t r = 0; r < valid_x.rows(); ++r) {
        valid_scores[r] += params.shrinkage * tree.evaluate(valid_x.row(r));
      }
      entry.valid_ndcg =
          mean_ndcg_groups(*valid_set, valid_groups, valid_scores, params.train_metric_k);
    }
    result.model.trees.push_back(std::move(tree));
    result.log.push_back(entry);
    if (on_round) on_round(entry);

    if (early_stopping) {
      if (*entry.valid_ndcg > best_valid) {
        best_valid = *entry.valid_ndcg;
        best_round = entry.round;
      } else if (entry.round - best_round >= static_cast<std::size_t>(params.early_stop_rounds)) {
        break;
      }
    }
  }

  if (early_stopping) {
    result.model.trees.resize(best_round);
    result.best_round = best_round;
  } else {
    result.best_round = result.model.trees.size();
  }
  return result;
}

}  // namespace sessrank::ltr
