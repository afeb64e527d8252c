// sessrank: command-line front end for the session reranking pipeline.
//
//   sessrank filter   --corpus C [--rules R] --out kept.tsv [--report r.tsv]
//   sessrank stats    --corpus C [--rules R] [--out df.tsv]
//   sessrank features --pipeline atm|pmtm --sessions S --corpus C --out F
//   sessrank train    --train F [--valid V] --out model.txt
//   sessrank rerank   --pipeline atm|pmtm --model M (--features F | --sessions S --corpus C) --out run
//   sessrank eval     --run R --qrels Q [--k 3]
//   sessrank asq      --sessions S [--corpus C] --out asq.tsv
//
// Exit status: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <CLI11.hpp>

#include <cstring>
#include <iostream>

#include "commands.hpp"
#include "config_file.hpp"
#include "sessrank/error.hpp"

namespace {

using namespace sessrank::cli;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

void add_corpus_options(CLI::App* app, CorpusArgs& args, bool required = true) {
  auto* opt = app->add_option("--corpus", args.corpus,
                              "Corpus: directory of <doc_id>.txt files or doc_id<TAB>text TSV");
  if (required) opt->required();
  app->add_option("--rules", args.rules, "Filter rules file (default: built-in rules)");
  app->add_flag("--no-filter", args.no_filter, "Skip document filtering");
}

void add_scorer_options(CLI::App* app, ScorerArgs& args) {
  app->add_option("--k1", args.k1, "BM25 k1")->capture_default_str();
  app->add_option("--b", args.b, "BM25 b")->capture_default_str();
  app->add_option("--f1exp-s", args.f1exp_s, "F1-EXP length normalization s")
      ->capture_default_str();
  app->add_option("--f1exp-k", args.f1exp_k, "F1-EXP idf exponent k")->capture_default_str();
  app->add_option("--stats-scope", args.stats_scope,
                  "Collection statistics over the whole corpus or per query")
      ->check(CLI::IsMember({"corpus", "per-query"}))
      ->capture_default_str();
}

void add_feature_options(CLI::App* app, FeatureArgs& args, bool sessions_required) {
  app->add_option("--pipeline", args.pipeline, "Feature pipeline")
      ->check(CLI::IsMember({"atm", "pmtm"}))
      ->capture_default_str();
  auto* sessions = app->add_option("--sessions", args.sessions, "Session log");
  if (sessions_required) sessions->required();
  add_corpus_options(app, args.corpus, sessions_required);
  add_scorer_options(app, args.scorer);
  app->add_option("--adhoc-scores", args.adhoc_scores,
                  "Neural ad-hoc scores TSV (group_key<TAB>doc_id<TAB>score)");
  app->add_option("--session-scores", args.session_scores, "Neural session scores TSV");
  app->add_flag("--allow-missing-scores", args.allow_missing_scores,
                "Run pmtm without external score files (missing scores are 0)");
  app->add_flag("--drop-docid-feature", args.drop_docid_feature,
                "Zero the document-id feature (pmtm ablation)");
}

void add_ltr_options(CLI::App* app, sessrank::ltr::LtrParams& p) {
  app->add_option("--trees", p.n_trees, "Number of trees")->capture_default_str();
  app->add_option("--leaves", p.n_leaves, "Leaves per tree")->capture_default_str();
  app->add_option("--shrinkage", p.shrinkage, "Learning rate")->capture_default_str();
  app->add_option("--min-leaf-support", p.min_leaf_support, "Minimum rows per leaf")
      ->capture_default_str();
  app->add_option("--thresholds", p.n_threshold_candidates,
                  "Threshold candidates per feature")
      ->capture_default_str();
  app->add_option("--metric-k", p.train_metric_k, "Training metric cutoff (NDCG@k)")
      ->capture_default_str();
  app->add_option("--sigma", p.sigma, "Pairwise logistic scale")->capture_default_str();
  app->add_option("--early-stop", p.early_stop_rounds,
                  "Rounds without validation gain before stopping")
      ->capture_default_str();
  app->add_option("--seed", p.seed, "Random seed")->capture_default_str();
  app->add_option("--threads", p.threads, "Worker threads")->capture_default_str();
}

// Splices `key = value` entries from --config into the argument list ahead of
// the user's own flags, so explicit flags win (last value taken). Keys the
// selected subcommand does not know are ignored.
std::vector<std::string> expand_config(CLI::App& app, std::vector<std::string> args) {
  std::string config_path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config_path.empty() || rest.empty()) return rest;

  CLI::App* sub = nullptr;
  for (auto* s : app.get_subcommands({})) {
    if (s->get_name() == rest.front()) sub = s;
  }
  if (!sub) return rest;

  std::vector<std::string> out{rest.front()};
  for (const auto& [key, value] : read_config_file(config_path)) {
    const CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt) continue;
    if (opt->get_type_size() == 0) {
      if (value == "true" || value == "1" || value == "yes") out.push_back("--" + key);
    } else {
      out.push_back("--" + key);
      out.push_back(value);
    }
  }
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Session search reranking: filtering, traditional scorers, LambdaMART"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--config", "Config file of `key = value` lines (flags take precedence)");

  FilterCmd filter_cmd;
  auto* filter = app.add_subcommand("filter", "Remove junk documents from a corpus");
  add_corpus_options(filter, filter_cmd.corpus);
  filter->add_option("--out", filter_cmd.out, "Kept documents, TSV")->required();
  filter->add_option("--report", filter_cmd.report, "Removal report");

  StatsCmd stats_cmd;
  auto* stats = app.add_subcommand("stats", "Collection statistics of the (filtered) corpus");
  add_corpus_options(stats, stats_cmd.corpus);
  stats->add_option("--out", stats_cmd.out, "Document frequencies, term<TAB>df");

  FeaturesCmd features_cmd;
  auto* features = app.add_subcommand("features", "Extract ranking features from a session log");
  add_feature_options(features, features_cmd.features, true);
  features->add_option("--out", features_cmd.out, "Feature file (RankLib format)")->required();
  features->add_option("--qrels-out", features_cmd.qrels_out, "Click-derived qrels");

  TrainCmd train_cmd;
  auto* train = app.add_subcommand("train", "Train a LambdaMART model");
  train->add_option("--train", train_cmd.train, "Training feature file")->required();
  train->add_option("--valid", train_cmd.valid, "Validation feature file (early stopping)");
  train->add_option("--out", train_cmd.out, "Model file")->required();
  train->add_option("--log", train_cmd.log, "Per-round metrics, JSON lines");
  add_ltr_options(train, train_cmd.params);

  RerankCmd rerank_cmd;
  auto* rerank = app.add_subcommand("rerank", "Rerank candidates with a model into a TREC run");
  add_feature_options(rerank, rerank_cmd.features, false);
  rerank->add_option("--features", rerank_cmd.features_file, "Precomputed feature file");
  rerank->add_option("--model", rerank_cmd.model, "Model file")->required();
  rerank->add_option("--out", rerank_cmd.out, "TREC run file")->required();
  rerank->add_option("--run-tag", rerank_cmd.run_tag, "Run tag column");

  EvalCmd eval_cmd;
  auto* eval = app.add_subcommand("eval", "NDCG@k of a run against qrels");
  eval->add_option("--run", eval_cmd.run, "TREC run file")->required();
  eval->add_option("--qrels", eval_cmd.qrels, "Qrels file")->required();
  eval->add_option("--k", eval_cmd.k, "Cutoff")->capture_default_str();
  eval->add_option("--out", eval_cmd.out, "Report file (default stdout)");

  AsqCmd asq_cmd;
  auto* asq = app.add_subcommand("asq", "Assembled session queries, one per turn");
  asq->add_option("--sessions", asq_cmd.sessions, "Session log")->required();
  asq->add_option("--corpus", asq_cmd.corpus, "Corpus (only used to report dangling doc ids)");
  asq->add_option("--out", asq_cmd.out, "Output TSV: session:turn<TAB>ASQ")->required();
  asq->add_option("--max-queries", asq_cmd.caps.max_queries, "Previous queries kept")
      ->capture_default_str();
  asq->add_option("--max-titles", asq_cmd.caps.max_titles, "Clicked titles kept")
      ->capture_default_str();

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(app, std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);

    if (filter->parsed()) return run_filter(filter_cmd);
    if (stats->parsed()) return run_stats(stats_cmd);
    if (features->parsed()) return run_features(features_cmd);
    if (train->parsed()) return run_train(train_cmd);
    if (rerank->parsed()) return run_rerank(rerank_cmd);
    if (eval->parsed()) return run_eval(eval_cmd);
    if (asq->parsed()) return run_asq(asq_cmd);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sessrank::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.code() == sessrank::Errc::invalid_argument) return kExitUsage;
    return e.is_data_error() ? kExitData : kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
