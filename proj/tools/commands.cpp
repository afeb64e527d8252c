#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>

#include "sessrank/error.hpp"
#include "sessrank/ranklib.hpp"
#include "sessrank/text.hpp"

namespace sessrank::cli {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::unreadable_source, "cannot write " + path);
  return out;
}

Corpus filtered(Corpus corpus, const CorpusArgs& args, FilterReport* report = nullptr) {
  if (args.no_filter) return corpus;
  FilterRules rules = args.rules.empty() ? FilterRules::defaults() : load_filter_rules(args.rules);
  FilterResult result = filter_corpus(corpus, rules);
  std::cerr << "filter: kept " << result.report.kept << ", removed " << result.report.removed
            << '\n';
  if (report) *report = std::move(result.report);
  return std::move(result.kept);
}

Corpus prepared_corpus(const CorpusArgs& args, FilterReport* report = nullptr) {
  return filtered(load_corpus(args.corpus), args, report);
}

PipelineOptions pipeline_options(const FeatureArgs& args) {
  PipelineOptions opts;
  auto kind = parse_pipeline_kind(args.pipeline);
  if (!kind) throw UsageError("--pipeline must be atm or pmtm");
  opts.kind = *kind;
  auto scope = parse_stats_scope(args.scorer.stats_scope);
  if (!scope) throw UsageError("--stats-scope must be corpus or per-query");
  opts.stats_scope = *scope;
  opts.scorer.bm25 = {args.scorer.k1, args.scorer.b};
  opts.scorer.f1exp = {args.scorer.f1exp_s, args.scorer.f1exp_k};
  opts.pmtm.drop_doc_id = args.drop_docid_feature;

  if (opts.kind == PipelineKind::pmtm) {
    const bool both = !args.adhoc_scores.empty() && !args.session_scores.empty();
    if (!both && !args.allow_missing_scores) {
      throw UsageError(
          "pmtm needs --adhoc-scores and --session-scores, or --allow-missing-scores");
    }
    if (!args.adhoc_scores.empty()) opts.adhoc_scores = load_external_scores(args.adhoc_scores);
    if (!args.session_scores.empty()) {
      opts.session_scores = load_external_scores(args.session_scores);
    }
  }
  return opts;
}

FeatureBuild build_features(const FeatureArgs& args, const std::vector<Session>& sessions,
                            const Corpus& corpus) {
  PipelineOptions opts = pipeline_options(args);
  FeatureBuild build = build_session_features(sessions, corpus, opts);
  std::cerr << "features: " << build.groups << " groups, " << build.features.vectors.size()
            << " vectors";
  if (build.skipped_turns) std::cerr << ", " << build.skipped_turns << " turns without candidates";
  if (build.unavailable_docs) {
    std::cerr << ", " << build.unavailable_docs << " impressions filtered or missing";
  }
  if (opts.kind == PipelineKind::pmtm) {
    std::cerr << ", missing scores adhoc=" << build.missing_adhoc
              << " session=" << build.missing_session;
  }
  std::cerr << '\n';
  return build;
}

void warn_validation(const std::vector<Session>& sessions, const Corpus& corpus) {
  ValidationReport report = validate(sessions, corpus);
  for (const auto& issue : report.out_of_order_turns) {
    std::cerr << "warning: session " << issue.session_id << " turn " << issue.turn_index + 1
              << ": " << issue.message << '\n';
  }
  if (!report.unresolved_docs.empty()) {
    std::cerr << "warning: " << report.unresolved_docs.size()
              << " impressions reference documents not in the corpus\n";
  }
}

}  // namespace

int run_filter(const FilterCmd& cmd) {
  CorpusArgs args = cmd.corpus;
  args.no_filter = false;
  FilterReport report;
  Corpus kept = prepared_corpus(args, &report);
  auto out = open_out(cmd.out);
  write_corpus_tsv(kept, out);
  if (!cmd.report.empty()) {
    auto rep = open_out(cmd.report);
    write_filter_report(report, rep);
  }
  return 0;
}

int run_stats(const StatsCmd& cmd) {
  Corpus corpus = prepared_corpus(cmd.corpus);
  CorpusStats stats = build_stats(corpus);
  std::cout << "n_docs\t" << stats.n_docs << '\n'
            << "avgdl\t" << format_double(stats.avgdl) << '\n'
            << "vocabulary\t" << stats.df.size() << '\n';
  if (!cmd.out.empty()) {
    std::map<std::string_view, std::size_t> sorted(stats.df.begin(), stats.df.end());
    auto out = open_out(cmd.out);
    for (const auto& [term, df] : sorted) out << term << '\t' << df << '\n';
  }
  return 0;
}

int run_features(const FeaturesCmd& cmd) {
  auto sessions = load_session_log(cmd.features.sessions);
  Corpus full = load_corpus(cmd.features.corpus.corpus);
  warn_validation(sessions, full);
  Corpus corpus = filtered(std::move(full), cmd.features.corpus);
  FeatureBuild build = build_features(cmd.features, sessions, corpus);
  save_ranklib(build.features, cmd.out);
  if (!cmd.qrels_out.empty()) {
    auto out = open_out(cmd.qrels_out);
    eval::write_qrels(click_qrels(sessions, corpus), out);
  }
  return 0;
}

int run_train(const TrainCmd& cmd) {
  FeatureSet train_set = load_ranklib(cmd.train);
  std::optional<FeatureSet> valid_set;
  if (!cmd.valid.empty()) valid_set = load_ranklib(cmd.valid);

  std::ofstream log;
  if (!cmd.log.empty()) log = open_out(cmd.log);
  auto on_round = [&](const ltr::RoundLog& r) {
    if (!log.is_open()) return;
    log << "{\"round\":" << r.round << ",\"train_ndcg\":" << format_double(r.train_ndcg);
    if (r.valid_ndcg) log << ",\"valid_ndcg\":" << format_double(*r.valid_ndcg);
    log << "}\n";
  };
  auto result = ltr::train(train_set, valid_set ? &*valid_set : nullptr, cmd.params, on_round);
  ltr::save_model(result.model, cmd.out);
  std::cerr << "train: " << result.model.trees.size() << " trees";
  if (!result.log.empty()) {
    std::cerr << ", train ndcg@" << cmd.params.train_metric_k << " "
              << result.log[std::max<std::size_t>(result.best_round, 1) - 1].train_ndcg;
  }
  std::cerr << '\n';
  return 0;
}

int run_rerank(const RerankCmd& cmd) {
  ltr::LtrModel model = ltr::load_model(cmd.model);
  FeatureSet features;
  if (!cmd.features_file.empty()) {
    features = load_ranklib(cmd.features_file);
  } else {
    if (cmd.features.sessions.empty() || cmd.features.corpus.corpus.empty()) {
      throw UsageError("rerank needs --features, or --sessions and --corpus");
    }
    auto sessions = load_session_log(cmd.features.sessions);
    Corpus full = load_corpus(cmd.features.corpus.corpus);
    warn_validation(sessions, full);
    Corpus corpus = filtered(std::move(full), cmd.features.corpus);
    features = build_features(cmd.features, sessions, corpus).features;
  }
  const std::string tag =
      cmd.run_tag.empty() ? "sessrank-" + std::string(to_string(features.schema)) : cmd.run_tag;
  eval::Run run = rerank(model, features, tag);
  eval::check_run(run);
  eval::save_trec_run(run, cmd.out);
  return 0;
}

int run_eval(const EvalCmd& cmd) {
  if (cmd.k < 1) throw UsageError("--k must be >= 1");
  eval::Run run = eval::load_trec_run(cmd.run);
  eval::Qrels qrels = eval::load_qrels(cmd.qrels);
  eval::EvalReport report = eval::evaluate_run(run, qrels, cmd.k);
  if (cmd.out.empty()) {
    eval::write_eval_report(report, std::cout);
  } else {
    auto out = open_out(cmd.out);
    eval::write_eval_report(report, out);
  }
  return 0;
}

int run_asq(const AsqCmd& cmd) {
  auto sessions = load_session_log(cmd.sessions);
  if (!cmd.corpus.empty()) warn_validation(sessions, load_corpus(cmd.corpus));
  auto out = open_out(cmd.out);
  write_asq_tsv(assemble_all(sessions, cmd.caps), out);
  return 0;
}

}  // namespace sessrank::cli
