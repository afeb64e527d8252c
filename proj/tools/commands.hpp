#pragma once

#include <string>

#include "sessrank/asq.hpp"
#include "sessrank/ltr/trainer.hpp"
#include "sessrank/pipeline.hpp"

namespace sessrank::cli {

// Thrown for argument combinations the parser cannot reject on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CorpusArgs {
  std::string corpus;
  std::string rules;  // empty: built-in defaults
  bool no_filter = false;
};

struct ScorerArgs {
  double k1 = 2.0;
  double b = 0.5;
  double f1exp_s = 0.5;
  double f1exp_k = 0.35;
  std::string stats_scope = "corpus";
};

struct FeatureArgs {
  std::string pipeline = "atm";
  std::string sessions;
  CorpusArgs corpus;
  ScorerArgs scorer;
  std::string adhoc_scores;
  std::string session_scores;
  bool allow_missing_scores = false;
  bool drop_docid_feature = false;
};

struct FilterCmd {
  CorpusArgs corpus;
  std::string out;
  std::string report;
};

struct StatsCmd {
  CorpusArgs corpus;
  std::string out;
};

struct FeaturesCmd {
  FeatureArgs features;
  std::string out;
  std::string qrels_out;
};

struct TrainCmd {
  std::string train;
  std::string valid;
  std::string out;
  std::string log;
  ltr::LtrParams params;
};

struct RerankCmd {
  FeatureArgs features;
  std::string features_file;  // precomputed features instead of sessions
  std::string model;
  std::string out;
  std::string run_tag;
};

struct EvalCmd {
  std::string run;
  std::string qrels;
  int k = 3;
  std::string out;
};

struct AsqCmd {
  std::string sessions;
  std::string corpus;
  std::string out;
  AsqCaps caps;
};

int run_filter(const FilterCmd& cmd);
int run_stats(const StatsCmd& cmd);
int run_features(const FeaturesCmd& cmd);
int run_train(const TrainCmd& cmd);
int run_rerank(const RerankCmd& cmd);
int run_eval(const EvalCmd& cmd);
int run_asq(const AsqCmd& cmd);

}  // namespace sessrank::cli
