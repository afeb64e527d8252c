#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sessrank::eval {

// Gain 2^label - 1.
double gain(int label);

// 1 / log2(1 + rank) for 1-based rank <= k, else 0.
double discount(std::size_t rank, int k);

double dcg_at_k(std::span<const int> labels_in_ranked_order, int k);
double ideal_dcg_at_k(std::span<const int> labels, int k);

// DCG@k / IDCG@k, or 0 when the ideal DCG is 0.
double ndcg_at_k(std::span<const int> labels_in_ranked_order, int k);

// NDCG@k where the ideal ordering is taken from `judged_labels` (which may
// contain judged documents absent from the ranking).
double ndcg_at_k(std::span<const int> labels_in_ranked_order,
                 std::span<const int> judged_labels, int k);

struct RunEntry {
  std::string group_key;
  std::string doc_id;
  int rank = 1;
  double score = 0.0;
  std::string run_tag;

  friend bool operator==(const RunEntry&, const RunEntry&) = default;
};

using Run = std::vector<RunEntry>;

// Orders one group's (doc_id, score) pairs by score descending, doc_id
// ascending, and assigns ranks 1..n.
std::vector<RunEntry> rank_group(const std::string& group_key,
                                 std::span<const std::pair<std::string, double>> scored,
                                 const std::string& run_tag);

// TREC six-column run lines: `group Q0 doc rank score tag`.
void write_trec_run(const Run& run, std::ostream& out);
void save_trec_run(const Run& run, const std::string& path);
Run read_trec_run(std::istream& in);
Run load_trec_run(const std::string& path);

// Throws Error(invariant_violation) unless ranks are contiguous from 1 within
// every group and consistent with descending score.
void check_run(const Run& run);

class Qrels {
 public:
  void set(std::string group_key, std::string doc_id, int label);
  // Unjudged documents are 0.
  int label(const std::string& group_key, const std::string& doc_id) const;
  std::vector<int> judged_labels(const std::string& group_key) const;
  std::size_t size() const;

  auto begin() const { return labels_.begin(); }
  auto end() const { return labels_.end(); }

 private:
  std::map<std::string, std::map<std::string, int>> labels_;
};

// `group 0 doc label` per line.
Qrels read_qrels(std::istream& in);
Qrels load_qrels(const std::string& path);
void write_qrels(const Qrels& qrels, std::ostream& out);

struct EvalReport {
  int k = 10;
  std::map<std::string, double> per_group;  // groups with nonzero ideal DCG
  std::vector<std::string> zero_ideal_groups;
  double mean = 0.0;                         // over per_group; 0 if none
};

// Ideal DCG uses every judged document of the group, retrieved or not.
// Throws Error(empty_run).
EvalReport evaluate_run(const Run& run, const Qrels& qrels, int k);

void write_eval_report(const EvalReport& report, std::ostream& out);

}  // namespace sessrank::eval
