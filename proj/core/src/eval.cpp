#include "sessrank/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "sessrank/error.hpp"
#include "sessrank/text.hpp"

namespace sessrank::eval {

double gain(int label) { return std::exp2(static_cast<double>(label)) - 1.0; }

double discount(std::size_t rank, int k) {
  if (k < 1 || rank > static_cast<std::size_t>(k)) return 0.0;
  return 1.0 / std::log2(static_cast<double>(rank) + 1.0);
}

double dcg_at_k(std::span<const int> labels, int k) {
  double dcg = 0.0;
  const std::size_t cutoff = std::min(labels.size(), static_cast<std::size_t>(std::max(k, 0)));
  for (std::size_t i = 0; i < cutoff; ++i) dcg += gain(labels[i]) * discount(i + 1, k);
  return dcg;
}

double ideal_dcg_at_k(std::span<const int> labels, int k) {
  std::vector<int> sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return dcg_at_k(sorted, k);
}

double ndcg_at_k(std::span<const int> labels, int k) {
  return ndcg_at_k(labels, labels, k);
}

double ndcg_at_k(std::span<const int> labels, std::span<const int> judged, int k) {
  const double ideal = ideal_dcg_at_k(judged, k);
  if (ideal <= 0.0) return 0.0;
  return dcg_at_k(labels, k) / ideal;
}

std::vector<RunEntry> rank_group(const std::string& group_key,
                                 std::span<const std::pair<std::string, double>> scored,
                                 const std::string& run_tag) {
  std::vector<std::pair<std::string, double>> sorted(scored.begin(), scored.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<RunEntry> out;
  out.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out.push_back({group_key, sorted[i].first, static_cast<int>(i + 1), sorted[i].second,
                   run_tag});
  }
  return out;
}

void write_trec_run(const Run& run, std::ostream& out) {
  for (const auto& e : run) {
    out << e.group_key << " Q0 " << e.doc_id << ' ' << e.rank << ' '
        << format_double(e.score) << ' ' << e.run_tag << '\n';
  }
}

void save_trec_run(const Run& run, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::unreadable_source, "cannot write " + path);
  write_trec_run(run, out);
}

Run read_trec_run(std::istream& in) {
  Run run;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    Tokens f = tokenize(line);
    if (f.empty()) continue;
    if (f.size() != 6) throw Error(Errc::malformed_line, "expected 6 columns", line_no);
    auto rank = parse_int(f[3]);
    auto score = parse_double(f[4]);
    if (!rank || *rank < 1 || !score) {
      throw Error(Errc::malformed_line, "bad rank or score", line_no);
    }
    run.push_back({f[0], f[2], static_cast<int>(*rank), *score, f[5]});
  }
  return run;
}

Run load_trec_run(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::unreadable_source, "cannot open " + path);
  try {
    return read_trec_run(in);
  } catch (const Error& e) {
    throw e.with_source(path);
  }
}

namespace {

std::map<std::string, std::vector<const RunEntry*>> group_run(const Run& run) {
  std::map<std::string, std::vector<const RunEntry*>> groups;
  for (const auto& e : run) groups[e.group_key].push_back(&e);
  for (auto& [key, entries] : groups) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const RunEntry* a, const RunEntry* b) { return a->rank < b->rank; });
  }
  return groups;
}

}  // namespace

void check_run(const Run& run) {
  for (const auto& [key, entries] : group_run(run)) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i]->rank != static_cast<int>(i + 1)) {
        throw Error(Errc::invariant_violation, "ranks not contiguous in group " + key);
      }
      if (i > 0 && entries[i]->score > entries[i - 1]->score) {
        throw Error(Errc::invariant_violation, "score order disagrees with rank in " + key);
      }
    }
  }
}

void Qrels::set(std::string group_key, std::string doc_id, int label) {
  labels_[std::move(group_key)][std::move(doc_id)] = label;
}

int Qrels::label(const std::string& group_key, const std::string& doc_id) const {
  auto g = labels_.find(group_key);
  if (g == labels_.end()) return 0;
  auto d = g->second.find(doc_id);
  return d == g->second.end() ? 0 : d->second;
}

std::vector<int> Qrels::judged_labels(const std::string& group_key) const {
  std::vector<int> out;
  auto g = labels_.find(group_key);
  if (g == labels_.end()) return out;
  for (const auto& [doc, label] : g->second) out.push_back(label);
  return out;
}

std::size_t Qrels::size() const {
  std::size_t n = 0;
  for (const auto& [key, docs] : labels_) n += docs.size();
  return n;
}

Qrels read_qrels(std::istream& in) {
  Qrels qrels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    Tokens f = tokenize(line);
    if (f.empty()) continue;
    if (f.size() != 4) throw Error(Errc::malformed_line, "expected 4 columns", line_no);
    auto label = parse_int(f[3]);
    if (!label || *label < 0) throw Error(Errc::malformed_line, "bad label", line_no);
    qrels.set(f[0], f[2], static_cast<int>(*label));
  }
  return qrels;
}

Qrels load_qrels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::unreadable_source, "cannot open " + path);
  try {
    return read_qrels(in);
  } catch (const Error& e) {
    throw e.with_source(path);
  }
}

void write_qrels(const Qrels& qrels, std::ostream& out) {
  for (const auto& [key, docs] : qrels) {
    for (const auto& [doc, label] : docs) out << key << " 0 " << doc << ' ' << label << '\n';
  }
}

EvalReport evaluate_run(const Run& run, const Qrels& qrels, int k) {
  if (run.empty()) throw Error(Errc::empty_run, "run has no entries");
  EvalReport report;
  report.k = k;
  double sum = 0.0;
  for (const auto& [key, entries] : group_run(run)) {
    std::vector<int> ranked;
    ranked.reserve(entries.size());
    for (const auto* e : entries) ranked.push_back(qrels.label(key, e->doc_id));
    // Judged documents that were not retrieved still count toward the ideal.
    std::vector<int> judged = qrels.judged_labels(key);
    if (ideal_dcg_at_k(judged, k) <= 0.0) {
      report.zero_ideal_groups.push_back(key);
      continue;
    }
    double v = ndcg_at_k(ranked, judged, k);
    report.per_group[key] = v;
    sum += v;
  }
  if (!report.per_group.empty()) sum /= static_cast<double>(report.per_group.size());
  report.mean = sum;
  return report;
}

void write_eval_report(const EvalReport& report, std::ostream& out) {
  out << std::fixed << std::setprecision(6);
  for (const auto& [key, v] : report.per_group) {
    out << "ndcg@" << report.k << '\t' << key << '\t' << v << '\n';
  }
  for (const auto& key : report.zero_ideal_groups) {
    out << "ndcg@" << report.k << '\t' << key << "\tzero-ideal\n";
  }
  out << "ndcg@" << report.k << "\tall\t" << report.mean << '\n';
  out << "groups\tall\t" << report.per_group.size() << '\n';
  out << "zero_ideal_groups\tall\t" << report.zero_ideal_groups.size() << '\n';
  out.unsetf(std::ios::floatfield);
}

}  // namespace sessrank::eval
