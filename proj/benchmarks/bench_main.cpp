#include <benchmark/benchmark.h>

#include <random>

#include "sessrank/features.hpp"
#include "sessrank/ltr/lambdas.hpp"
#include "sessrank/ltr/trainer.hpp"
#include "sessrank/ltr/tree.hpp"
#include "sessrank/scorers.hpp"
#include "synthetic.hpp"

namespace {

using namespace sessrank;

const synthetic::SessionBenchmark& bench_data() {
  static const auto data = synthetic::session_benchmark(1, 100, 20, 20);
  return data;
}

void BM_BuildStats(benchmark::State& state) {
  const Corpus& c = bench_data().corpus;
  for (auto _ : state) benchmark::DoNotOptimize(build_stats(c));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(c.size()));
}
BENCHMARK(BM_BuildStats);

template <typename Score>
void score_all(benchmark::State& state, Score score) {
  const Corpus& c = bench_data().corpus;
  const auto stats = build_stats(c);
  const Query q{"q", {"t20", "t45", "t3"}};
  for (auto _ : state) {
    double total = 0;
    for (const auto& [id, d] : c) total += score(q, d, stats);
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(c.size()));
}

void BM_Bm25(benchmark::State& state) {
  score_all(state, [](const Query& q, const Document& d, const CorpusStats& s) {
    return bm25(q, d, s);
  });
}
BENCHMARK(BM_Bm25);

void BM_F1Exp(benchmark::State& state) {
  score_all(state, [](const Query& q, const Document& d, const CorpusStats& s) {
    return f1exp(q, d, s);
  });
}
BENCHMARK(BM_F1Exp);

void BM_ExtractAtm(benchmark::State& state) {
  const Corpus& c = bench_data().corpus;
  const auto stats = build_stats(c);
  std::vector<const Document*> docs;
  for (const auto& [id, d] : c) {
    if (docs.size() == 10) break;
    docs.push_back(&d);
  }
  const Query q{"q", {"t20", "t45"}};
  for (auto _ : state) benchmark::DoNotOptimize(extract_atm(q, "g", docs, stats));
}
BENCHMARK(BM_ExtractAtm);

void BM_ComputeLambdas(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> z;
  std::uniform_int_distribution<int> label(0, 3);
  std::vector<double> scores(n);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] = z(rng);
    labels[i] = label(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(ltr::compute_lambdas(scores, labels, 10, 1.0));
}
BENCHMARK(BM_ComputeLambdas)->Arg(10)->Arg(50)->Arg(200);

void BM_FitTree(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::normal_distribution<double> z;
  ltr::FeatureMatrix x(rows, 8);
  std::vector<double> t(rows), w(rows, 1.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < 8; ++c) x(r, c) = z(rng);
    t[r] = z(rng);
  }
  const auto bins = ltr::make_bins(x, 256);
  for (auto _ : state) benchmark::DoNotOptimize(ltr::fit_tree(bins, t, w, ltr::TreeParams{}));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(rows));
}
BENCHMARK(BM_FitTree)->Arg(1000)->Arg(10000);

void BM_Train100Trees(benchmark::State& state) {
  const auto& data = bench_data();
  ltr::LtrParams p;
  p.n_trees = 100;
  p.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ltr::train(data.train, nullptr, p));
}
BENCHMARK(BM_Train100Trees)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
