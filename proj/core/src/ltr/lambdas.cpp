#include "sessrank/ltr/lambdas.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sessrank/error.hpp"
#include "sessrank/eval.hpp"

namespace sessrank::ltr {

void compute_lambdas_into(std::span<const double> scores, std::span<const int> labels,
                          int k, double sigma, std::span<double> lambdas,
                          std::span<double> weights) {
  const std::size_t n = scores.size();
  if (labels.size() != n || lambdas.size() != n || weights.size() != n) {
    throw Error(Errc::length_mismatch, "scores, labels and outputs must have equal length");
  }
  std::fill(lambdas.begin(), lambdas.end(), 0.0);
  std::fill(weights.begin(), weights.end(), 0.0);
  if (n < 2) return;

  const double ideal = eval::ideal_dcg_at_k(labels, k);
  if (ideal <= 0.0) return;

  // position[i] = 1-based rank of document i in the current ordering.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<std::size_t> position(n);
  for (std::size_t r = 0; r < n; ++r) position[order[r]] = r + 1;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (labels[i] <= labels[j]) continue;
      const double gain_diff = eval::gain(labels[i]) - eval::gain(labels[j]);
      const double disc_diff = eval::discount(position[i], k) - eval::discount(position[j], k);
      const double delta = std::abs(gain_diff * disc_diff) / ideal;
      const double rho = 1.0 / (1.0 + std::exp(sigma * (scores[i] - scores[j])));
      const double lambda = sigma * rho * delta;
      const double weight = sigma * sigma * rho * (1.0 - rho) * delta;
      lambdas[i] += lambda;
      lambdas[j] -= lambda;
      weights[i] += weight;
      weights[j] += weight;
    }
  }
}

Lambdas compute_lambdas(std::span<const double> scores, std::span<const int> labels,
                        int k, double sigma) {
  if (scores.size() != labels.size()) {
    throw Error(Errc::length_mismatch, "scores and labels must have equal length");
  }
  Lambdas out;
  out.lambdas.resize(scores.size());
  out.weights.resize(scores.size());
  compute_lambdas_into(scores, labels, k, sigma, out.lambdas, out.weights);
  return out;
}

}  // namespace sessrank::ltr
