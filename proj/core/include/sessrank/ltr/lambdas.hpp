#pragma once

#include <span>
#include <vector>

namespace sessrank::ltr {

struct Lambdas {
  std::vector<double> lambdas;  // ascent direction: positive pushes a doc up
  std::vector<double> weights;  // second-order weights for the Newton step
};

// LambdaRank gradients for one query group under NDCG@k.
//
// For every pair with labels[i] > labels[j]:
//   rho   = 1 / (1 + exp(sigma * (s_i - s_j)))
//   delta = |NDCG@k change when i and j swap positions|
//   lambda_i += sigma * rho * delta,  lambda_j -= sigma * rho * delta
//   w_i, w_j += sigma^2 * rho * (1 - rho) * delta
//
// Positions come from sorting scores descending (stable on index). Groups with
// zero ideal DCG get all-zero output. Throws Error(length_mismatch).
Lambdas compute_lambdas(std::span<const double> scores, std::span<const int> labels,
                        int k, double sigma);

// Same computation into caller-provided buffers (no allocation beyond a small
// scratch permutation); the buffers are overwritten.
void compute_lambdas_into(std::span<const double> scores, std::span<const int> labels,
                          int k, double sigma, std::span<double> lambdas,
                          std::span<double> weights);

}  // namespace sessrank::ltr
