#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sessrank::ltr {

// Dense row-major matrix of feature values.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Candidate split thresholds per feature, and every row's bin under them.
// A row falls left of threshold j exactly when its bin is <= j, i.e. when its
// value is <= thresholds[f][j].
struct FeatureBins {
  std::vector<std::vector<double>> thresholds;  // per feature, ascending
  std::vector<std::vector<std::uint16_t>> bins;  // per feature, per row
  std::size_t rows = 0;

  std::size_t features() const noexcept { return thresholds.size(); }
};

// Thresholds are midpoints between adjacent distinct quantile values of each
// column; at most `max_candidates` per feature.
FeatureBins make_bins(const FeatureMatrix& x, int max_candidates);

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;

  bool is_leaf() const noexcept { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

class RegressionTree {
 public:
  RegressionTree() : nodes_{TreeNode{}} {}
  // Throws Error(corrupt_model) if the node graph is not a tree rooted at 0.
  explicit RegressionTree(std::vector<TreeNode> nodes);

  static RegressionTree leaf(double value);

  // `x[feature] <= threshold` goes left.
  double evaluate(std::span<const double> x) const;
  std::size_t leaf_index(std::span<const double> x) const;  // node index

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  std::size_t leaf_count() const;
  int max_feature() const;  // -1 for a single leaf

  void scale_leaves(double factor);

  friend bool operator==(const RegressionTree&, const RegressionTree&) = default;

 private:
  std::vector<TreeNode> nodes_;
};

struct TreeParams {
  int n_leaves = 10;
  int min_leaf_support = 1;
};

// Leaf value smoothing: sum(targets) / (sum(weights) + kLeafEpsilon).
inline constexpr double kLeafEpsilon = 1e-12;

// Best-first growth. Each step splits the leaf with the largest gain, where
// the gain of a split is G_L^2/(H_L+eps) + G_R^2/(H_R+eps) - G^2/(H+eps) over
// target sums G and weight sums H. That is the reduction of the weighted
// squared error of fitting the Newton targets with per-leaf constants. Ties
// go to the lowest feature index, then the lowest threshold.
// Throws Error(degenerate_input) for zero rows, Error(length_mismatch).
RegressionTree fit_tree(const FeatureBins& bins, std::span<const double> targets,
                        std::span<const double> weights, const TreeParams& params);

RegressionTree fit_tree(const FeatureMatrix& x, std::span<const double> targets,
                        std::span<const double> weights, const TreeParams& params,
                        int max_threshold_candidates = 256);

// Weighted squared error of a tree's leaf assignment, up to the constant
// sum(t^2 / w): sum over leaves of -G^2 / (H + eps). Lower is better.
double tree_objective(const RegressionTree& tree, const FeatureMatrix& x,
                      std::span<const double> targets, std::span<const double> weights);

}  // namespace sessrank::ltr
