#include "sessrank/ltr/tree.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sessrank/error.hpp"

namespace sessrank::ltr {

namespace {

constexpr double kMinGain = 1e-14;

double midpoint(double a, double b) {
  double m = a + (b - a) / 2.0;
  return m >= b ? a : m;
}

std::vector<double> thresholds_for(std::vector<double> column, int max_candidates) {
  std::sort(column.begin(), column.end());
  std::vector<double> points;
  const std::size_t n = column.size();
  const std::size_t c = static_cast<std::size_t>(std::max(max_candidates, 1));

  std::vector<double> distinct = column;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() <= c + 1) {
    points = std::move(distinct);
  } else {
    for (std::size_t j = 0; j <= c; ++j) {
      points.push_back(column[j * (n - 1) / c]);
    }
    points.erase(std::unique(points.begin(), points.end()), points.end());
  }

  std::vector<double> out;
  for (std::size_t i = 1; i < points.size(); ++i) out.push_back(midpoint(points[i - 1], points[i]));
  return out;
}

struct SplitCandidate {
  double gain = 0.0;
  int feature = -1;
  int threshold_index = -1;
};

struct OpenLeaf {
  int node = 0;
  std::vector<std::uint32_t> rows;
  SplitCandidate best;
};

double leaf_term(double g, double h) { return g * g / (h + kLeafEpsilon); }

SplitCandidate best_split(const FeatureBins& bins, std::span<const double> targets,
                          std::span<const double> weights,
                          const std::vector<std::uint32_t>& rows, int min_support) {
  SplitCandidate best;
  if (rows.size() < 2 * static_cast<std::size_t>(std::max(min_support, 1))) return best;

  double g_total = 0.0, h_total = 0.0;
  for (auto r : rows) {
    g_total += targets[r];
    h_total += weights[r];
  }
  const double parent = leaf_term(g_total, h_total);

  std::vector<double> g_hist, h_hist;
  std::vector<std::size_t> c_hist;
  for (std::size_t f = 0; f < bins.features(); ++f) {
    const auto& thr = bins.thresholds[f];
    if (thr.empty()) continue;
    const std::size_t n_bins = thr.size() + 1;
    g_hist.assign(n_bins, 0.0);
    h_hist.assign(n_bins, 0.0);
    c_hist.assign(n_bins, 0);
    const auto& col = bins.bins[f];
    for (auto r : rows) {
      const auto b = col[r];
      g_hist[b] += targets[r];
      h_hist[b] += weights[r];
      ++c_hist[b];
    }
    double g_left = 0.0, h_left = 0.0;
    std::size_t c_left = 0;
    for (std::size_t j = 0; j < thr.size(); ++j) {
      g_left += g_hist[j];
      h_left += h_hist[j];
      c_left += c_hist[j];
      const std::size_t c_right = rows.size() - c_left;
      if (c_left < static_cast<std::size_t>(min_support) ||
          c_right < static_cast<std::size_t>(min_support) || c_left == 0 || c_right == 0) {
        continue;
      }
      const double gain =
          leaf_term(g_left, h_left) + leaf_term(g_total - g_left, h_total - h_left) - parent;
      if (gain > best.gain) {
        best = {gain, static_cast<int>(f), static_cast<int>(j)};
      }
    }
  }
  if (best.gain <= kMinGain) return {};
  return best;
}

double leaf_value(std::span<const double> targets, std::span<const double> weights,
                  const std::vector<std::uint32_t>& rows) {
  double g = 0.0, h = 0.0;
  for (auto r : rows) {
    g += targets[r];
    h += weights[r];
  }
  return g / (h + kLeafEpsilon);
}

}  // namespace

FeatureBins make_bins(const FeatureMatrix& x, int max_candidates) {
  FeatureBins out;
  out.rows = x.rows();
  out.thresholds.resize(x.cols());
  out.bins.resize(x.cols());
  std::vector<double> column(x.rows());
  for (std::size_t f = 0; f < x.cols(); ++f) {
    for (std::size_t r = 0; r < x.rows(); ++r) column[r] = x(r, f);
    out.thresholds[f] = thresholds_for(column, max_candidates);
    const auto& thr = out.thresholds[f];
    auto& b = out.bins[f];
    b.resize(x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r) {
      b[r] = static_cast<std::uint16_t>(
          std::lower_bound(thr.begin(), thr.end(), column[r]) - thr.begin());
    }
  }
  return out;
}

RegressionTree::RegressionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error(Errc::corrupt_model, "tree without nodes");
  std::vector<int> parents(nodes_.size(), 0);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if (n.is_leaf()) continue;
    for (int child : {n.left, n.right}) {
      if (child <= static_cast<int>(i) || child >= static_cast<int>(nodes_.size())) {
        throw Error(Errc::corrupt_model, "child index out of range");
      }
      ++parents[static_cast<std::size_t>(child)];
    }
  }
  if (parents[0] != 0) throw Error(Errc::corrupt_model, "root has a parent");
  for (std::size_t i = 1; i < parents.size(); ++i) {
    if (parents[i] != 1) throw Error(Errc::corrupt_model, "node reachable more than once or never");
  }
}

RegressionTree RegressionTree::leaf(double value) {
  RegressionTree t;
  t.nodes_[0].value = value;
  return t;
}

std::size_t RegressionTree::leaf_index(std::span<const double> x) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const auto& n = nodes_[i];
    const double v = static_cast<std::size_t>(n.feature) < x.size() ? x[n.feature] : 0.0;
    i = static_cast<std::size_t>(v <= n.threshold ? n.left : n.right);
  }
  return i;
}

double RegressionTree::evaluate(std::span<const double> x) const {
  return nodes_[leaf_index(x)].value;
}

std::size_t RegressionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

int RegressionTree::max_feature() const {
  int m = -1;
  for (const auto& n : nodes_) m = std::max(m, n.feature);
  return m;
}

void RegressionTree::scale_leaves(double factor) {
  for (auto& n : nodes_) {
    if (n.is_leaf()) n.value *= factor;
  }
}

RegressionTree fit_tree(const FeatureBins& bins, std::span<const double> targets,
                        std::span<const double> weights, const TreeParams& params) {
  if (bins.rows == 0) throw Error(Errc::degenerate_input, "cannot fit a tree on zero rows");
  if (targets.size() != bins.rows || weights.size() != bins.rows) {
    throw Error(Errc::length_mismatch, "targets and weights must match the row count");
  }
  if (params.n_leaves < 2) throw Error(Errc::invalid_argument, "n_leaves must be >= 2");

  std::vector<TreeNode> nodes(1);
  std::vector<OpenLeaf> open;
  {
    OpenLeaf root;
    root.rows.resize(bins.rows);
    for (std::uint32_t r = 0; r < bins.rows; ++r) root.rows[r] = r;
    root.best = best_split(bins, targets, weights, root.rows, params.min_leaf_support);
    open.push_back(std::move(root));
  }

  std::size_t leaves = 1;
  while (leaves < static_cast<std::size_t>(params.n_leaves)) {
    // Pick the open leaf with the largest gain; the earliest wins ties.
    std::size_t pick = open.size();
    for (std::size_t i = 0; i < open.size(); ++i) {
      if (open[i].best.feature < 0) continue;
      if (pick == open.size() || open[i].best.gain > open[pick].best.gain) pick = i;
    }
    if (pick == open.size()) break;

    OpenLeaf leaf = std::move(open[pick]);
    open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));

    const auto f = static_cast<std::size_t>(leaf.best.feature);
    const auto j = static_cast<std::uint16_t>(leaf.best.threshold_index);
    OpenLeaf left, right;
    for (auto r : leaf.rows) {
      (bins.bins[f][r] <= j ? left.rows : right.rows).push_back(r);
    }

    left.node = static_cast<int>(nodes.size());
    right.node = left.node + 1;
    auto& parent = nodes[static_cast<std::size_t>(leaf.node)];
    parent.feature = leaf.best.feature;
    parent.threshold = bins.thresholds[f][j];
    parent.left = left.node;
    parent.right = right.node;
    nodes.emplace_back();
    nodes.emplace_back();

    left.best = best_split(bins, targets, weights, left.rows, params.min_leaf_support);
    right.best = best_split(bins, targets, weights, right.rows, params.min_leaf_support);
    open.push_back(std::move(left));
    open.push_back(std::move(right));
    ++leaves;
  }

  for (const auto& leaf : open) {
    nodes[static_cast<std::size_t>(leaf.node)].value = leaf_value(targets, weights, leaf.rows);
  }
  return RegressionTree(std::move(nodes));
}

RegressionTree fit_tree(const FeatureMatrix& x, std::span<const double> targets,
                        std::span<const double> weights, const TreeParams& params,
                        int max_threshold_candidates) {
  if (x.rows() == 0) throw Error(Errc::degenerate_input, "cannot fit a tree on zero rows");
  return fit_tree(make_bins(x, max_threshold_candidates), targets, weights, params);
}

double tree_objective(const RegressionTree& tree, const FeatureMatrix& x,
                      std::span<const double> targets, std::span<const double> weights) {
  std::map<std::size_t, std::pair<double, double>> sums;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto& s = sums[tree.leaf_index(x.row(r))];
    s.first += targets[r];
    s.second += weights[r];
  }
  double obj = 0.0;
  for (const auto& [leaf, s] : sums) obj -= leaf_term(s.first, s.second);
  return obj;
}

}  // namespace sessrank::ltr
