#include "spmvsel/decision_tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <fmt/core.h>

#include "spmvsel/error.hpp"

namespace spmvsel {
namespace {

MatrixClass majority(const ClassCounts& counts) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumClasses; ++c) {
    if (counts[c] > counts[best]) best = c;
  }
  return static_cast<MatrixClass>(best);
}

bool pure(const ClassCounts& counts) {
  return std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) <= 1;
}

using SortedLists = std::vector<std::vector<std::size_t>>;

class CartBuilder {
 public:
  CartBuilder(const Dataset& d, const CartOptions& opts)
      : d_(d), opts_(opts), goes_left_(d.size(), 0) {
    tree_.n_features = d.n_features();
  }

  DecisionTree build() {
    std::vector<std::size_t> members(d_.size());
    std::iota(members.begin(), members.end(), 0);
    SortedLists sorted(d_.n_features(), members);
    for (std::size_t f = 0; f < d_.n_features(); ++f) {
      std::stable_sort(sorted[f].begin(), sorted[f].end(), [&](std::size_t a, std::size_t b) {
        return value(a, f) < value(b, f);
      });
    }
    grow(members, sorted, 0);
    return std::move(tree_);
  }

 private:
  struct Split {
    std::size_t feature = 0;
    double threshold = 0.0;
    double impurity = std::numeric_limits<double>::infinity();
    bool found = false;
  };

  double value(std::size_t sample, std::size_t f) const { return d_.samples[sample].features[f]; }
  std::size_t label(std::size_t sample) const { return class_index(d_.samples[sample].label); }

  Split best_split(const SortedLists& sorted, const ClassCounts& total, std::size_t n) const {
    Split best;
    const std::size_t min_leaf = std::max<std::size_t>(1, opts_.min_leaf);
    const double total_n = static_cast<double>(n);
    for (std::size_t f = 0; f < sorted.size(); ++f) {
      const auto& list = sorted[f];
      ClassCounts left{};
      ClassCounts right = total;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        const std::size_t c = label(list[k]);
        ++left[c];
        --right[c];
        const std::size_t nl = k + 1, nr = n - nl;
        if (nl < min_leaf) continue;
        if (nr < min_leaf) break;
        const double a = value(list[k], f), b = value(list[k + 1], f);
        if (!(a < b)) continue;
        const double impurity = (static_cast<double>(nl) * gini(left) +
                                 static_cast<double>(nr) * gini(right)) /
                                total_n;
        if (impurity < best.impurity) {
          double mid = std::midpoint(a, b);
          if (!(mid < b)) mid = a;
          best = {f, mid, impurity, true};
        }
      }
    }
    return best;
  }

  std::size_t grow(const std::vector<std::size_t>& members, const SortedLists& sorted,
                   std::size_t depth) {
    ClassCounts counts{};
    for (std::size_t s : members) ++counts[label(s)];

    const std::size_t index = tree_.nodes.size();
    TreeNode node;
    node.counts = counts;
    node.prediction = majority(counts);
    tree_.nodes.push_back(node);

    const std::size_t n = members.size();
    const bool depth_limited = opts_.max_depth.has_value() && depth >= *opts_.max_depth;
    if (pure(counts) || depth_limited || n < 2 * std::max<std::size_t>(1, opts_.min_leaf) ||
        sorted.empty()) {
      return index;
    }
    const Split split = best_split(sorted, counts, n);
    if (!split.found) return index;

    for (std::size_t s : members) goes_left_[s] = value(s, split.feature) <= split.threshold;

    auto divide = [&](const std::vector<std::size_t>& list) {
      std::pair<std::vector<std::size_t>, std::vector<std::size_t>> out;
      for (std::size_t s : list) (goes_left_[s] ? out.first : out.second).push_back(s);
      return out;
    };
    auto [left_members, right_members] = divide(members);
    SortedLists left_sorted, right_sorted;
    left_sorted.reserve(sorted.size());
    right_sorted.reserve(sorted.size());
    for (const auto& list : sorted) {
      auto [l, r] = divide(list);
      left_sorted.push_back(std::move(l));
      right_sorted.push_back(std::move(r));
    }

    const std::size_t left = grow(left_members, left_sorted, depth + 1);
    const std::size_t right = grow(right_members, right_sorted, depth + 1);
    TreeNode& parent = tree_.nodes[index];
    parent.feature = static_cast<int>(split.feature);
    parent.threshold = split.threshold;
    parent.left = left;
    parent.right = right;
    return index;
  }

  const Dataset& d_;
  const CartOptions& opts_;
  DecisionTree tree_;
  std::vector<char> goes_left_;
};

std::size_t subtree_depth(const DecisionTree& t, std::size_t node) {
  const TreeNode& n = t.nodes[node];
  if (n.is_leaf()) return 0;
  return 1 + std::max(subtree_depth(t, n.left), subtree_depth(t, n.right));
}

}  // namespace

double gini(const ClassCounts& counts) {
  const double n = static_cast<double>(std::accumulate(counts.begin(), counts.end(),
                                                       std::size_t{0}));
  if (n == 0.0) return 0.0;
  double sum_sq = 0.0;
  for (std::size_t c : counts) {
    const double p = static_cast<double>(c) / n;
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

std::size_t DecisionTree::depth() const { return nodes.empty() ? 0 : subtree_depth(*this, 0); }

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

DecisionTree train_cart(const Dataset& d, const CartOptions& opts) {
  d.validate();
  return CartBuilder(d, opts).build();
}

MatrixClass predict_tree(const DecisionTree& t, std::span<const double> x) {
  if (x.size() != t.n_features) {
    throw DimensionError(
        fmt::format("tree expects {} features, got {}", t.n_features, x.size()));
  }
  if (t.nodes.empty()) throw ModelError("decision tree has no nodes");
  std::size_t node = 0;
  while (!t.nodes[node].is_leaf()) {
    const TreeNode& n = t.nodes[node];
    node = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return t.nodes[node].prediction;
}

}  // namespace spmvsel
