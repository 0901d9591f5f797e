#ifndef SPMVSEL_DECISION_TREE_HPP
#define SPMVSEL_DECISION_TREE_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "spmvsel/dataset.hpp"
#include "spmvsel/matrix_class.hpp"

namespace spmvsel {

using ClassCounts = std::array<std::size_t, kNumClasses>;

/// 1 - sum_c p_c^2; 0 for an empty histogram.
double gini(const ClassCounts& counts);

/// Leaf when feature < 0. Internal nodes send x[feature] <= threshold left.
/// Every node keeps the class histogram of the training samples reaching it.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  std::size_t left = 0;
  std::size_t right = 0;
  MatrixClass prediction = MatrixClass::kCML;
  ClassCounts counts{};

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

struct DecisionTree {
  std::size_t n_features = 0;
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  std::size_t depth() const;
  std::size_t leaf_count() const;
  bool operator==(const DecisionTree&) const = default;
};

struct CartOptions {
  std::optional<std::size_t> max_depth;
  std::size_t min_leaf = 1;
};

/// Greedy CART: at each node pick the (feature, threshold) pair minimising
/// the weighted Gini impurity of the children. Thresholds are midpoints
/// between consecutive distinct sorted values; ties keep the lowest feature
/// index and then the lowest threshold. Samples are pre-sorted once per
/// feature and the sorted lists are stably partitioned down the tree.
DecisionTree train_cart(const Dataset& d, const CartOptions& opts = {});

MatrixClass predict_tree(const DecisionTree& t, std::span<const double> x);

}  // namespace spmvsel

#endif  // SPMVSEL_DECISION_TREE_HPP
