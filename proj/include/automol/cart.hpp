#pragma once

#include <nlohmann/json.hpp>

#include "automol/ml_types.hpp"
#include "automol/rng.hpp"

namespace automol {

struct TreeParams {
    int max_depth = -1;             // -1 = unbounded
    int min_samples_split = 2;
    bool random_thresholds = false; // ExtraTree-style uniform threshold per feature
    int features_per_split = 0;     // 0 = all, else sample that many without replacement
};

struct TreeNode {
    bool leaf = true;
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    // Leaf payload: weighted class-1 fraction for CART, additive score for
    // gradient-boosted trees.
    double value = 0.5;
};

nlohmann::json tree_nodes_to_json(const std::vector<TreeNode>& nodes);
std::vector<TreeNode> tree_nodes_from_json(const nlohmann::json& j);

// Payload of the leaf reached by descending from nodes[0]; row[feature] <=
// threshold goes left.
double tree_value_at(const std::vector<TreeNode>& nodes, const std::vector<double>& row);

// CART with Gini impurity. Exhaustive mode scans midpoints of consecutive
// distinct values; equal-gain candidates resolve to the lower feature index,
// then the lower threshold. A node splits whenever any valid threshold
// exists, even at zero gain — that is what lets a depth-2 tree realize XOR.
class Cart {
public:
    void fit(const Matrix& x, const Labels& y, const std::vector<double>& weights,
             const std::vector<int>& samples, const TreeParams& params, Rng& rng,
             const Deadline& deadline);

    double predict_proba_row(const std::vector<double>& row) const;
    const std::vector<TreeNode>& nodes() const { return nodes_; }

    nlohmann::json to_json() const;
    static Cart from_json(const nlohmann::json& j);

private:
    std::vector<TreeNode> nodes_;
};

}  // namespace automol
