#include "automol/cart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "automol/errors.hpp"

namespace automol {
namespace {

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double decrease = -std::numeric_limits<double>::infinity();
};

double gini(double w0, double w1) {
    double total = w0 + w1;
    if (total <= 0.0) return 0.0;
    double p0 = w0 / total;
    double p1 = w1 / total;
    return 1.0 - p0 * p0 - p1 * p1;
}

// Weighted impurity decrease of a candidate partition relative to the parent.
double decrease_of(double parent_gini, double total, double l0, double l1, double r0,
                   double r1) {
    double wl = l0 + l1;
    double wr = r0 + r1;
    return parent_gini - (wl * gini(l0, l1) + wr * gini(r0, r1)) / total;
}

void consider(SplitChoice& best, int feature, double threshold, double decrease) {
    // Strict improvement only: scanning features ascending and thresholds
    // ascending makes ties resolve to (lower feature, lower threshold).
    if (decrease > best.decrease) {
        best = {true, feature, threshold, decrease};
    }
}

}  // namespace

void Cart::fit(const Matrix& x, const Labels& y, const std::vector<double>& weights,
               const std::vector<int>& samples, const TreeParams& params, Rng& rng,
               const Deadline& deadline) {
    nodes_.clear();
    if (samples.empty()) throw DataError("cannot fit a tree on zero samples");
    std::size_t n_features = x.empty() ? 0 : x[0].size();
    if (n_features == 0) throw DataError("cannot fit a tree on zero features");

    std::vector<int> all_features(n_features);
    std::iota(all_features.begin(), all_features.end(), 0);

    struct Frame {
        int node;
        std::vector<int> samples;
        int depth;
    };
    std::vector<Frame> stack;
    nodes_.emplace_back();
    stack.push_back({0, samples, 0});

    std::vector<int> candidates;
    while (!stack.empty()) {
        deadline.poll();
        Frame frame = std::move(stack.back());
        stack.pop_back();
        TreeNode& node = nodes_[frame.node];

        double w0 = 0.0;
        double w1 = 0.0;
        for (int i : frame.samples) (y[i] == 1 ? w1 : w0) += weights[i];
        double total = w0 + w1;
        node.value = total > 0.0 ? w1 / total : 0.5;

        bool pure = w0 == 0.0 || w1 == 0.0;
        bool depth_capped = params.max_depth >= 0 && frame.depth >= params.max_depth;
        bool too_small =
            frame.samples.size() < static_cast<std::size_t>(params.min_samples_split);
        if (pure || depth_capped || too_small || total <= 0.0) continue;

        if (params.features_per_split > 0 &&
            static_cast<std::size_t>(params.features_per_split) < n_features) {
            // Partial Fisher-Yates, then sort so the tie-break order holds.
            candidates = all_features;
            for (int k = 0; k < params.features_per_split; ++k) {
                std::size_t j = k + rng.below(candidates.size() - k);
                std::swap(candidates[k], candidates[j]);
            }
            candidates.resize(params.features_per_split);
            std::sort(candidates.begin(), candidates.end());
        } else {
            candidates = all_features;
        }

        double parent_gini = gini(w0, w1);
        SplitChoice best;
        std::vector<std::pair<double, int>> column(frame.samples.size());
        for (int f : candidates) {
            for (std::size_t k = 0; k < frame.samples.size(); ++k) {
                int i = frame.samples[k];
                column[k] = {x[i][f], i};
            }
            if (params.random_thresholds) {
                double lo = column[0].first;
                double hi = column[0].first;
                for (const auto& p : column) {
                    lo = std::min(lo, p.first);
                    hi = std::max(hi, p.first);
                }
                if (lo == hi) continue;
                double thr = rng.uniform(lo, hi);
                double l0 = 0.0, l1 = 0.0, r0 = 0.0, r1 = 0.0;
                for (const auto& [v, i] : column) {
                    double& cell = v <= thr ? (y[i] == 1 ? l1 : l0) : (y[i] == 1 ? r1 : r0);
                    cell += weights[i];
                }
                consider(best, f, thr, decrease_of(parent_gini, total, l0, l1, r0, r1));
            } else {
                std::sort(column.begin(), column.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                double l0 = 0.0, l1 = 0.0, r0 = w0, r1 = w1;
                for (std::size_t k = 0; k + 1 < column.size(); ++k) {
                    const auto& [v, i] = column[k];
                    double w = weights[i];
                    (y[i] == 1 ? l1 : l0) += w;
                    (y[i] == 1 ? r1 : r0) -= w;
                    if (v == column[k + 1].first) continue;
                    double thr = v + (column[k + 1].first - v) / 2.0;
                    consider(best, f, thr, decrease_of(parent_gini, total, l0, l1, r0, r1));
                }
            }
        }
        if (!best.found) continue;

        std::vector<int> left_samples;
        std::vector<int> right_samples;
        for (int i : frame.samples) {
            (x[i][best.feature] <= best.threshold ? left_samples : right_samples)
                .push_back(i);
        }
        if (left_samples.empty() || right_samples.empty()) continue;  // degenerate draw

        int left_id = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        nodes_.emplace_back();
        TreeNode& parent = nodes_[frame.node];  // re-fetch: emplace may reallocate
        parent.leaf = false;
        parent.feature = best.feature;
        parent.threshold = best.threshold;
        parent.left = left_id;
        parent.right = left_id + 1;
        stack.push_back({left_id, std::move(left_samples), frame.depth + 1});
        stack.push_back({left_id + 1, std::move(right_samples), frame.depth + 1});
    }
}

double tree_value_at(const std::vector<TreeNode>& nodes, const std::vector<double>& row) {
    if (nodes.empty()) throw DataError("tree is not fitted");
    int at = 0;
    while (!nodes[at].leaf) {
        const TreeNode& n = nodes[at];
        at = row[n.feature] <= n.threshold ? n.left : n.right;
    }
    return nodes[at].value;
}

double Cart::predict_proba_row(const std::vector<double>& row) const {
    return tree_value_at(nodes_, row);
}

nlohmann::json tree_nodes_to_json(const std::vector<TreeNode>& nodes) {
    nlohmann::json out = nlohmann::json::array();
    for (const TreeNode& n : nodes) {
        out.push_back({{"leaf", n.leaf},
                       {"feature", n.feature},
                       {"threshold", n.threshold},
                       {"left", n.left},
                       {"right", n.right},
                       {"value", n.value}});
    }
    return out;
}

std::vector<TreeNode> tree_nodes_from_json(const nlohmann::json& j) {
    std::vector<TreeNode> nodes;
    for (const auto& item : j) {
        TreeNode n;
        n.leaf = item.at("leaf").get<bool>();
        n.feature = item.at("feature").get<int>();
        n.threshold = item.at("threshold").get<double>();
        n.left = item.at("left").get<int>();
        n.right = item.at("right").get<int>();
        n.value = item.at("value").get<double>();
        nodes.push_back(n);
    }
    if (nodes.empty()) throw DataError("serialized tree has no nodes");
    return nodes;
}

nlohmann::json Cart::to_json() const { return tree_nodes_to_json(nodes_); }

Cart Cart::from_json(const nlohmann::json& j) {
    Cart tree;
    tree.nodes_ = tree_nodes_from_json(j);
    return tree;
}

}  // namespace automol
