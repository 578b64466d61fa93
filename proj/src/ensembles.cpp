#include "automol/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "automol/errors.hpp"

namespace automol {
namespace {

constexpr double kProbaClip = 1e-12;

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

std::vector<int> iota_samples(std::size_t n) {
    std::vector<int> samples(n);
    std::iota(samples.begin(), samples.end(), 0);
    return samples;
}

int sqrt_features(std::size_t n_features) {
    return std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n_features))));
}

}  // namespace

std::string to_string(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::DecisionTree: return "DecisionTree";
        case ClassifierKind::ExtraTree: return "ExtraTree";
        case ClassifierKind::RandomForest: return "RandomForest";
        case ClassifierKind::ExtraTrees: return "ExtraTrees";
        case ClassifierKind::AdaBoost: return "AdaBoost";
        case ClassifierKind::XgBoost: return "XGBoost";
    }
    throw DataError("unknown classifier kind");
}

ClassifierKind classifier_kind_from_string(const std::string& name) {
    if (name == "DecisionTree") return ClassifierKind::DecisionTree;
    if (name == "ExtraTree") return ClassifierKind::ExtraTree;
    if (name == "RandomForest") return ClassifierKind::RandomForest;
    if (name == "ExtraTrees") return ClassifierKind::ExtraTrees;
    if (name == "AdaBoost") return ClassifierKind::AdaBoost;
    if (name == "XGBoost") return ClassifierKind::XgBoost;
    throw DataError("unknown classifier name: " + name);
}

void Classifier::start_fit(const Matrix& x, const Labels& y) {
    if (x.empty()) throw DataError("cannot fit on an empty matrix");
    if (x.size() != y.size()) throw DataError("feature/label row counts differ");
    n_features_ = x[0].size();
    if (n_features_ == 0) throw DataError("cannot fit on zero features");
    for (const auto& row : x) {
        if (row.size() != n_features_) throw DataError("ragged feature matrix");
    }
    for (int label : y) {
        if (label != 0 && label != 1) throw DataError("labels must be 0 or 1");
    }
    constant_ = std::all_of(y.begin(), y.end(), [&](int v) { return v == y[0]; });
    if (constant_) constant_proba_ = static_cast<double>(y[0]);
    fitted_ = true;
}

void Classifier::check_fitted(const Matrix& x) const {
    if (!fitted_) throw DataError("classifier is not fitted");
    for (const auto& row : x) {
        if (row.size() != n_features_) {
            throw DataError("expected " + std::to_string(n_features_) +
                            " feature columns, got " + std::to_string(row.size()));
        }
    }
}

std::vector<int> Classifier::predict(const Matrix& x) const {
    std::vector<double> proba = predict_proba(x);
    std::vector<int> labels(proba.size());
    for (std::size_t i = 0; i < proba.size(); ++i) labels[i] = proba[i] >= 0.5 ? 1 : 0;
    return labels;
}

namespace {

nlohmann::json params_to_json(const ClassifierParams& p) {
    return {{"n_estimators", p.n_estimators},
            {"max_depth", p.max_depth},
            {"max_leaves", p.max_leaves},
            {"learning_rate", p.learning_rate},
            {"samme_r", p.samme_r}};
}

ClassifierParams params_from_json(const nlohmann::json& j) {
    ClassifierParams p;
    p.n_estimators = j.at("n_estimators").get<int>();
    p.max_depth = j.at("max_depth").get<int>();
    p.max_leaves = j.at("max_leaves").get<int>();
    p.learning_rate = j.at("learning_rate").get<double>();
    p.samme_r = j.at("samme_r").get<bool>();
    return p;
}

// DecisionTree / ExtraTree: one CART over all features.
class TreeClassifier : public Classifier {
public:
    TreeClassifier(ClassifierKind kind, const ClassifierParams& params)
        : kind_(kind), params_(params) {}

    ClassifierKind kind() const override { return kind_; }

    void fit(const Matrix& x, const Labels& y, Rng& rng,
             const Deadline& deadline) override {
        start_fit(x, y);
        if (constant_) return;
        TreeParams tp;
        tp.max_depth = params_.max_depth;
        tp.random_thresholds = kind_ == ClassifierKind::ExtraTree;
        std::vector<double> weights(x.size(), 1.0);
        tree_.fit(x, y, weights, iota_samples(x.size()), tp, rng, deadline);
    }

    std::vector<double> predict_proba(const Matrix& x) const override {
        check_fitted(x);
        std::vector<double> out(x.size(), constant_proba_);
        if (constant_) return out;
        for (std::size_t i = 0; i < x.size(); ++i) {
            out[i] = tree_.predict_proba_row(x[i]);
        }
        return out;
    }

protected:
    nlohmann::json state_to_json() const override {
        nlohmann::json out = {{"params", params_to_json(params_)}};
        if (!constant_) out["tree"] = tree_.to_json();
        return out;
    }
    void state_from_json(const nlohmann::json& j) override {
        params_ = params_from_json(j.at("params"));
        if (j.contains("tree")) tree_ = Cart::from_json(j.at("tree"));
    }

private:
    ClassifierKind kind_;
    ClassifierParams params_;
    Cart tree_;
};

// RandomForest (bootstrap) / ExtraTrees (no bootstrap, random thresholds).
// Both restrict each split to a sqrt(p) feature subset and aggregate by hard
// majority vote; the reported probability is the fraction of member votes.
class ForestClassifier : public Classifier {
public:
    ForestClassifier(ClassifierKind kind, const ClassifierParams& params)
        : kind_(kind), params_(params) {}

    ClassifierKind kind() const override { return kind_; }

    void fit(const Matrix& x, const Labels& y, Rng& rng,
             const Deadline& deadline) override {
        start_fit(x, y);
        trees_.clear();
        if (constant_) return;
        if (params_.n_estimators < 1) throw DataError("n_estimators must be positive");
        bool bootstrap = kind_ == ClassifierKind::RandomForest;
        std::vector<double> weights(x.size(), 1.0);
        std::vector<int> base_samples = iota_samples(x.size());
        TreeParams tp;
        tp.max_depth = params_.max_depth;
        tp.random_thresholds = kind_ == ClassifierKind::ExtraTrees;
        tp.features_per_split = sqrt_features(n_features_);
        // One base draw, then an independent stream per member, so member t
        // is identical no matter how many members run or in what order.
        std::uint64_t base = rng.next_u64();
        trees_.resize(params_.n_estimators);
        for (int t = 0; t < params_.n_estimators; ++t) {
            deadline.poll();
            Rng member(derive_seed(base, "member", static_cast<std::uint64_t>(t)));
            std::vector<int> samples;
            if (bootstrap) {
                samples.resize(x.size());
                for (auto& s : samples) {
                    s = static_cast<int>(member.below(x.size()));
                }
            } else {
                samples = base_samples;
            }
            trees_[t].fit(x, y, weights, samples, tp, member, deadline);
        }
    }

    std::vector<double> predict_proba(const Matrix& x) const override {
        check_fitted(x);
        std::vector<double> out(x.size(), constant_proba_);
        if (constant_) return out;
        for (std::size_t i = 0; i < x.size(); ++i) {
            int votes = 0;
            for (const Cart& tree : trees_) {
                if (tree.predict_proba_row(x[i]) >= 0.5) ++votes;
            }
            out[i] = static_cast<double>(votes) / static_cast<double>(trees_.size());
        }
        return out;
    }

protected:
    nlohmann::json state_to_json() const override {
        nlohmann::json members = nlohmann::json::array();
        for (const Cart& tree : trees_) members.push_back(tree.to_json());
        return {{"params", params_to_json(params_)}, {"trees", members}};
    }
    void state_from_json(const nlohmann::json& j) override {
        params_ = params_from_json(j.at("params"));
        trees_.clear();
        if (!j.contains("trees")) return;
        for (const auto& item : j.at("trees")) trees_.push_back(Cart::from_json(item));
    }

private:
    ClassifierKind kind_;
    ClassifierParams params_;
    std::vector<Cart> trees_;
};

// AdaBoost on depth-1 CART stumps; SAMME (discrete) or SAMME.R (real).
class AdaBoostClassifier : public Classifier {
public:
    explicit AdaBoostClassifier(const ClassifierParams& params) : params_(params) {}

    ClassifierKind kind() const override { return ClassifierKind::AdaBoost; }

    void fit(const Matrix& x, const Labels& y, Rng& rng,
             const Deadline& deadline) override {
        start_fit(x, y);
        stumps_.clear();
        alphas_.clear();
        if (constant_) return;
        if (params_.n_estimators < 1) throw DataError("n_estimators must be positive");
        std::size_t n = x.size();
        std::vector<double> w(n, 1.0 / static_cast<double>(n));
        std::vector<int> samples = iota_samples(n);
        TreeParams tp;
        tp.max_depth = 1;

        for (int t = 0; t < params_.n_estimators; ++t) {
            deadline.poll();
            Cart stump;
            stump.fit(x, y, w, samples, tp, rng, deadline);
            if (params_.samme_r) {
                // Real boosting: reweight by the half log-odds margin.
                double sum = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    double p1 = std::clamp(stump.predict_proba_row(x[i]), kProbaClip,
                                           1.0 - kProbaClip);
                    double f = 0.5 * (std::log(p1) - std::log(1.0 - p1));
                    double ystar = y[i] == 1 ? 1.0 : -1.0;
                    w[i] *= std::exp(-params_.learning_rate * ystar * f);
                    sum += w[i];
                }
                stumps_.push_back(std::move(stump));
                if (sum <= 0.0 || !std::isfinite(sum)) break;
                for (double& wi : w) wi /= sum;
            } else {
                double eps = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    int pred = stump.predict_proba_row(x[i]) >= 0.5 ? 1 : 0;
                    if (pred != y[i]) eps += w[i];
                }
                if (eps < kProbaClip) {
                    // Perfect stump: keep it with a large finite weight.
                    alphas_.push_back(params_.learning_rate *
                                      std::log((1.0 - kProbaClip) / kProbaClip));
                    stumps_.push_back(std::move(stump));
                    break;
                }
                if (eps >= 0.5) {
                    if (stumps_.empty()) {
                        // No stump beats chance: fall back to the majority class.
                        std::size_t ones = std::count(y.begin(), y.end(), 1);
                        constant_ = true;
                        constant_proba_ = 2 * ones >= n ? 1.0 : 0.0;
                    }
                    break;
                }
                double alpha = params_.learning_rate * std::log((1.0 - eps) / eps);
                double sum = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    int pred = stump.predict_proba_row(x[i]) >= 0.5 ? 1 : 0;
                    if (pred != y[i]) w[i] *= std::exp(alpha);
                    sum += w[i];
                }
                alphas_.push_back(alpha);
                stumps_.push_back(std::move(stump));
                if (sum <= 0.0 || !std::isfinite(sum)) break;
                for (double& wi : w) wi /= sum;
            }
        }
    }

    std::vector<double> predict_proba(const Matrix& x) const override {
        check_fitted(x);
        std::vector<double> out(x.size(), constant_proba_);
        if (constant_) return out;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (params_.samme_r) {
                double d = 0.0;
                for (const Cart& stump : stumps_) {
                    double p1 = std::clamp(stump.predict_proba_row(x[i]), kProbaClip,
                                           1.0 - kProbaClip);
                    d += 0.5 * (std::log(p1) - std::log(1.0 - p1));
                }
                out[i] = sigmoid(2.0 * params_.learning_rate * d);
            } else {
                double s1 = 0.0;
                double s0 = 0.0;
                for (std::size_t t = 0; t < stumps_.size(); ++t) {
                    (stumps_[t].predict_proba_row(x[i]) >= 0.5 ? s1 : s0) += alphas_[t];
                }
                out[i] = s1 + s0 > 0.0 ? s1 / (s1 + s0) : 0.5;
            }
        }
        return out;
    }

protected:
    nlohmann::json state_to_json() const override {
        nlohmann::json members = nlohmann::json::array();
        for (const Cart& stump : stumps_) members.push_back(stump.to_json());
        return {{"params", params_to_json(params_)},
                {"stumps", members},
                {"alphas", alphas_}};
    }
    void state_from_json(const nlohmann::json& j) override {
        params_ = params_from_json(j.at("params"));
        stumps_.clear();
        alphas_.clear();
        if (j.contains("stumps")) {
            for (const auto& item : j.at("stumps")) {
                stumps_.push_back(Cart::from_json(item));
            }
        }
        if (j.contains("alphas")) alphas_ = j.at("alphas").get<std::vector<double>>();
    }

private:
    ClassifierParams params_;
    std::vector<Cart> stumps_;
    std::vector<double> alphas_;  // discrete SAMME only
};

// Gradient boosting with logistic loss, second-order leaf weights and
// best-first (leaf-wise) growth capped at max_leaves.
class XgbClassifier : public Classifier {
public:
    explicit XgbClassifier(const ClassifierParams& params) : params_(params) {}

    ClassifierKind kind() const override { return ClassifierKind::XgBoost; }

    void fit(const Matrix& x, const Labels& y, Rng& rng,
             const Deadline& deadline) override {
        (void)rng;  // deterministic: no subsampling anywhere
        start_fit(x, y);
        trees_.clear();
        if (constant_) return;
        if (params_.n_estimators < 1) throw DataError("n_estimators must be positive");
        if (params_.max_leaves < 1) throw DataError("max_leaves must be positive");
        std::size_t n = x.size();
        std::vector<double> margin(n, 0.0);  // base score 0 => p = 0.5
        std::vector<double> grad(n), hess(n);
        for (int round = 0; round < params_.n_estimators; ++round) {
            deadline.poll();
            for (std::size_t i = 0; i < n; ++i) {
                double p = sigmoid(margin[i]);
                grad[i] = p - static_cast<double>(y[i]);
                hess[i] = p * (1.0 - p);
            }
            trees_.push_back(build_tree(x, grad, hess, margin));
        }
    }

    std::vector<double> predict_proba(const Matrix& x) const override {
        check_fitted(x);
        std::vector<double> out(x.size(), constant_proba_);
        if (constant_) return out;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double margin = 0.0;
            for (const auto& tree : trees_) margin += tree_value_at(tree, x[i]);
            out[i] = sigmoid(margin);
        }
        return out;
    }

protected:
    nlohmann::json state_to_json() const override {
        nlohmann::json members = nlohmann::json::array();
        for (const auto& tree : trees_) members.push_back(tree_nodes_to_json(tree));
        return {{"params", params_to_json(params_)}, {"trees", members}};
    }
    void state_from_json(const nlohmann::json& j) override {
        params_ = params_from_json(j.at("params"));
        trees_.clear();
        if (!j.contains("trees")) return;
        for (const auto& item : j.at("trees")) {
            trees_.push_back(tree_nodes_from_json(item));
        }
    }

private:
    static constexpr double kLambda = 1.0;
    static constexpr double kMinGain = 1e-12;

    struct Split {
        bool found = false;
        int feature = -1;
        double threshold = 0.0;
        double gain = -std::numeric_limits<double>::infinity();
    };

    struct OpenLeaf {
        int node;
        std::vector<int> indices;
        int depth;
        double g_sum;
        double h_sum;
        Split split;
    };

    static double score(double g, double h) { return g * g / (h + kLambda); }

    Split best_split(const Matrix& x, const std::vector<double>& grad,
                     const std::vector<double>& hess,
                     const std::vector<int>& indices) const {
        Split best;
        double g_all = 0.0;
        double h_all = 0.0;
        for (int i : indices) {
            g_all += grad[i];
            h_all += hess[i];
        }
        double parent = score(g_all, h_all);
        std::vector<std::pair<double, int>> column(indices.size());
        for (std::size_t f = 0; f < n_features_; ++f) {
            for (std::size_t k = 0; k < indices.size(); ++k) {
                int i = indices[k];
                column[k] = {x[i][f], i};
            }
            std::sort(column.begin(), column.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            double gl = 0.0;
            double hl = 0.0;
            for (std::size_t k = 0; k + 1 < column.size(); ++k) {
                int i = column[k].second;
                gl += grad[i];
                hl += hess[i];
                if (column[k].first == column[k + 1].first) continue;
                double thr = column[k].first + (column[k + 1].first - column[k].first) / 2.0;
                double gain =
                    0.5 * (score(gl, hl) + score(g_all - gl, h_all - hl) - parent);
                if (gain > best.gain) {
                    best = {true, static_cast<int>(f), thr, gain};
                }
            }
        }
        return best;
    }

    std::vector<TreeNode> build_tree(const Matrix& x, const std::vector<double>& grad,
                                     const std::vector<double>& hess,
                                     std::vector<double>& margin) const {
        std::vector<TreeNode> nodes(1);
        std::vector<OpenLeaf> open;
        std::vector<int> root_indices(x.size());
        std::iota(root_indices.begin(), root_indices.end(), 0);
        open.push_back(make_leaf(x, grad, hess, 0, std::move(root_indices), 0));

        int n_leaves = 1;
        while (n_leaves < params_.max_leaves) {
            std::size_t pick = open.size();
            double best_gain = kMinGain;
            for (std::size_t k = 0; k < open.size(); ++k) {
                if (open[k].split.found && open[k].split.gain > best_gain) {
                    best_gain = open[k].split.gain;
                    pick = k;
                }
            }
            if (pick == open.size()) break;

            OpenLeaf leaf = std::move(open[pick]);
            open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
            std::vector<int> left_idx;
            std::vector<int> right_idx;
            for (int i : leaf.indices) {
                (x[i][leaf.split.feature] <= leaf.split.threshold ? left_idx : right_idx)
                    .push_back(i);
            }
            int left_id = static_cast<int>(nodes.size());
            nodes.emplace_back();
            nodes.emplace_back();
            TreeNode& parent = nodes[leaf.node];
            parent.leaf = false;
            parent.feature = leaf.split.feature;
            parent.threshold = leaf.split.threshold;
            parent.left = left_id;
            parent.right = left_id + 1;
            open.push_back(
                make_leaf(x, grad, hess, left_id, std::move(left_idx), leaf.depth + 1));
            open.push_back(make_leaf(x, grad, hess, left_id + 1, std::move(right_idx),
                                     leaf.depth + 1));
            ++n_leaves;
        }

        // Whatever is still open becomes a leaf; store the learning-rate
        // scaled weight so prediction is a plain sum over trees.
        for (const OpenLeaf& leaf : open) {
            double value =
                params_.learning_rate * (-leaf.g_sum / (leaf.h_sum + kLambda));
            nodes[leaf.node].value = value;
            for (int i : leaf.indices) margin[i] += value;
        }
        return nodes;
    }

    OpenLeaf make_leaf(const Matrix& x, const std::vector<double>& grad,
                       const std::vector<double>& hess, int node, std::vector<int> indices,
                       int depth) const {
        OpenLeaf leaf;
        leaf.node = node;
        leaf.depth = depth;
        leaf.g_sum = 0.0;
        leaf.h_sum = 0.0;
        for (int i : indices) {
            leaf.g_sum += grad[i];
            leaf.h_sum += hess[i];
        }
        bool depth_ok = params_.max_depth < 0 || depth < params_.max_depth;
        if (depth_ok && indices.size() >= 2) {
            leaf.split = best_split(x, grad, hess, indices);
        }
        leaf.indices = std::move(indices);
        return leaf;
    }

    ClassifierParams params_;
    std::vector<std::vector<TreeNode>> trees_;
};

}  // namespace

nlohmann::json Classifier::to_json() const {
    if (!fitted_) throw DataError("classifier is not fitted");
    return {{"kind", to_string(kind())},
            {"constant", constant_},
            {"constant_proba", constant_proba_},
            {"n_features", n_features_},
            {"state", state_to_json()}};
}

std::unique_ptr<Classifier> make_classifier(ClassifierKind kind,
                                            const ClassifierParams& params) {
    switch (kind) {
        case ClassifierKind::DecisionTree:
        case ClassifierKind::ExtraTree:
            return std::make_unique<TreeClassifier>(kind, params);
        case ClassifierKind::RandomForest:
        case ClassifierKind::ExtraTrees:
            return std::make_unique<ForestClassifier>(kind, params);
        case ClassifierKind::AdaBoost:
            return std::make_unique<AdaBoostClassifier>(params);
        case ClassifierKind::XgBoost:
            return std::make_unique<XgbClassifier>(params);
    }
    throw DataError("unknown classifier kind");
}

std::unique_ptr<Classifier> classifier_from_json(const nlohmann::json& j) {
    ClassifierKind kind = classifier_kind_from_string(j.at("kind").get<std::string>());
    const nlohmann::json& state = j.at("state");
    auto model = make_classifier(kind, params_from_json(state.at("params")));
    model->constant_ = j.at("constant").get<bool>();
    model->constant_proba_ = j.at("constant_proba").get<double>();
    model->n_features_ = j.at("n_features").get<std::size_t>();
    model->fitted_ = true;
    model->state_from_json(state);
    return model;
}

}  // namespace automol
