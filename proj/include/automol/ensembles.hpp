#pragma once

#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "automol/cart.hpp"
#include "automol/ml_types.hpp"
#include "automol/rng.hpp"

namespace automol {

enum class ClassifierKind {
    DecisionTree,
    ExtraTree,
    RandomForest,
    ExtraTrees,
    AdaBoost,
    XgBoost,
};

std::string to_string(ClassifierKind kind);
ClassifierKind classifier_kind_from_string(const std::string& name);

struct ClassifierParams {
    int n_estimators = 50;
    int max_depth = -1;  // -1 = unbounded (None)
    int max_leaves = 10;
    double learning_rate = 1.0;
    bool samme_r = true;  // AdaBoost: SAMME.R when true, discrete SAMME otherwise
};

// Binary classifier over dense feature matrices. predict() thresholds the
// class-1 probability at 0.5 (ties go to class 1).
class Classifier {
public:
    virtual ~Classifier() = default;
    virtual ClassifierKind kind() const = 0;
    virtual void fit(const Matrix& x, const Labels& y, Rng& rng,
                     const Deadline& deadline) = 0;
    virtual std::vector<double> predict_proba(const Matrix& x) const = 0;
    std::vector<int> predict(const Matrix& x) const;

    nlohmann::json to_json() const;
    std::size_t n_features() const { return n_features_; }

protected:
    virtual nlohmann::json state_to_json() const = 0;
    virtual void state_from_json(const nlohmann::json& j) = 0;

    void start_fit(const Matrix& x, const Labels& y);
    void check_fitted(const Matrix& x) const;

    // Single-class training data short-circuits to a constant predictor.
    bool constant_ = false;
    double constant_proba_ = 0.5;
    std::size_t n_features_ = 0;
    bool fitted_ = false;

    friend std::unique_ptr<Classifier> classifier_from_json(const nlohmann::json& j);
};

std::unique_ptr<Classifier> make_classifier(ClassifierKind kind,
                                            const ClassifierParams& params);
std::unique_ptr<Classifier> classifier_from_json(const nlohmann::json& j);

}  // namespace automol
