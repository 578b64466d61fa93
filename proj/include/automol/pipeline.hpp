#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "automol/ensembles.hpp"
#include "automol/featurize.hpp"
#include "automol/grammar.hpp"
#include "automol/scalers.hpp"
#include "automol/selectors.hpp"

namespace automol {

// Hyperparameters chosen from finite token menus keep their original token
// spelling so sentence -> spec -> sentence is the identity.
struct ScalerChoice {
    ScalerKind kind = ScalerKind::Normalizer;
    ScalerParams params;
};

struct SelectorChoice {
    SelectorKind kind = SelectorKind::VarianceThreshold;
    std::string threshold_token = "0.0";  // VarianceThreshold
    int percentile = 10;                  // SelectPercentile
    std::string alpha_token = "0.05";     // FPR / FWE / FDR

    double threshold_value() const;
    double alpha_value() const;
    SelectorParams params() const;
};

struct ClassifierChoice {
    ClassifierKind kind = ClassifierKind::DecisionTree;
    bool samme_r = true;  // AdaBoost <algorithm>
    int n_estimators = 50;
    std::string max_depth_token = "None";
    int max_leaves = 1;
    std::string learning_rate_token = "0.10";

    int max_depth_int() const;  // -1 for None
    double learning_rate_value() const;
    ClassifierParams params() const;
};

struct PipelineSpec {
    GroupSet groups;
    std::optional<ScalerChoice> scaler;
    std::optional<SelectorChoice> selector;
    ClassifierChoice classifier;
};

// Validates the sentence against the grammar, then decodes it. Inverse of
// sentence_from_spec.
PipelineSpec spec_from_sentence(const Grammar& g, const std::vector<std::string>& tokens);
std::vector<std::string> sentence_from_spec(const PipelineSpec& spec);

// A trained pipeline: fitted scaler state, selector mask, and classifier,
// plus the input schema it expects.
struct FittedPipeline {
    PipelineSpec spec;
    std::vector<std::string> column_names;  // pre-scaling input schema
    ScalerState scaler;                     // kind None when spec has no scaler
    std::vector<bool> mask;                 // all-true when spec has no selector
    std::unique_ptr<Classifier> classifier;

    std::vector<double> predict_proba(const Matrix& x) const;
    std::vector<int> predict(const Matrix& x) const;
    nlohmann::json to_json() const;
    static FittedPipeline from_json(const Grammar& g, const nlohmann::json& j);
};

// Scale -> select -> fit. Throws EmptyMaskError when the selector keeps no
// columns and DeadlineExceeded when the budget runs out.
FittedPipeline fit_pipeline(const PipelineSpec& spec, const Matrix& x,
                            const std::vector<std::string>& column_names, const Labels& y,
                            Rng& rng, const Deadline& deadline);

}  // namespace automol
