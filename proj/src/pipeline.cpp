#include "automol/pipeline.hpp"

#include <stdexcept>

#include "automol/errors.hpp"

namespace automol {

double SelectorChoice::threshold_value() const { return std::stod(threshold_token); }
double SelectorChoice::alpha_value() const { return std::stod(alpha_token); }

SelectorParams SelectorChoice::params() const {
    SelectorParams p;
    p.threshold = threshold_value();
    p.percentile = percentile;
    p.alpha = alpha_value();
    return p;
}

int ClassifierChoice::max_depth_int() const {
    return max_depth_token == "None" ? -1 : std::stoi(max_depth_token);
}

double ClassifierChoice::learning_rate_value() const {
    return std::stod(learning_rate_token);
}

ClassifierParams ClassifierChoice::params() const {
    ClassifierParams p;
    p.n_estimators = n_estimators;
    p.max_depth = max_depth_int();
    p.max_leaves = max_leaves;
    p.learning_rate = learning_rate_value();
    p.samme_r = samme_r;
    return p;
}

namespace {

// Cursor over an already grammar-validated sentence.
struct TokenWalk {
    const std::vector<std::string>& tokens;
    std::size_t at = 0;

    bool done() const { return at >= tokens.size(); }
    const std::string& peek() const {
        if (done()) throw DataError("pipeline sentence ended early");
        return tokens[at];
    }
    std::string take() {
        std::string t = peek();
        ++at;
        return t;
    }
    bool take_bool() {
        std::string t = take();
        if (t == "True") return true;
        if (t == "False") return false;
        throw DataError("expected True/False, got: " + t);
    }
    int take_int() { return std::stoi(take()); }
};

ScalerChoice read_scaler(TokenWalk& walk) {
    ScalerChoice choice;
    std::string head = walk.take();
    if (head == "Normalizer") {
        choice.kind = ScalerKind::Normalizer;
        choice.params.norm = walk.take();
    } else if (head == "MinMaxScaler") {
        choice.kind = ScalerKind::MinMax;
    } else if (head == "MaxAbsScaler") {
        choice.kind = ScalerKind::MaxAbs;
    } else if (head == "RobustScaler") {
        choice.kind = ScalerKind::Robust;
        choice.params.with_centering = walk.take_bool();
        choice.params.with_scaling = walk.take_bool();
    } else if (head == "StddScaler") {
        choice.kind = ScalerKind::Standard;
        choice.params.with_mean = walk.take_bool();
        choice.params.with_std = walk.take_bool();
    } else {
        throw DataError("unknown scaler token: " + head);
    }
    return choice;
}

SelectorChoice read_selector(TokenWalk& walk) {
    SelectorChoice choice;
    std::string head = walk.take();
    if (head == "VarianceThreshold") {
        choice.kind = SelectorKind::VarianceThreshold;
        choice.threshold_token = walk.take();
    } else if (head == "SelectPercentile") {
        choice.kind = SelectorKind::SelectPercentile;
        choice.percentile = walk.take_int();
    } else if (head == "SelectFPR") {
        choice.kind = SelectorKind::SelectFPR;
        choice.alpha_token = walk.take();
    } else if (head == "SelectFWE") {
        choice.kind = SelectorKind::SelectFWE;
        choice.alpha_token = walk.take();
    } else if (head == "SelectFDR") {
        choice.kind = SelectorKind::SelectFDR;
        choice.alpha_token = walk.take();
    } else {
        throw DataError("unknown selector token: " + head);
    }
    return choice;
}

ClassifierChoice read_classifier(TokenWalk& walk) {
    ClassifierChoice choice;
    std::string head = walk.take();
    choice.kind = classifier_kind_from_string(head);
    switch (choice.kind) {
        case ClassifierKind::AdaBoost: {
            std::string algorithm = walk.take();
            if (algorithm != "SAMME.R" && algorithm != "SAMME") {
                throw DataError("unknown AdaBoost algorithm: " + algorithm);
            }
            choice.samme_r = algorithm == "SAMME.R";
            choice.n_estimators = walk.take_int();
            choice.learning_rate_token = walk.take();
            break;
        }
        case ClassifierKind::DecisionTree:
        case ClassifierKind::ExtraTree:
            choice.max_depth_token = walk.take();
            break;
        case ClassifierKind::RandomForest:
        case ClassifierKind::ExtraTrees:
            choice.n_estimators = walk.take_int();
            choice.max_depth_token = walk.take();
            break;
        case ClassifierKind::XgBoost:
            choice.n_estimators = walk.take_int();
            choice.max_depth_token = walk.take();
            choice.max_leaves = walk.take_int();
            choice.learning_rate_token = walk.take();
            break;
    }
    return choice;
}

bool is_scaler_head(const std::string& t) {
    return t == "Normalizer" || t == "MinMaxScaler" || t == "MaxAbsScaler" ||
           t == "RobustScaler" || t == "StddScaler";
}

bool is_selector_head(const std::string& t) {
    return t == "VarianceThreshold" || t == "SelectPercentile" || t == "SelectFPR" ||
           t == "SelectFWE" || t == "SelectFDR";
}

}  // namespace

PipelineSpec spec_from_sentence(const Grammar& g, const std::vector<std::string>& tokens) {
    parse_sentence(g, tokens);  // full grammar validation; throws on failure

    PipelineSpec spec;
    TokenWalk walk{tokens};
    while (!walk.done()) {
        auto group = group_from_token(walk.peek());
        if (!group) break;
        spec.groups.add(*group);
        walk.take();
    }
    if (spec.groups.empty()) throw DataError("pipeline sentence names no feature group");
    if (!walk.done() && is_scaler_head(walk.peek())) spec.scaler = read_scaler(walk);
    if (!walk.done() && is_selector_head(walk.peek())) spec.selector = read_selector(walk);
    spec.classifier = read_classifier(walk);
    if (!walk.done()) throw DataError("trailing tokens after classifier");
    return spec;
}

std::vector<std::string> sentence_from_spec(const PipelineSpec& spec) {
    std::vector<std::string> out;
    for (FeatureGroup g : spec.groups.list()) out.push_back(group_token(g));
    if (spec.scaler) {
        const ScalerChoice& s = *spec.scaler;
        switch (s.kind) {
            case ScalerKind::Normalizer:
                out.push_back("Normalizer");
                out.push_back(s.params.norm);
                break;
            case ScalerKind::MinMax: out.push_back("MinMaxScaler"); break;
            case ScalerKind::MaxAbs: out.push_back("MaxAbsScaler"); break;
            case ScalerKind::Robust:
                out.push_back("RobustScaler");
                out.push_back(s.params.with_centering ? "True" : "False");
                out.push_back(s.params.with_scaling ? "True" : "False");
                break;
            case ScalerKind::Standard:
                out.push_back("StddScaler");
                out.push_back(s.params.with_mean ? "True" : "False");
                out.push_back(s.params.with_std ? "True" : "False");
                break;
            case ScalerKind::None: throw DataError("scaler choice cannot be None");
        }
    }
    if (spec.selector) {
        const SelectorChoice& s = *spec.selector;
        switch (s.kind) {
            case SelectorKind::VarianceThreshold:
                out.push_back("VarianceThreshold");
                out.push_back(s.threshold_token);
                break;
            case SelectorKind::SelectPercentile:
                out.push_back("SelectPercentile");
                out.push_back(std::to_string(s.percentile));
                break;
            case SelectorKind::SelectFPR:
                out.push_back("SelectFPR");
                out.push_back(s.alpha_token);
                break;
            case SelectorKind::SelectFWE:
                out.push_back("SelectFWE");
                out.push_back(s.alpha_token);
                break;
            case SelectorKind::SelectFDR:
                out.push_back("SelectFDR");
                out.push_back(s.alpha_token);
                break;
            case SelectorKind::None: throw DataError("selector choice cannot be None");
        }
    }
    const ClassifierChoice& c = spec.classifier;
    out.push_back(to_string(c.kind));
    switch (c.kind) {
        case ClassifierKind::AdaBoost:
            out.push_back(c.samme_r ? "SAMME.R" : "SAMME");
            out.push_back(std::to_string(c.n_estimators));
            out.push_back(c.learning_rate_token);
            break;
        case ClassifierKind::DecisionTree:
        case ClassifierKind::ExtraTree: out.push_back(c.max_depth_token); break;
        case ClassifierKind::RandomForest:
        case ClassifierKind::ExtraTrees:
            out.push_back(std::to_string(c.n_estimators));
            out.push_back(c.max_depth_token);
            break;
        case ClassifierKind::XgBoost:
            out.push_back(std::to_string(c.n_estimators));
            out.push_back(c.max_depth_token);
            out.push_back(std::to_string(c.max_leaves));
            out.push_back(c.learning_rate_token);
            break;
    }
    return out;
}

FittedPipeline fit_pipeline(const PipelineSpec& spec, const Matrix& x,
                            const std::vector<std::string>& column_names, const Labels& y,
                            Rng& rng, const Deadline& deadline) {
    if (!x.empty() && x[0].size() != column_names.size()) {
        throw DataError("column name count does not match matrix width");
    }
    FittedPipeline fitted;
    fitted.spec = spec;
    fitted.column_names = column_names;

    deadline.poll();
    const Matrix* stage = &x;
    Matrix scaled;
    if (spec.scaler) {
        fitted.scaler = fit_scaler(spec.scaler->kind, spec.scaler->params, x);
        scaled = apply_scaler(fitted.scaler, x);
        stage = &scaled;
    }

    deadline.poll();
    Matrix selected;
    if (spec.selector) {
        fitted.mask = fit_selector(spec.selector->kind, spec.selector->params(), *stage, y);
        bool any = false;
        for (bool keep : fitted.mask) any = any || keep;
        if (!any) throw EmptyMaskError();
        selected = apply_selector(fitted.mask, *stage);
        stage = &selected;
    } else {
        fitted.mask.assign(stage->empty() ? 0 : (*stage)[0].size(), true);
    }

    fitted.classifier = make_classifier(spec.classifier.kind, spec.classifier.params());
    fitted.classifier->fit(*stage, y, rng, deadline);
    return fitted;
}

std::vector<double> FittedPipeline::predict_proba(const Matrix& x) const {
    if (!classifier) throw DataError("pipeline is not fitted");
    for (const auto& row : x) {
        if (row.size() != column_names.size()) {
            throw DataError("expected " + std::to_string(column_names.size()) +
                            " input columns, got " + std::to_string(row.size()));
        }
    }
    const Matrix* stage = &x;
    Matrix scaled;
    if (spec.scaler) {
        scaled = apply_scaler(scaler, x);
        stage = &scaled;
    }
    Matrix selected;
    if (spec.selector) {
        selected = apply_selector(mask, *stage);
        stage = &selected;
    }
    return classifier->predict_proba(*stage);
}

std::vector<int> FittedPipeline::predict(const Matrix& x) const {
    std::vector<double> proba = predict_proba(x);
    std::vector<int> labels(proba.size());
    for (std::size_t i = 0; i < proba.size(); ++i) labels[i] = proba[i] >= 0.5 ? 1 : 0;
    return labels;
}

nlohmann::json FittedPipeline::to_json() const {
    if (!classifier) throw DataError("pipeline is not fitted");
    nlohmann::json out;
    out["format_version"] = 1;
    out["sentence"] = sentence_from_spec(spec);
    out["column_names"] = column_names;
    out["scaler"] = {{"center", scaler.center}, {"scale", scaler.scale}};
    std::vector<int> mask_ints(mask.begin(), mask.end());
    out["mask"] = mask_ints;
    out["classifier"] = classifier->to_json();
    return out;
}

FittedPipeline FittedPipeline::from_json(const Grammar& g, const nlohmann::json& j) {
    int version = j.at("format_version").get<int>();
    if (version != 1) {
        throw DataError("unsupported pipeline format_version " + std::to_string(version));
    }
    FittedPipeline fitted;
    auto sentence = j.at("sentence").get<std::vector<std::string>>();
    fitted.spec = spec_from_sentence(g, sentence);  // re-validate on load
    fitted.column_names = j.at("column_names").get<std::vector<std::string>>();
    if (fitted.spec.scaler) {
        fitted.scaler.kind = fitted.spec.scaler->kind;
        fitted.scaler.params = fitted.spec.scaler->params;
    }
    fitted.scaler.center = j.at("scaler").at("center").get<std::vector<double>>();
    fitted.scaler.scale = j.at("scaler").at("scale").get<std::vector<double>>();
    auto mask_ints = j.at("mask").get<std::vector<int>>();
    fitted.mask.assign(mask_ints.begin(), mask_ints.end());
    fitted.classifier = classifier_from_json(j.at("classifier"));
    return fitted;
}

}  // namespace automol
