#pragma once

#include <string>
#include <vector>

namespace automol {

enum class EvalStatus { Ok, Timeout, EmptyFeatureSet, TrainFailure };

inline std::string to_string(EvalStatus s) {
    switch (s) {
        case EvalStatus::Ok: return "ok";
        case EvalStatus::Timeout: return "timeout";
        case EvalStatus::EmptyFeatureSet: return "empty-feature-set";
        case EvalStatus::TrainFailure: return "train-failure";
    }
    return "?";
}

// Outcome of scoring one pipeline over a fold set. Any status other than Ok
// forces mean_mcc to 0.0 so broken pipelines sink in selection instead of
// aborting the run.
struct FitnessRecord {
    double mean_mcc = 0.0;
    std::vector<double> per_fold_mcc;
    EvalStatus status = EvalStatus::Ok;
    std::vector<double> fold_seconds;
};

}  // namespace automol
