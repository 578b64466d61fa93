#pragma once

#include "automol/ml_types.hpp"

namespace automol {

struct ConfusionCounts {
    long tp = 0;
    long tn = 0;
    long fp = 0;
    long fn = 0;

    long total() const { return tp + tn + fp + fn; }
};

ConfusionCounts confusion(const Labels& y_true, const Labels& y_pred);

// (TP·TN − FP·FN) / √((TP+FP)(TP+FN)(TN+FP)(TN+FN)); 0.0 when any factor of
// the denominator vanishes (random-classifier semantics).
double mcc(const ConfusionCounts& c);

}  // namespace automol
