#pragma once

#include "automol/ml_types.hpp"

namespace automol {

enum class SelectorKind { None, VarianceThreshold, SelectPercentile, SelectFPR, SelectFWE,
                          SelectFDR };

struct SelectorParams {
    double threshold = 0.0;  // VarianceThreshold
    int percentile = 10;     // SelectPercentile
    double alpha = 0.05;     // FPR / FWE / FDR
};

// Boolean keep-mask over columns; the empty mask is a legal result handled
// upstream as a pipeline failure.
std::vector<bool> fit_selector(SelectorKind kind, const SelectorParams& params, const Matrix& x,
                               const Labels& y);
Matrix apply_selector(const std::vector<bool>& mask, const Matrix& x);

// Raw multiple-testing rules, exposed for direct-definition oracle tests.
std::vector<bool> bonferroni_mask(const std::vector<double>& pvalues, double alpha);
std::vector<bool> bh_mask(const std::vector<double>& pvalues, double alpha);

}  // namespace automol
