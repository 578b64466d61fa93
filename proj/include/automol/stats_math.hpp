#pragma once

#include "automol/ml_types.hpp"

namespace automol {

// Regularized incomplete beta I_x(a,b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

// P(X ≥ f) for X ~ F(d1, d2); f ≤ 0 gives 1.
double f_upper_tail(double f, double d1, double d2);

// One-way ANOVA F statistic between the two label groups.
double f_oneway_statistic(const std::vector<double>& column, const Labels& y);

// p from F(1, n−2); zero between-group variance → 1; perfect separation
// (zero within-group variance, nonzero between) → underflow floor 1e−300.
double f_oneway_pvalue(const std::vector<double>& column, const Labels& y);

inline constexpr double kPvalueFloor = 1e-300;

}  // namespace automol
