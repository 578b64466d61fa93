#pragma once

#include <string>

#include "automol/ml_types.hpp"

namespace automol {

enum class ScalerKind { None, Normalizer, MinMax, MaxAbs, Robust, Standard };

struct ScalerParams {
    std::string norm = "l2";     // Normalizer: l1 | l2 | max
    bool with_centering = true;  // Robust
    bool with_scaling = true;    // Robust
    bool with_mean = true;       // Standard
    bool with_std = true;        // Standard
};

// Fitted per-column statistics; Normalizer is row-wise and stateless, so its
// state carries only kind and params.
struct ScalerState {
    ScalerKind kind = ScalerKind::None;
    ScalerParams params;
    std::vector<double> center;  // subtracted (empty = no centering)
    std::vector<double> scale;   // divided by (empty = no scaling)
};

// Linear-interpolation (type-7) quantile of an unsorted sample.
double quantile_type7(std::vector<double> values, double q);

ScalerState fit_scaler(ScalerKind kind, const ScalerParams& params, const Matrix& x);
Matrix apply_scaler(const ScalerState& state, const Matrix& x);

}  // namespace automol
