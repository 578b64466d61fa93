#include "automol/scalers.hpp"

#include <algorithm>
#include <cmath>

namespace automol {

namespace {

std::size_t column_count(const Matrix& x) {
    if (x.empty()) throw DataError("scaler: empty matrix");
    return x[0].size();
}

// Zero spread (constant column, zero norm) leaves values unscaled.
double safe_divisor(double d) { return d == 0.0 ? 1.0 : d; }

}  // namespace

double quantile_type7(std::vector<double> values, double q) {
    if (values.empty()) throw DataError("quantile of empty sample");
    std::sort(values.begin(), values.end());
    const double h = q * (static_cast<double>(values.size()) - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

ScalerState fit_scaler(ScalerKind kind, const ScalerParams& params, const Matrix& x) {
    ScalerState st;
    st.kind = kind;
    st.params = params;
    if (kind == ScalerKind::None || kind == ScalerKind::Normalizer) return st;

    const std::size_t cols = column_count(x);
    const double n = static_cast<double>(x.size());
    std::vector<double> column(x.size());
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < x.size(); ++r) column[r] = x[r][c];
        switch (kind) {
            case ScalerKind::MinMax: {
                const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
                st.center.push_back(*lo);
                st.scale.push_back(safe_divisor(*hi - *lo));
                break;
            }
            case ScalerKind::MaxAbs: {
                double m = 0.0;
                for (const double v : column) m = std::max(m, std::fabs(v));
                st.scale.push_back(safe_divisor(m));
                break;
            }
            case ScalerKind::Robust: {
                if (params.with_centering) st.center.push_back(quantile_type7(column, 0.5));
                if (params.with_scaling)
                    st.scale.push_back(safe_divisor(quantile_type7(column, 0.75) -
                                                    quantile_type7(column, 0.25)));
                break;
            }
            case ScalerKind::Standard: {
                double mean = 0.0;
                for (const double v : column) mean += v;
                mean /= n;
                if (params.with_mean) st.center.push_back(mean);
                if (params.with_std) {
                    double var = 0.0;
                    for (const double v : column) var += (v - mean) * (v - mean);
                    st.scale.push_back(safe_divisor(std::sqrt(var / n)));
                }
                break;
            }
            default: break;
        }
    }
    return st;
}

Matrix apply_scaler(const ScalerState& st, const Matrix& x) {
    if (st.kind == ScalerKind::None) return x;

    Matrix out = x;
    if (st.kind == ScalerKind::Normalizer) {
        for (auto& row : out) {
            double d = 0.0;
            if (st.params.norm == "l1") {
                for (const double v : row) d += std::fabs(v);
            } else if (st.params.norm == "l2") {
                for (const double v : row) d += v * v;
                d = std::sqrt(d);
            } else if (st.params.norm == "max") {
                for (const double v : row) d = std::max(d, std::fabs(v));
            } else {
                throw DataError("unknown norm '" + st.params.norm + "'");
            }
            d = safe_divisor(d);
            for (double& v : row) v /= d;
        }
        return out;
    }

    for (auto& row : out) {
        if (!st.center.empty() && row.size() != st.center.size())
            throw DataError("scaler: column count mismatch");
        if (!st.scale.empty() && row.size() != st.scale.size())
            throw DataError("scaler: column count mismatch");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (!st.center.empty()) row[c] -= st.center[c];
            if (!st.scale.empty()) row[c] /= st.scale[c];
        }
    }
    return out;
}

}  // namespace automol
