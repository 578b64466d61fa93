#include "automol/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "automol/stats_math.hpp"

namespace automol {

namespace {

std::vector<double> extract_column(const Matrix& x, std::size_t c) {
    std::vector<double> col(x.size());
    for (std::size_t r = 0; r < x.size(); ++r) col[r] = x[r][c];
    return col;
}

std::vector<double> column_pvalues(const Matrix& x, const Labels& y) {
    std::vector<double> p(x[0].size());
    for (std::size_t c = 0; c < p.size(); ++c) p[c] = f_oneway_pvalue(extract_column(x, c), y);
    return p;
}

}  // namespace

std::vector<bool> bonferroni_mask(const std::vector<double>& pvalues, double alpha) {
    const double cut = alpha / static_cast<double>(pvalues.size());
    std::vector<bool> mask(pvalues.size());
    for (std::size_t i = 0; i < pvalues.size(); ++i) mask[i] = pvalues[i] < cut;
    return mask;
}

std::vector<bool> bh_mask(const std::vector<double>& pvalues, double alpha) {
    const std::size_t m = pvalues.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pvalues[a] < pvalues[b]; });

    double cutoff = -1.0;
    for (std::size_t rank = m; rank >= 1; --rank) {
        const double p = pvalues[order[rank - 1]];
        if (p <= static_cast<double>(rank) / static_cast<double>(m) * alpha) {
            cutoff = p;
            break;
        }
    }

    std::vector<bool> mask(m, false);
    if (cutoff < 0.0) return mask;
    for (std::size_t i = 0; i < m; ++i) mask[i] = pvalues[i] <= cutoff;
    return mask;
}

std::vector<bool> fit_selector(SelectorKind kind, const SelectorParams& params, const Matrix& x,
                               const Labels& y) {
    if (x.empty()) throw DataError("selector: empty matrix");
    const std::size_t m = x[0].size();

    switch (kind) {
        case SelectorKind::None:
            return std::vector<bool>(m, true);

        case SelectorKind::VarianceThreshold: {
            std::vector<bool> mask(m);
            const double n = static_cast<double>(x.size());
            for (std::size_t c = 0; c < m; ++c) {
                double mean = 0.0;
                for (const auto& row : x) mean += row[c];
                mean /= n;
                double var = 0.0;
                for (const auto& row : x) var += (row[c] - mean) * (row[c] - mean);
                mask[c] = var / n > params.threshold;
            }
            return mask;
        }

        case SelectorKind::SelectPercentile: {
            std::vector<double> score(m);
            for (std::size_t c = 0; c < m; ++c)
                score[c] = f_oneway_statistic(extract_column(x, c), y);
            std::vector<std::size_t> order(m);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (score[a] != score[b]) return score[a] > score[b];
                return a < b;  // ties keep the lower column index
            });
            const auto keep = static_cast<std::size_t>(std::floor(
                static_cast<double>(m) * static_cast<double>(params.percentile) / 100.0 + 0.5));
            std::vector<bool> mask(m, false);
            for (std::size_t i = 0; i < std::min(keep, m); ++i) mask[order[i]] = true;
            return mask;
        }

        case SelectorKind::SelectFPR: {
            const auto p = column_pvalues(x, y);
            std::vector<bool> mask(m);
            for (std::size_t c = 0; c < m; ++c) mask[c] = p[c] < params.alpha;
            return mask;
        }

        case SelectorKind::SelectFWE:
            return bonferroni_mask(column_pvalues(x, y), params.alpha);

        case SelectorKind::SelectFDR:
            return bh_mask(column_pvalues(x, y), params.alpha);
    }
    throw DataError("unknown selector kind");
}

Matrix apply_selector(const std::vector<bool>& mask, const Matrix& x) {
    Matrix out;
    out.reserve(x.size());
    for (const auto& row : x) {
        if (row.size() != mask.size()) throw DataError("selector: column count mismatch");
        std::vector<double> kept;
        for (std::size_t c = 0; c < mask.size(); ++c)
            if (mask[c]) kept.push_back(row[c]);
        out.push_back(std::move(kept));
    }
    return out;
}

}  // namespace automol
