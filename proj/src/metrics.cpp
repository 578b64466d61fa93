#include "automol/metrics.hpp"

#include <cmath>
#include <string>

namespace automol {

ConfusionCounts confusion(const Labels& y_true, const Labels& y_pred) {
    if (y_true.size() != y_pred.size())
        throw DataError("confusion: length mismatch " + std::to_string(y_true.size()) + " vs " +
                        std::to_string(y_pred.size()));
    ConfusionCounts c;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const int t = y_true[i], p = y_pred[i];
        if ((t != 0 && t != 1) || (p != 0 && p != 1))
            throw DataError("confusion: non-binary label at index " + std::to_string(i));
        if (t == 1 && p == 1) ++c.tp;
        else if (t == 0 && p == 0) ++c.tn;
        else if (t == 0 && p == 1) ++c.fp;
        else ++c.fn;
    }
    return c;
}

double mcc(const ConfusionCounts& c) {
    const double tp = static_cast<double>(c.tp), tn = static_cast<double>(c.tn);
    const double fp = static_cast<double>(c.fp), fn = static_cast<double>(c.fn);
    const double f1 = tp + fp, f2 = tp + fn, f3 = tn + fp, f4 = tn + fn;
    if (f1 == 0.0 || f2 == 0.0 || f3 == 0.0 || f4 == 0.0) return 0.0;
    return (tp * tn - fp * fn) / std::sqrt(f1 * f2 * f3 * f4);
}

}  // namespace automol
