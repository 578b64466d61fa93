#include "automol/stats_math.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace automol {

namespace {

// Continued fraction for I_x(a,b) by the modified Lentz method.
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw DataError("incomplete beta needs a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;

    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double f_upper_tail(double f, double d1, double d2) {
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw DataError("F distribution needs positive dof");
    if (!(f > 0.0)) return 1.0;
    if (std::isinf(f)) return 0.0;
    // P(X ≥ f) = I_{d2/(d2 + d1 f)}(d2/2, d1/2)
    return regularized_incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

double f_oneway_statistic(const std::vector<double>& column, const Labels& y) {
    if (column.size() != y.size()) throw DataError("f_oneway: column/label length mismatch");
    double sum[2] = {0.0, 0.0};
    double count[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < column.size(); ++i) {
        if (y[i] != 0 && y[i] != 1)
            throw DataError("f_oneway: non-binary label at index " + std::to_string(i));
        sum[y[i]] += column[i];
        count[y[i]] += 1.0;
    }
    if (count[0] == 0.0 || count[1] == 0.0) throw DataError("f_oneway: single-class input");

    const double n = count[0] + count[1];
    const double mean0 = sum[0] / count[0], mean1 = sum[1] / count[1];
    const double grand = (sum[0] + sum[1]) / n;

    const double ssb = count[0] * (mean0 - grand) * (mean0 - grand) +
                       count[1] * (mean1 - grand) * (mean1 - grand);
    double ssw = 0.0;
    for (std::size_t i = 0; i < column.size(); ++i) {
        const double mu = y[i] == 0 ? mean0 : mean1;
        ssw += (column[i] - mu) * (column[i] - mu);
    }

    if (ssb <= 0.0) return 0.0;
    if (ssw <= 0.0) return std::numeric_limits<double>::infinity();
    return (ssb / 1.0) / (ssw / (n - 2.0));
}

double f_oneway_pvalue(const std::vector<double>& column, const Labels& y) {
    if (column.size() < 3) throw DataError("f_oneway: need n >= 3");
    const double f = f_oneway_statistic(column, y);
    if (f == 0.0) return 1.0;
    if (std::isinf(f)) return kPvalueFloor;
    const double p = f_upper_tail(f, 1.0, static_cast<double>(column.size()) - 2.0);
    return p < kPvalueFloor ? kPvalueFloor : p;
}

}  // namespace automol
