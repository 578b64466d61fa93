#include "automol/stats_compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "automol/errors.hpp"
#include "automol/stats_math.hpp"

namespace automol {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

void check_table(const ScoreTable& t) {
    if (t.k_methods() < 2) throw DataError("need at least 2 methods");
    if (t.n_datasets() < 2) throw DataError("need at least 2 datasets");
}

}  // namespace

ScoreTable read_score_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open score table: " + path);
    ScoreTable t;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        std::vector<std::string> fields = split_csv_line(trimmed);
        if (t.methods.empty()) {
            if (fields.size() < 3 || trim(fields[0]) != "dataset") {
                throw DataError("score table header must be dataset,method1,...");
            }
            for (std::size_t i = 1; i < fields.size(); ++i) {
                t.methods.push_back(trim(fields[i]));
            }
            continue;
        }
        if (fields.size() != t.methods.size() + 1) {
            throw DataError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(t.methods.size() + 1) + " fields");
        }
        t.datasets.push_back(trim(fields[0]));
        std::vector<double> row;
        for (std::size_t i = 1; i < fields.size(); ++i) {
            try {
                row.push_back(std::stod(trim(fields[i])));
            } catch (const std::exception&) {
                throw DataError("line " + std::to_string(line_no) +
                                ": not a number: " + fields[i]);
            }
        }
        t.scores.push_back(std::move(row));
    }
    check_table(t);
    return t;
}

std::vector<double> rank_row(const std::vector<double>& scores) {
    std::size_t k = scores.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    std::vector<double> ranks(k, 0.0);
    std::size_t i = 0;
    while (i < k) {
        std::size_t j = i;
        while (j + 1 < k && scores[order[j + 1]] == scores[order[i]]) ++j;
        // positions i..j (0-based) share ranks i+1..j+1; give each the mean
        double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t p = i; p <= j; ++p) ranks[order[p]] = mid;
        i = j + 1;
    }
    return ranks;
}

std::vector<double> average_ranks(const ScoreTable& t) {
    check_table(t);
    std::vector<double> sums(t.k_methods(), 0.0);
    for (const auto& row : t.scores) {
        std::vector<double> ranks = rank_row(row);
        for (std::size_t j = 0; j < ranks.size(); ++j) sums[j] += ranks[j];
    }
    for (double& s : sums) s /= static_cast<double>(t.n_datasets());
    return sums;
}

FriedmanResult friedman_iman_davenport(const std::vector<double>& avg_ranks,
                                       int n_datasets) {
    int k = static_cast<int>(avg_ranks.size());
    if (k < 2) throw DataError("need at least 2 methods");
    if (n_datasets < 2) throw DataError("need at least 2 datasets");
    FriedmanResult r;
    r.n_datasets = n_datasets;
    r.k_methods = k;

    double n = n_datasets;
    double kk = k;
    double sum_sq = 0.0;
    for (double rank : avg_ranks) sum_sq += rank * rank;
    r.chi2 = (12.0 * n / (kk * (kk + 1.0))) * (sum_sq - kk * (kk + 1.0) * (kk + 1.0) / 4.0);

    double denom = n * (kk - 1.0) - r.chi2;
    if (denom <= 0.0) {
        r.degenerate = true;
        r.f_stat = std::numeric_limits<double>::infinity();
        r.p_value = 0.0;
        return r;
    }
    r.f_stat = (n - 1.0) * r.chi2 / denom;
    r.p_value = f_upper_tail(r.f_stat, kk - 1.0, (kk - 1.0) * (n - 1.0));
    return r;
}

FriedmanResult friedman_iman_davenport(const ScoreTable& t) {
    return friedman_iman_davenport(average_ranks(t), static_cast<int>(t.n_datasets()));
}

double nemenyi_q(int k, double alpha) {
    // Two-tailed Nemenyi constants (studentized range / sqrt 2).
    static const double q05[] = {1.960, 2.343, 2.569, 2.728, 2.850,
                                 2.949, 3.031, 3.102, 3.164};
    static const double q10[] = {1.645, 2.052, 2.291, 2.459, 2.589,
                                 2.693, 2.780, 2.855, 2.920};
    if (k < 2 || k > 10) throw DataError("Nemenyi q tabulated only for k in [2,10]");
    if (alpha == 0.05) return q05[k - 2];
    if (alpha == 0.10) return q10[k - 2];
    throw DataError("Nemenyi q tabulated only for alpha 0.05 and 0.10");
}

double nemenyi_cd(int k, int n_datasets, double alpha) {
    if (n_datasets < 2) throw DataError("need at least 2 datasets");
    double kk = k;
    return nemenyi_q(k, alpha) *
           std::sqrt(kk * (kk + 1.0) / (6.0 * static_cast<double>(n_datasets)));
}

std::vector<std::vector<bool>> pairwise_significance(const std::vector<double>& avg_ranks,
                                                     double cd) {
    std::size_t k = avg_ranks.size();
    std::vector<std::vector<bool>> sig(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            sig[i][j] = i != j && std::abs(avg_ranks[i] - avg_ranks[j]) >= cd;
        }
    }
    return sig;
}

namespace {

std::string fmt(double v, int decimals = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string fmt_p(double p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", p);
    return buf;
}

}  // namespace

std::string comparison_markdown(const ScoreTable& t) {
    std::vector<double> ranks = average_ranks(t);
    FriedmanResult fr = friedman_iman_davenport(ranks, static_cast<int>(t.n_datasets()));
    int k = fr.k_methods;

    std::string out;
    out += "# Method comparison\n\n";
    out += "Datasets: " + std::to_string(fr.n_datasets) +
           ", methods: " + std::to_string(k) + "\n\n";
    out += "## Average ranks (1 = best)\n\n";
    out += "| method | average rank |\n|---|---|\n";
    for (std::size_t j = 0; j < ranks.size(); ++j) {
        out += "| " + t.methods[j] + " | " + fmt(ranks[j], 3) + " |\n";
    }
    out += "\n## Friedman / Iman-Davenport\n\n";
    out += "- chi2_F = " + fmt(fr.chi2) + "\n";
    out += "- F_F = " + (fr.degenerate ? std::string("inf (degenerate)") : fmt(fr.f_stat)) +
           "\n";
    out += "- p = " + fmt_p(fr.p_value) + "\n";

    bool q_available = k >= 2 && k <= 10;
    if (q_available) {
        double cd05 = nemenyi_cd(k, fr.n_datasets, 0.05);
        double cd10 = nemenyi_cd(k, fr.n_datasets, 0.10);
        out += "\n## Nemenyi critical difference\n\n";
        out += "- CD(alpha=0.05) = " + fmt(cd05) + "\n";
        out += "- CD(alpha=0.10) = " + fmt(cd10) + "\n";
        out += "\n## Pairwise significance (alpha=0.05): |rank_i - rank_j| >= CD\n\n";
        auto sig = pairwise_significance(ranks, cd05);
        out += "| |";
        for (const std::string& m : t.methods) out += " " + m + " |";
        out += "\n|---|";
        for (std::size_t j = 0; j < t.methods.size(); ++j) out += "---|";
        out += "\n";
        for (std::size_t i = 0; i < t.methods.size(); ++i) {
            out += "| " + t.methods[i] + " |";
            for (std::size_t j = 0; j < t.methods.size(); ++j) {
                out += i == j ? " - |" : (sig[i][j] ? " yes |" : " no |");
            }
            out += "\n";
        }
    } else {
        out += "\nNemenyi CD unavailable: q constants tabulated only for k in [2,10].\n";
    }
    return out;
}

std::string comparison_csv(const ScoreTable& t) {
    std::vector<double> ranks = average_ranks(t);
    FriedmanResult fr = friedman_iman_davenport(ranks, static_cast<int>(t.n_datasets()));
    int k = fr.k_methods;

    std::string out = "section,name,value\n";
    for (std::size_t j = 0; j < ranks.size(); ++j) {
        out += "rank," + t.methods[j] + "," + fmt(ranks[j], 6) + "\n";
    }
    out += "friedman,chi2," + fmt(fr.chi2, 6) + "\n";
    out += "friedman,f_stat," + (fr.degenerate ? std::string("inf") : fmt(fr.f_stat, 6)) +
           "\n";
    out += "friedman,p," + fmt_p(fr.p_value) + "\n";
    out += "friedman,degenerate," + std::string(fr.degenerate ? "1" : "0") + "\n";
    if (k >= 2 && k <= 10) {
        double cd05 = nemenyi_cd(k, fr.n_datasets, 0.05);
        double cd10 = nemenyi_cd(k, fr.n_datasets, 0.10);
        out += "nemenyi,cd_alpha_0.05," + fmt(cd05, 6) + "\n";
        out += "nemenyi,cd_alpha_0.10," + fmt(cd10, 6) + "\n";
        auto sig = pairwise_significance(ranks, cd05);
        for (std::size_t i = 0; i < t.methods.size(); ++i) {
            for (std::size_t j = i + 1; j < t.methods.size(); ++j) {
                out += "pairwise_0.05," + t.methods[i] + " vs " + t.methods[j] + "," +
                       (sig[i][j] ? "significant" : "not-significant") + "\n";
            }
        }
    }
    return out;
}

}  // namespace automol
