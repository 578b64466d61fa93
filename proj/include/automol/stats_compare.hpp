#pragma once

#include <string>
#include <vector>

namespace automol {

// Scores of k methods over N datasets; higher is better.
struct ScoreTable {
    std::vector<std::string> datasets;
    std::vector<std::string> methods;
    std::vector<std::vector<double>> scores;  // [dataset][method]

    std::size_t n_datasets() const { return datasets.size(); }
    std::size_t k_methods() const { return methods.size(); }
};

ScoreTable read_score_csv(const std::string& path);

// Ranks within one row: best score gets rank 1, ties get the mean of the
// tied ranks (midrank rule).
std::vector<double> rank_row(const std::vector<double>& scores);

// Column means of the per-dataset ranks.
std::vector<double> average_ranks(const ScoreTable& t);

struct FriedmanResult {
    double chi2 = 0.0;
    double f_stat = 0.0;
    double p_value = 1.0;
    bool degenerate = false;  // N(k-1) == chi2: F statistic blows up, p -> 0
    int n_datasets = 0;
    int k_methods = 0;
};

FriedmanResult friedman_iman_davenport(const std::vector<double>& avg_ranks, int n_datasets);
FriedmanResult friedman_iman_davenport(const ScoreTable& t);

// Studentized-range-based q constants for the Nemenyi test, k in [2,10],
// alpha in {0.05, 0.10} (Demsar's two-tailed table, q_alpha / sqrt(2)).
double nemenyi_q(int k, double alpha);
double nemenyi_cd(int k, int n_datasets, double alpha = 0.05);

// |avg_rank_i - avg_rank_j| >= cd
std::vector<std::vector<bool>> pairwise_significance(const std::vector<double>& avg_ranks,
                                                     double cd);

// Full report: ranks, test statistics, CD at both alphas, pairwise matrix.
std::string comparison_markdown(const ScoreTable& t);
std::string comparison_csv(const ScoreTable& t);

}  // namespace automol
