#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "automol/errors.hpp"
#include "automol/rng.hpp"
#include "automol/stats_compare.hpp"
#include "automol/stats_math.hpp"

using namespace automol;

namespace {

// the bundled four-method benchmark table
ScoreTable benchmark_table() {
    ScoreTable t;
    t.methods = {"automl_mean", "automl_best", "baseline_1", "baseline_2"};
    t.scores = {
        {0.570, 0.610, 0.609, 0.579}, {0.792, 0.837, 0.776, 0.820},
        {0.754, 0.783, 0.716, 0.696}, {0.287, 0.289, 0.214, 0.232},
        {0.420, 0.394, 0.108, 0.368}, {0.578, 0.615, 0.601, 0.553},
        {0.619, 0.647, 0.583, 0.590}, {0.528, 0.556, 0.408, 0.488},
        {0.284, 0.334, 0.197, 0.267}, {0.563, 0.590, 0.623, 0.534},
        {0.427, 0.274, 0.289, 0.440}, {0.371, 0.427, 0.353, 0.402},
    };
    for (std::size_t i = 0; i < t.scores.size(); ++i)
        t.datasets.push_back("ds" + std::to_string(i + 1));
    return t;
}

}  // namespace

TEST_CASE("rank_row implements midranks, best first") {
    CHECK(rank_row({0.9, 0.5, 0.7}) == std::vector<double>{1.0, 3.0, 2.0});
    CHECK(rank_row({0.5, 0.5, 0.1}) == std::vector<double>{1.5, 1.5, 3.0});
    CHECK(rank_row({0.3, 0.3, 0.3}) == std::vector<double>{2.0, 2.0, 2.0});
    CHECK(rank_row({1.0}) == std::vector<double>{1.0});
    CHECK(rank_row({0.1, 0.4, 0.4, 0.9}) == std::vector<double>{4.0, 2.5, 2.5, 1.0});
}

TEST_CASE("ranks are invariant under monotone transforms and equivariant under permutation") {
    Rng rng(15);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> scores(5);
        for (double& s : scores) s = rng.uniform(0.0, 1.0);

        std::vector<double> transformed(5);
        for (std::size_t i = 0; i < 5; ++i)
            transformed[i] = std::exp(2.0 * scores[i]) - 0.5;  // strictly increasing
        CHECK(rank_row(scores) == rank_row(transformed));

        std::vector<double> swapped = scores;
        std::swap(swapped[1], swapped[3]);
        auto r = rank_row(scores);
        auto rs = rank_row(swapped);
        CHECK(rs[1] == r[3]);
        CHECK(rs[3] == r[1]);
        CHECK(rs[0] == r[0]);
    }
}

TEST_CASE("benchmark table reproduces the reference statistics") {
    ScoreTable t = benchmark_table();
    auto ranks = average_ranks(t);
    REQUIRE(ranks.size() == 4);
    CHECK(ranks[0] == doctest::Approx(2.417).epsilon(0.001));
    CHECK(ranks[1] == doctest::Approx(1.417).epsilon(0.001));
    CHECK(ranks[2] == doctest::Approx(3.250).epsilon(0.001));
    CHECK(ranks[3] == doctest::Approx(2.917).epsilon(0.001));

    FriedmanResult r = friedman_iman_davenport(t);
    CHECK(r.n_datasets == 12);
    CHECK(r.k_methods == 4);
    CHECK_FALSE(r.degenerate);
    CHECK(r.chi2 == doctest::Approx(13.8).epsilon(1e-6));
    CHECK(r.f_stat == doctest::Approx(6.837838).epsilon(1e-5));
    CHECK(r.p_value == doctest::Approx(0.001040557).epsilon(2e-4 / 0.001040557));
}

TEST_CASE("shipped sample file matches the embedded table") {
    ScoreTable shipped = read_score_csv("data/sample_scores.csv");
    ScoreTable t = benchmark_table();
    CHECK(shipped.methods == t.methods);
    REQUIRE(shipped.scores.size() == t.scores.size());
    for (std::size_t i = 0; i < t.scores.size(); ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(shipped.scores[i][j] == doctest::Approx(t.scores[i][j]).epsilon(1e-12));
}

TEST_CASE("friedman on identical columns is the null result") {
    std::vector<double> ranks = {2.0, 2.0, 2.0};
    FriedmanResult r = friedman_iman_davenport(ranks, 10);
    CHECK(r.chi2 == doctest::Approx(0.0));
    CHECK(r.p_value == doctest::Approx(1.0));
    CHECK_FALSE(r.degenerate);
}

TEST_CASE("friedman flags the degenerate saturated case") {
    // k=2, N=2, no ties: chi2 hits its maximum N(k-1) and the F statistic
    // denominator vanishes
    ScoreTable t;
    t.datasets = {"a", "b"};
    t.methods = {"m1", "m2"};
    t.scores = {{0.9, 0.1}, {0.8, 0.2}};
    FriedmanResult r = friedman_iman_davenport(t);
    CHECK(r.degenerate);
    CHECK(r.p_value == 0.0);
}

TEST_CASE("nemenyi q constants match the published two-tailed table") {
    CHECK(nemenyi_q(2, 0.05) == doctest::Approx(1.960).epsilon(1e-4));
    CHECK(nemenyi_q(3, 0.05) == doctest::Approx(2.343).epsilon(1e-4));
    CHECK(nemenyi_q(4, 0.05) == doctest::Approx(2.569).epsilon(1e-4));
    CHECK(nemenyi_q(10, 0.05) == doctest::Approx(3.164).epsilon(1e-4));
    CHECK(nemenyi_q(2, 0.10) == doctest::Approx(1.645).epsilon(1e-4));
    CHECK(nemenyi_q(4, 0.10) == doctest::Approx(2.291).epsilon(1e-4));
    CHECK(nemenyi_q(10, 0.10) == doctest::Approx(2.920).epsilon(1e-4));
    CHECK_THROWS_AS(nemenyi_q(1, 0.05), DataError);
    CHECK_THROWS_AS(nemenyi_q(11, 0.05), DataError);
    CHECK_THROWS_AS(nemenyi_q(4, 0.2), DataError);
}

TEST_CASE("critical distance for k=4, N=12") {
    const double cd05 = nemenyi_cd(4, 12, 0.05);
    CHECK(cd05 == doctest::Approx(1.353982).epsilon(0.001 / 1.353982));
    const double cd10 = nemenyi_cd(4, 12, 0.10);
    CHECK(cd10 == doctest::Approx(2.291 * std::sqrt(20.0 / 72.0)).epsilon(1e-4));
    // k=2 reduces to the normal quantile scaling
    CHECK(nemenyi_cd(2, 9, 0.05) == doctest::Approx(1.960 * std::sqrt(1.0 / 9.0)).epsilon(1e-6));
}

TEST_CASE("pairwise significance under the reference CD and a stricter one") {
    ScoreTable t = benchmark_table();
    auto ranks = average_ranks(t);

    for (double cd : {1.3539, 1.4072}) {
        auto sig = pairwise_significance(ranks, cd);
        // automl_best vs baseline_1 and vs baseline_2 are significant
        CHECK(sig[1][2]);
        CHECK(sig[1][3]);
        // automl_mean vs baseline_1 is not
        CHECK_FALSE(sig[0][2]);
        // nothing is significant against itself
        for (std::size_t i = 0; i < 4; ++i) CHECK_FALSE(sig[i][i]);
        // symmetry
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) CHECK(sig[i][j] == sig[j][i]);
    }
}

TEST_CASE("friedman p-value agrees with numeric quadrature of the f density") {
    // integrate the F(3, 33) density from the statistic to a far cutoff with
    // Simpson's rule and compare to the closed-form upper tail
    const double d1 = 3.0, d2 = 33.0;
    const double f0 = 6.8378378378;
    auto density = [&](double x) {
        const double lb = std::lgamma((d1 + d2) / 2) - std::lgamma(d1 / 2) -
                          std::lgamma(d2 / 2) + (d1 / 2) * std::log(d1 / d2) +
                          (d1 / 2 - 1) * std::log(x) -
                          ((d1 + d2) / 2) * std::log1p(d1 * x / d2);
        return std::exp(lb);
    };
    const double hi = 2000.0;
    const int steps = 400000;  // even
    const double h = (hi - f0) / steps;
    double integral = density(f0) + density(hi);
    for (int i = 1; i < steps; ++i)
        integral += density(f0 + h * i) * (i % 2 ? 4.0 : 2.0);
    integral *= h / 3.0;
    CHECK(f_upper_tail(f0, d1, d2) == doctest::Approx(integral).epsilon(1e-8 / integral));
}

TEST_CASE("score csv reader accepts the documented shape") {
    const std::string path = "build/test_scores_ok.csv";
    std::filesystem::create_directories("build");
    {
        std::ofstream out(path);
        out << "dataset,m1,m2\nfirst,0.5,0.25\nsecond,0.75,0.5\n";
    }
    ScoreTable t = read_score_csv(path);
    CHECK(t.datasets == std::vector<std::string>{"first", "second"});
    CHECK(t.methods == std::vector<std::string>{"m1", "m2"});
    CHECK(t.scores[1][0] == doctest::Approx(0.75));
    std::filesystem::remove(path);
}

TEST_CASE("score csv reader rejects malformed input") {
    std::filesystem::create_directories("build");
    auto write_and_read = [](const std::string& name, const std::string& content) {
        const std::string path = "build/" + name;
        {
            std::ofstream out(path);
            out << content;
        }
        ScoreTable t;
        std::string error;
        try {
            t = read_score_csv(path);
        } catch (const std::exception& e) {
            error = e.what();
        }
        std::filesystem::remove(path);
        return error;
    };

    CHECK(write_and_read("bad_header.csv", "name,m1,m2\nx,0.5,0.5\n")
              .find("header") != std::string::npos);
    CHECK(write_and_read("one_method.csv", "dataset,m1\nx,0.5\ny,0.6\n")
              .find("header") != std::string::npos);
    CHECK(write_and_read("short_row.csv", "dataset,m1,m2\nx,0.5\ny,0.5,0.6\n")
              .find("line 2") != std::string::npos);
    CHECK(write_and_read("bad_number.csv", "dataset,m1,m2\nx,abc,0.5\ny,0.5,0.6\n")
              .find("not a number") != std::string::npos);
    CHECK(write_and_read("no_rows.csv", "dataset,m1,m2\n")
              .find("datasets") != std::string::npos);
    CHECK(write_and_read("one_row.csv", "dataset,m1,m2\nx,0.5,0.6\n")
              .find("datasets") != std::string::npos);
    CHECK_THROWS_AS(read_score_csv("/nonexistent/scores.csv"), DataError);

    const std::string lineinfo =
        write_and_read("bad_number2.csv", "dataset,m1,m2\nx,0.5,0.6\ny,zz,0.7\n");
    CHECK(lineinfo.find("line 3") != std::string::npos);  // error names the line
}

TEST_CASE("markdown report carries the headline numbers") {
    ScoreTable t = benchmark_table();
    const std::string md = comparison_markdown(t);
    CHECK(md.find("automl_best") != std::string::npos);
    CHECK(md.find("1.417") != std::string::npos);
    CHECK(md.find("3.250") != std::string::npos);
    CHECK(md.find("13.8") != std::string::npos);
    CHECK(md.find("6.8378") != std::string::npos);
    CHECK(md.find("0.00104") != std::string::npos);
    CHECK(md.find("yes") != std::string::npos);
    CHECK(md.find("no") != std::string::npos);

    const std::string csv = comparison_csv(t);
    CHECK(csv.find("section,name,value") != std::string::npos);
    CHECK(csv.find("significant") != std::string::npos);
}
