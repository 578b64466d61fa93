#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "automol/dataset.hpp"
#include "automol/search.hpp"

using namespace automol;

namespace {

Grammar& shipped() {
    static Grammar g = Grammar::parse_file("grammars/pipeline.bnf");
    return g;
}

SearchConfig stub_config(std::uint64_t seed, int pop = 24, int gens = 12) {
    SearchConfig cfg;
    cfg.population_size = pop;
    cfg.generations = gens;
    cfg.master_seed = seed;
    cfg.serial = true;
    return cfg;
}

// strip the wall-clock column, the only legitimately nondeterministic field
std::string mask_elapsed(const std::string& csv) {
    std::stringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        const auto cut = line.rfind(',');
        out += line.substr(0, cut);
        out += '\n';
    }
    return out;
}

}  // namespace

TEST_CASE("search produces one log row per generation plus the initial one") {
    StubFitness stub(1);
    SearchConfig cfg = stub_config(5);
    int observed = 0;
    SearchResult res = run_search(shipped(), stub, cfg,
                                  [&](const GenerationRow&) { ++observed; });
    CHECK(res.log.size() == 13);
    CHECK(observed == 13);
    for (int gen = 0; gen <= 12; ++gen) CHECK(res.log[static_cast<std::size_t>(gen)].generation == gen);
    CHECK_FALSE(res.stopped_by_budget);
    CHECK(res.population.size() == 24);
}

TEST_CASE("every individual of the final population is in the language") {
    StubFitness stub(2);
    SearchResult res = run_search(shipped(), stub, stub_config(6));
    for (const auto& ind : res.population) {
        REQUIRE(tree_valid(shipped(), ind.tree));
        CHECK(parse_sentence(shipped(), ind.sentence()).sentence() == ind.sentence());
        REQUIRE(ind.evaluated());
    }
    // best() is the top of the final ranking
    for (const auto& ind : res.population) CHECK(res.best().score() >= ind.score());
}

TEST_CASE("odd population sizes are preserved") {
    StubFitness stub(3);
    SearchResult res = run_search(shipped(), stub, stub_config(7, 21, 6));
    CHECK(res.population.size() == 21);
    for (const auto& row : res.log) CHECK(row.best_sentence.size() > 0);
}

TEST_CASE("elitism makes best fitness monotone within a foldset epoch") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        StubFitness stub(seed);
        SearchConfig cfg = stub_config(seed);
        SearchResult res = run_search(shipped(), stub, cfg);
        for (std::size_t i = 1; i < res.log.size(); ++i) {
            if (res.log[i].foldset_id == res.log[i - 1].foldset_id)
                CHECK(res.log[i].best_mcc >= res.log[i - 1].best_mcc);
        }
    }
}

TEST_CASE("fold resampling happens every resample_period generations") {
    StubFitness stub(9);
    SearchConfig cfg = stub_config(11, 24, 12);
    cfg.resample_period = 5;
    SearchResult res = run_search(shipped(), stub, cfg);
    for (const auto& row : res.log)
        CHECK(row.foldset_id == row.generation / 5);
    CHECK(res.final_foldset_id == 2);

    // resampling resets every record, elites included, so the foldset switch
    // can lower the best score; within epochs it cannot
    cfg.resample_period = 3;
    StubFitness stub2(9);
    SearchResult res2 = run_search(shipped(), stub2, cfg);
    for (const auto& row : res2.log) CHECK(row.foldset_id == row.generation / 3);
}

TEST_CASE("a fold-insensitive stub is unaffected by resampling") {
    StubFitness stub(4, false);
    SearchConfig cfg = stub_config(8);
    SearchResult res = run_search(shipped(), stub, cfg);
    for (std::size_t i = 1; i < res.log.size(); ++i)
        CHECK(res.log[i].best_mcc >= res.log[i - 1].best_mcc);
}

TEST_CASE("search is deterministic per master seed and diverges across seeds") {
    StubFitness s1(0), s2(0), s3(0);
    SearchConfig cfg = stub_config(77);
    SearchResult a = run_search(shipped(), s1, cfg);
    SearchResult b = run_search(shipped(), s2, cfg);
    CHECK(mask_elapsed(generation_log_csv(a.log)) == mask_elapsed(generation_log_csv(b.log)));
    CHECK(a.best().sentence() == b.best().sentence());

    SearchConfig other = stub_config(78);
    SearchResult c = run_search(shipped(), s3, other);
    CHECK(mask_elapsed(generation_log_csv(a.log)) != mask_elapsed(generation_log_csv(c.log)));
}

TEST_CASE("parallel and serial evaluation log identical rows") {
    SearchConfig serial_cfg = stub_config(31);
    SearchConfig parallel_cfg = serial_cfg;
    parallel_cfg.serial = false;

    StubFitness s1(6), s2(6);
    SearchResult ser = run_search(shipped(), s1, serial_cfg);
    SearchResult par = run_search(shipped(), s2, parallel_cfg);
    CHECK(mask_elapsed(generation_log_csv(ser.log)) ==
          mask_elapsed(generation_log_csv(par.log)));
    CHECK(ser.best().sentence() == par.best().sentence());
    CHECK(ser.population.size() == par.population.size());
    for (std::size_t i = 0; i < ser.population.size(); ++i)
        CHECK(ser.population[i].sentence() == par.population[i].sentence());
}

TEST_CASE("near-zero time budget stops after the initial generation") {
    StubFitness stub(5);
    SearchConfig cfg = stub_config(13, 24, 50);
    cfg.time_budget_seconds = 1e-9;
    SearchResult res = run_search(shipped(), stub, cfg);
    CHECK(res.stopped_by_budget);
    CHECK(res.log.size() == 1);
    CHECK(res.population.size() == 24);

    // a non-positive budget means no wall-clock limit at all
    cfg.time_budget_seconds = -1.0;
    cfg.generations = 3;
    StubFitness stub2(5);
    SearchResult unlimited = run_search(shipped(), stub2, cfg);
    CHECK_FALSE(unlimited.stopped_by_budget);
    CHECK(unlimited.log.size() == 4);
}

TEST_CASE("csv has the documented shape") {
    StubFitness stub(1);
    SearchResult res = run_search(shipped(), stub, stub_config(3, 24, 4));
    const std::string csv = generation_log_csv(res.log);
    std::stringstream in(csv);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header ==
          "generation,best_mcc,mean_mcc,std_mcc,best_sentence,foldset_id,evals,cache_hits,"
          "elapsed_s");
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 8);
        ++rows;
    }
    CHECK(rows == 5);
}

TEST_CASE("eval counters in the log are reproducible") {
    StubFitness s1(8), s2(8);
    SearchConfig cfg = stub_config(21);
    SearchResult a = run_search(shipped(), s1, cfg);
    SearchResult b = run_search(shipped(), s2, cfg);
    REQUIRE(a.log.size() == b.log.size());
    for (std::size_t i = 0; i < a.log.size(); ++i) {
        CHECK(a.log[i].evals == b.log[i].evals);
        CHECK(a.log[i].cache_hits == b.log[i].cache_hits);
        CHECK(a.log[i].best_mcc == b.log[i].best_mcc);
        CHECK(a.log[i].best_sentence == b.log[i].best_sentence);
    }
}

TEST_CASE("population statistics are consistent with the population") {
    StubFitness stub(10);
    SearchConfig cfg = stub_config(17, 16, 3);
    SearchResult res = run_search(shipped(), stub, cfg);
    const GenerationRow& last = res.log.back();

    double best = 0.0, mean = 0.0;
    for (const auto& ind : res.population) {
        best = std::max(best, ind.score());
        mean += ind.score();
    }
    mean /= static_cast<double>(res.population.size());
    CHECK(last.best_mcc == doctest::Approx(best).epsilon(1e-9));
    CHECK(last.mean_mcc == doctest::Approx(mean).epsilon(1e-9));
    CHECK(last.best_sentence == join_tokens(res.best().sentence()));

    // selection bookkeeping: per-classifier counts over the final population
    // add up to the population size
    std::map<std::string, int> by_classifier;
    for (const auto& ind : res.population) {
        PipelineSpec spec = spec_from_sentence(shipped(), ind.sentence());
        by_classifier[to_string(spec.classifier.kind)]++;
    }
    int total = 0;
    for (const auto& [name, count] : by_classifier) total += count;
    CHECK(total == 16);
}

TEST_CASE("search validates its configuration") {
    StubFitness stub(1);
    SearchConfig bad = stub_config(1);
    bad.population_size = 1;
    CHECK_THROWS_AS(run_search(shipped(), stub, bad), DataError);

    bad = stub_config(1);
    bad.elitism = bad.population_size;
    CHECK_THROWS_AS(run_search(shipped(), stub, bad), DataError);

    bad = stub_config(1);
    bad.generations = -1;
    CHECK_THROWS_AS(run_search(shipped(), stub, bad), DataError);

    bad = stub_config(1);
    bad.resample_period = 0;
    CHECK_THROWS_AS(run_search(shipped(), stub, bad), DataError);

    bad = stub_config(1);
    bad.tournament_size = 0;
    CHECK_THROWS_AS(run_search(shipped(), stub, bad), DataError);
}
