#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "automol/genome.hpp"
#include "automol/grammar.hpp"

using namespace automol;

namespace {

Grammar shipped() { return Grammar::parse_file("grammars/pipeline.bnf"); }

Individual random_individual(const Grammar& g, std::uint64_t seed) {
    Rng rng(seed);
    return Individual{random_derivation(g, rng, 20), std::nullopt, 0};
}

bool has_any(const std::vector<std::string>& sentence, const std::vector<std::string>& heads) {
    return std::any_of(sentence.begin(), sentence.end(), [&](const std::string& t) {
        return std::find(heads.begin(), heads.end(), t) != heads.end();
    });
}

const std::vector<std::string> kScalerHeads = {"Normalizer", "MinMaxScaler", "MaxAbsScaler",
                                               "RobustScaler", "StddScaler"};

}  // namespace

TEST_CASE("crossover produces valid, unevaluated offspring that re-parse") {
    Grammar g = shipped();
    for (int trial = 0; trial < 200; ++trial) {
        Individual a = random_individual(g, 2 * trial);
        Individual b = random_individual(g, 2 * trial + 1);
        a.fitness = FitnessRecord{0.5, {}, EvalStatus::Ok, {}};
        b.fitness = FitnessRecord{0.7, {}, EvalStatus::Ok, {}};

        Rng rng(1000 + trial);
        auto [c1, c2] = whigham_crossover(a, b, rng);
        CHECK_FALSE(c1.evaluated());
        CHECK_FALSE(c2.evaluated());
        CHECK(tree_valid(g, c1.tree));
        CHECK(tree_valid(g, c2.tree));
        CHECK(parse_sentence(g, c1.sentence()).sentence() == c1.sentence());
        CHECK(parse_sentence(g, c2.sentence()).sentence() == c2.sentence());
    }
}

TEST_CASE("crossover leaves parents untouched and is seed-deterministic") {
    Grammar g = shipped();
    Individual a = random_individual(g, 11);
    Individual b = random_individual(g, 12);
    const auto sa = a.sentence();
    const auto sb = b.sentence();

    Rng r1(5);
    Rng r2(5);
    auto [x1, x2] = whigham_crossover(a, b, r1);
    auto [y1, y2] = whigham_crossover(a, b, r2);
    CHECK(a.sentence() == sa);
    CHECK(b.sentence() == sb);
    CHECK(x1.sentence() == y1.sentence());
    CHECK(x2.sentence() == y2.sentence());
}

TEST_CASE("self-crossover at the root swaps whole genomes") {
    // With identical single-node label sets the swap is symmetric: the pair of
    // offspring sentences equals the pair of parent sentences.
    Grammar g = shipped();
    Individual a = random_individual(g, 31);
    Individual b = random_individual(g, 32);
    for (int trial = 0; trial < 50; ++trial) {
        Rng rng(trial);
        auto [c1, c2] = whigham_crossover(a, b, rng);
        CHECK(tree_valid(g, c1.tree));
        CHECK(tree_valid(g, c2.tree));
    }
}

TEST_CASE("mutation produces valid offspring and resets fitness") {
    Grammar g = shipped();
    for (int trial = 0; trial < 200; ++trial) {
        Individual a = random_individual(g, trial);
        a.fitness = FitnessRecord{0.9, {}, EvalStatus::Ok, {}};
        Rng rng(7000 + trial);
        Individual m = mutate(a, g, rng, 20);
        CHECK_FALSE(m.evaluated());
        CHECK(tree_valid(g, m.tree));
        CHECK(parse_sentence(g, m.sentence()).sentence() == m.sentence());
        CHECK(m.tree.depth() <= 20);
    }
}

TEST_CASE("mutation can toggle optional stages both ways") {
    Grammar g = shipped();

    // Find a parent with a scaler and one without.
    Individual with_scaler;
    Individual without_scaler;
    bool found_with = false;
    bool found_without = false;
    for (int seed = 0; seed < 200 && !(found_with && found_without); ++seed) {
        Individual ind = random_individual(g, seed);
        if (has_any(ind.sentence(), kScalerHeads)) {
            if (!found_with) { with_scaler = std::move(ind); found_with = true; }
        } else if (!found_without) {
            without_scaler = std::move(ind);
            found_without = true;
        }
    }
    REQUIRE(found_with);
    REQUIRE(found_without);

    int removed = 0;
    int added = 0;
    for (int trial = 0; trial < 400; ++trial) {
        Rng r1(trial);
        if (!has_any(mutate(with_scaler, g, r1, 20).sentence(), kScalerHeads)) ++removed;
        Rng r2(trial);
        if (has_any(mutate(without_scaler, g, r2, 20).sentence(), kScalerHeads)) ++added;
    }
    CHECK(removed > 0);
    CHECK(added > 0);
}

TEST_CASE("repeated variation keeps genomes inside the language") {
    Grammar g = shipped();
    Rng rng(404);
    Individual current = random_individual(g, 1);
    Individual other = random_individual(g, 2);
    for (int op = 0; op < 10000; ++op) {
        if (rng.coin(0.5)) {
            current = mutate(current, g, rng, 20);
        } else {
            auto [c1, c2] = whigham_crossover(current, other, rng);
            other = std::move(c2);
            current = std::move(c1);
        }
        REQUIRE(tree_valid(g, current.tree));
        REQUIRE(current.tree.depth() <= 20);
        if (op % 100 == 0)
            REQUIRE(parse_sentence(g, current.sentence()).sentence() == current.sentence());
    }
}

TEST_CASE("binary tournament prefers the fitter individual 75% of the time") {
    Grammar g = shipped();
    std::vector<Individual> pop;
    pop.push_back(random_individual(g, 1));
    pop.push_back(random_individual(g, 2));
    pop[0].fitness = FitnessRecord{0.0, {}, EvalStatus::Ok, {}};
    pop[1].fitness = FitnessRecord{1.0, {}, EvalStatus::Ok, {}};

    Rng rng(123);
    int wins = 0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i)
        if (tournament_select_index(pop, 2, rng) == 1) ++wins;
    // Sampling with replacement: the better one loses only when drawn twice
    // against itself's absence, P(win) = 1 - 0.5^2 = 0.75.
    const double rate = static_cast<double>(wins) / draws;
    CHECK(rate == doctest::Approx(0.75).epsilon(0.027));
}

TEST_CASE("tournament ties go to the lower index") {
    Grammar g = shipped();
    std::vector<Individual> pop;
    for (int i = 0; i < 2; ++i) {
        pop.push_back(random_individual(g, i));
        pop.back().fitness = FitnessRecord{0.5, {}, EvalStatus::Ok, {}};
    }
    Rng rng(9);
    for (int i = 0; i < 1000; ++i) {
        // 30 draws over 2 entries: index 0 appears with overwhelming odds, and
        // equal scores must then resolve to it.
        CHECK(tournament_select_index(pop, 30, rng) == 0);
    }
}

TEST_CASE("tournament of size one is a uniform draw") {
    Grammar g = shipped();
    std::vector<Individual> pop;
    for (int i = 0; i < 4; ++i) {
        pop.push_back(random_individual(g, i));
        pop.back().fitness = FitnessRecord{static_cast<double>(i), {}, EvalStatus::Ok, {}};
    }
    Rng rng(9);
    std::vector<int> counts(4, 0);
    for (int i = 0; i < 8000; ++i) ++counts[tournament_select_index(pop, 1, rng)];
    for (int c : counts) CHECK(c == doctest::Approx(2000).epsilon(0.08));
}

TEST_CASE("unevaluated individuals score zero") {
    Grammar g = shipped();
    Individual ind = random_individual(g, 5);
    CHECK(ind.score() == 0.0);
    ind.fitness = FitnessRecord{0.25, {}, EvalStatus::Ok, {}};
    CHECK(ind.score() == 0.25);
}
