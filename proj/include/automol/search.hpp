#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "automol/evaluate.hpp"
#include "automol/genome.hpp"
#include "automol/grammar.hpp"

namespace automol {

struct SearchConfig {
    int population_size = 100;
    int generations = 50;
    double time_budget_seconds = 3600.0;      // checked between generations
    double crossover_rate = 0.90;
    double mutation_rate = 0.10;              // per offspring
    int elitism = 1;
    int resample_period = 5;                  // new folds every N generations
    double individual_budget_seconds = 300.0;
    int tournament_size = 2;
    int k_folds = 5;
    int depth_limit = 20;
    double train_fraction = 0.75;             // train vs blind holdout
    std::uint64_t master_seed = 42;
    bool serial = false;                      // force single-threaded evaluation
};

struct GenerationRow {
    int generation = 0;
    double best_mcc = 0.0;
    double mean_mcc = 0.0;
    double std_mcc = 0.0;
    std::string best_sentence;
    int foldset_id = 0;
    std::uint64_t evals = 0;
    std::uint64_t cache_hits = 0;
    double elapsed_s = 0.0;
};

struct SearchResult {
    std::vector<Individual> population;  // final generation
    std::size_t best_index = 0;          // best of final generation
    std::vector<GenerationRow> log;
    int final_foldset_id = 0;
    bool stopped_by_budget = false;

    const Individual& best() const { return population[best_index]; }
};

using GenerationObserver = std::function<void(const GenerationRow&)>;

// Generational GGP loop. All randomness comes from streams derived as
// (master_seed, purpose, generation, index), so results do not depend on
// evaluation order and the parallel and serial paths log identical rows
// (elapsed_s aside).
SearchResult run_search(const Grammar& g, FitnessFunction& fitness,
                        const SearchConfig& config,
                        const GenerationObserver& observer = {});

std::string generation_log_csv(const std::vector<GenerationRow>& rows);
void write_generation_log(const std::string& path, const std::vector<GenerationRow>& rows);

}  // namespace automol
