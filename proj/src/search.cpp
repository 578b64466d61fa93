#include "automol/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>

#include "automol/errors.hpp"

namespace automol {
namespace {

// Evaluates every individual lacking a fitness record. Distinct sentences
// are evaluated once; the parallel-for only covers that deduplicated list,
// which keeps eval/cache-hit counters independent of thread interleaving.
void evaluate_population(std::vector<Individual>& population, FitnessFunction& fitness,
                         int foldset_id, bool serial) {
    std::vector<std::string> unique_keys;
    std::map<std::string, std::vector<std::size_t>> pending;  // sentence -> indices
    for (std::size_t i = 0; i < population.size(); ++i) {
        if (population[i].evaluated()) continue;
        std::string key = join_tokens(population[i].sentence());
        auto [it, inserted] = pending.try_emplace(std::move(key));
        if (inserted) unique_keys.push_back(it->first);
        it->second.push_back(i);
    }

    std::vector<FitnessRecord> records(unique_keys.size());
    if (serial) {
        for (std::size_t u = 0; u < unique_keys.size(); ++u) {
            records[u] = fitness.evaluate(split_tokens(unique_keys[u]), foldset_id);
        }
    } else {
        long count = static_cast<long>(unique_keys.size());
#pragma omp parallel for schedule(dynamic)
        for (long u = 0; u < count; ++u) {
            records[u] = fitness.evaluate(split_tokens(unique_keys[u]), foldset_id);
        }
    }

    for (std::size_t u = 0; u < unique_keys.size(); ++u) {
        for (std::size_t i : pending[unique_keys[u]]) {
            population[i].fitness = records[u];
        }
    }
}

// Indices sorted best-first: higher fitness wins, ties to the lower index.
std::vector<std::size_t> ranked_indices(const std::vector<Individual>& population) {
    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return population[a].score() > population[b].score();
    });
    return order;
}

GenerationRow make_row(int generation, const std::vector<Individual>& population,
                       int foldset_id, const FitnessFunction& fitness, double elapsed_s) {
    GenerationRow row;
    row.generation = generation;
    row.foldset_id = foldset_id;
    row.evals = fitness.eval_count();
    row.cache_hits = fitness.cache_hit_count();
    row.elapsed_s = elapsed_s;

    double sum = 0.0;
    for (const Individual& ind : population) sum += ind.score();
    double n = static_cast<double>(population.size());
    row.mean_mcc = sum / n;
    double var = 0.0;
    for (const Individual& ind : population) {
        double d = ind.score() - row.mean_mcc;
        var += d * d;
    }
    row.std_mcc = std::sqrt(var / n);

    std::size_t best = ranked_indices(population)[0];
    row.best_mcc = population[best].score();
    row.best_sentence = join_tokens(population[best].sentence());
    return row;
}

}  // namespace

SearchResult run_search(const Grammar& g, FitnessFunction& fitness,
                        const SearchConfig& config, const GenerationObserver& observer) {
    if (config.population_size < 2) throw DataError("population_size must be at least 2");
    if (config.generations < 0) throw DataError("generations must be non-negative");
    if (config.elitism < 0 || config.elitism >= config.population_size) {
        throw DataError("elitism must be in [0, population_size)");
    }
    if (config.resample_period < 1) throw DataError("resample_period must be positive");
    if (config.tournament_size < 1) throw DataError("tournament_size must be positive");

    using Clock = std::chrono::steady_clock;
    auto started = Clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(Clock::now() - started).count();
    };

    SearchResult result;
    int foldset_id = 0;

    std::vector<Individual> population(config.population_size);
    for (int i = 0; i < config.population_size; ++i) {
        Rng rng(derive_seed(config.master_seed, "init", static_cast<std::uint64_t>(i)));
        population[i].tree = random_derivation(g, rng, config.depth_limit);
        population[i].birth_generation = 0;
    }
    evaluate_population(population, fitness, foldset_id, config.serial);

    auto log_generation = [&](int generation) {
        result.log.push_back(
            make_row(generation, population, foldset_id, fitness, elapsed()));
        if (observer) observer(result.log.back());
    };
    log_generation(0);

    for (int gen = 1; gen <= config.generations; ++gen) {
        if (config.time_budget_seconds > 0.0 && elapsed() > config.time_budget_seconds) {
            result.stopped_by_budget = true;
            break;
        }

        std::vector<Individual> next;
        next.reserve(population.size());
        std::vector<std::size_t> order = ranked_indices(population);
        for (int e = 0; e < config.elitism; ++e) next.push_back(population[order[e]]);

        std::uint64_t pair_id = 0;
        while (next.size() < population.size()) {
            Rng rng(derive_seed(config.master_seed, "breed",
                                static_cast<std::uint64_t>(gen), pair_id++));
            const Individual& pa =
                population[tournament_select_index(population, config.tournament_size, rng)];
            const Individual& pb =
                population[tournament_select_index(population, config.tournament_size, rng)];

            Individual c1;
            Individual c2;
            if (rng.coin(config.crossover_rate)) {
                std::tie(c1, c2) = whigham_crossover(pa, pb, rng);
            } else {
                c1.tree = pa.tree;
                c2.tree = pb.tree;
            }
            c1.fitness.reset();
            c2.fitness.reset();
            if (rng.coin(config.mutation_rate)) c1 = mutate(c1, g, rng, config.depth_limit);
            if (rng.coin(config.mutation_rate)) c2 = mutate(c2, g, rng, config.depth_limit);
            c1.birth_generation = gen;
            c2.birth_generation = gen;

            next.push_back(std::move(c1));
            if (next.size() < population.size()) next.push_back(std::move(c2));
        }
        population = std::move(next);

        if (gen % config.resample_period == 0) {
            // Fresh folds: every record is stale, elites included.
            ++foldset_id;
            for (Individual& individual : population) individual.fitness.reset();
        }
        evaluate_population(population, fitness, foldset_id, config.serial);
        log_generation(gen);
    }

    result.population = std::move(population);
    result.best_index = ranked_indices(result.population)[0];
    result.final_foldset_id = foldset_id;
    return result;
}

std::string generation_log_csv(const std::vector<GenerationRow>& rows) {
    std::string out =
        "generation,best_mcc,mean_mcc,std_mcc,best_sentence,foldset_id,evals,"
        "cache_hits,elapsed_s\n";
    char buf[160];
    for (const GenerationRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%.6f,", r.generation, r.best_mcc,
                      r.mean_mcc, r.std_mcc);
        out += buf;
        out += r.best_sentence;
        std::snprintf(buf, sizeof buf, ",%d,%llu,%llu,%.3f\n", r.foldset_id,
                      static_cast<unsigned long long>(r.evals),
                      static_cast<unsigned long long>(r.cache_hits), r.elapsed_s);
        out += buf;
    }
    return out;
}

void write_generation_log(const std::string& path, const std::vector<GenerationRow>& rows) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write generation log: " + path);
    out << generation_log_csv(rows);
}

}  // namespace automol
