#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "automol/dataset.hpp"
#include "automol/evaluate.hpp"
#include "automol/featurize.hpp"
#include "automol/grammar.hpp"
#include "automol/search.hpp"

// Compares the OpenMP kernels (featurization over molecules, population
// evaluation) against their serial reference implementations: verifies that
// outputs match exactly, then reports timings.

namespace {

using namespace automol;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 2000;
    std::string grammar_path = argc > 2 ? argv[2] : "grammars/pipeline.bnf";

    std::printf("benchmark: %d molecules, %d thread(s)\n\n", n, threads());
    Dataset d = synth_dataset(SynthKind::NitroRule, n, 0.0, 7);
    std::vector<std::string> smiles = d.smiles_list();

    // --- featurization ---
    auto t0 = Clock::now();
    FeatureMatrix serial = featurize_serial(smiles, GroupSet::all());
    double t_serial = seconds_since(t0);

    t0 = Clock::now();
    FeatureMatrix parallel = featurize(smiles, GroupSet::all());
    double t_parallel = seconds_since(t0);

    bool feat_equal = serial == parallel;
    std::printf("featurize (all groups, %zu cols)\n", serial.n_cols());
    std::printf("  serial   %.3f s\n", t_serial);
    std::printf("  parallel %.3f s  (speedup %.2fx)\n", t_parallel,
                t_parallel > 0 ? t_serial / t_parallel : 0.0);
    std::printf("  outputs identical: %s\n\n", feat_equal ? "yes" : "NO");

    // --- population evaluation ---
    Grammar g = Grammar::parse_file(grammar_path);
    SearchConfig cfg;
    cfg.population_size = 24;
    cfg.generations = 2;
    cfg.individual_budget_seconds = 30.0;
    cfg.master_seed = 7;

    cfg.serial = true;
    Evaluator eval_serial(g, smiles, d.labels(), cfg.k_folds, cfg.master_seed,
                          cfg.individual_budget_seconds);
    t0 = Clock::now();
    SearchResult r_serial = run_search(g, eval_serial, cfg);
    double s_serial = seconds_since(t0);

    cfg.serial = false;
    Evaluator eval_parallel(g, smiles, d.labels(), cfg.k_folds, cfg.master_seed,
                            cfg.individual_budget_seconds);
    t0 = Clock::now();
    SearchResult r_parallel = run_search(g, eval_parallel, cfg);
    double s_parallel = seconds_since(t0);

    bool logs_equal = r_serial.log.size() == r_parallel.log.size();
    for (std::size_t i = 0; logs_equal && i < r_serial.log.size(); ++i) {
        const GenerationRow& a = r_serial.log[i];
        const GenerationRow& b = r_parallel.log[i];
        logs_equal = a.generation == b.generation && a.best_mcc == b.best_mcc &&
                     a.mean_mcc == b.mean_mcc && a.std_mcc == b.std_mcc &&
                     a.best_sentence == b.best_sentence && a.foldset_id == b.foldset_id &&
                     a.evals == b.evals && a.cache_hits == b.cache_hits;
    }
    std::printf("population evaluation (pop %d, %d generations, %d-fold CV)\n",
                cfg.population_size, cfg.generations, cfg.k_folds);
    std::printf("  serial   %.3f s\n", s_serial);
    std::printf("  parallel %.3f s  (speedup %.2fx)\n", s_parallel,
                s_parallel > 0 ? s_serial / s_parallel : 0.0);
    std::printf("  logs identical (elapsed_s aside): %s\n", logs_equal ? "yes" : "NO");

    return feat_equal && logs_equal ? 0 : 1;
}
