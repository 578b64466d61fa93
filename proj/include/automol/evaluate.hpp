#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "automol/fitness_record.hpp"
#include "automol/grammar.hpp"
#include "automol/pipeline.hpp"

namespace automol {

// Fitness provider for the search loop. Implementations must be thread-safe
// and must never throw from evaluate(): failures become statuses so a broken
// pipeline scores 0 instead of killing the run.
class FitnessFunction {
public:
    virtual ~FitnessFunction() = default;
    virtual FitnessRecord evaluate(const std::vector<std::string>& sentence,
                                   int foldset_id) = 0;
    virtual std::uint64_t eval_count() const = 0;
    virtual std::uint64_t cache_hit_count() const = 0;
};

struct Foldset {
    int id = 0;
    std::vector<std::vector<int>> test_folds;
};

// Real fitness: stratified K-fold CV MCC of the decoded pipeline on the
// training table. Featurization is cached per feature-group subset (it does
// not depend on labels or folds); fitness records are cached by
// (sentence, foldset), so resampling folds naturally forces re-evaluation.
class Evaluator : public FitnessFunction {
public:
    Evaluator(const Grammar& grammar, std::vector<std::string> smiles, Labels labels,
              int k_folds, std::uint64_t master_seed, double individual_budget_seconds);

    FitnessRecord evaluate(const std::vector<std::string>& sentence,
                           int foldset_id) override;
    std::uint64_t eval_count() const override { return evals_; }
    std::uint64_t cache_hit_count() const override { return cache_hits_; }

    // Whole-dataset features for one group subset (computed once, shared).
    std::shared_ptr<const FeatureMatrix> features_for(GroupSet groups);
    const Foldset& foldset(int id);

    const Labels& labels() const { return labels_; }
    int k_folds() const { return k_; }

private:
    FitnessRecord compute(const std::vector<std::string>& sentence, int foldset_id);

    const Grammar& grammar_;
    std::vector<std::string> smiles_;
    Labels labels_;
    int k_;
    std::uint64_t master_seed_;
    double budget_seconds_;

    std::unordered_map<unsigned, std::shared_ptr<const FeatureMatrix>> feature_cache_;
    std::unordered_map<int, Foldset> foldsets_;
    std::unordered_map<std::string, FitnessRecord> fitness_cache_;
    std::atomic<std::uint64_t> evals_{0};
    std::atomic<std::uint64_t> cache_hits_{0};
    std::mutex feature_mu_;
    std::mutex fold_mu_;
    std::mutex fitness_mu_;
};

// Deterministic pipeline-free fitness for search-semantics tests and demos:
// scores a sentence by hashing it, optionally salted per foldset.
class StubFitness : public FitnessFunction {
public:
    explicit StubFitness(std::uint64_t salt = 0, bool fold_sensitive = true)
        : salt_(salt), fold_sensitive_(fold_sensitive) {}

    FitnessRecord evaluate(const std::vector<std::string>& sentence,
                           int foldset_id) override;
    std::uint64_t eval_count() const override { return evals_; }
    std::uint64_t cache_hit_count() const override { return 0; }

private:
    std::uint64_t salt_;
    bool fold_sensitive_;
    std::atomic<std::uint64_t> evals_{0};
};

}  // namespace automol
