#include "automol/evaluate.hpp"

#include <chrono>
#include <numeric>
#include <utility>

#include "automol/errors.hpp"
#include "automol/metrics.hpp"
#include "automol/rng.hpp"
#include "automol/splits.hpp"

namespace automol {

Evaluator::Evaluator(const Grammar& grammar, std::vector<std::string> smiles,
                     Labels labels, int k_folds, std::uint64_t master_seed,
                     double individual_budget_seconds)
    : grammar_(grammar),
      smiles_(std::move(smiles)),
      labels_(std::move(labels)),
      k_(k_folds),
      master_seed_(master_seed),
      budget_seconds_(individual_budget_seconds) {
    if (smiles_.size() != labels_.size()) {
        throw DataError("SMILES/label row counts differ");
    }
    if (k_ < 2) throw DataError("need at least 2 folds");
}

std::shared_ptr<const FeatureMatrix> Evaluator::features_for(GroupSet groups) {
    std::lock_guard<std::mutex> lock(feature_mu_);
    auto it = feature_cache_.find(groups.mask);
    if (it != feature_cache_.end()) return it->second;
    auto computed = std::make_shared<FeatureMatrix>(featurize(smiles_, groups));
    feature_cache_.emplace(groups.mask, computed);
    return computed;
}

const Foldset& Evaluator::foldset(int id) {
    std::lock_guard<std::mutex> lock(fold_mu_);
    auto it = foldsets_.find(id);
    if (it != foldsets_.end()) return it->second;
    Foldset fs;
    fs.id = id;
    fs.test_folds = stratified_kfold(
        labels_, k_, derive_seed(master_seed_, "folds", static_cast<std::uint64_t>(id)));
    return foldsets_.emplace(id, std::move(fs)).first->second;
}

FitnessRecord Evaluator::evaluate(const std::vector<std::string>& sentence,
                                  int foldset_id) {
    std::string key = std::to_string(foldset_id) + "|" + join_tokens(sentence);
    {
        std::lock_guard<std::mutex> lock(fitness_mu_);
        auto it = fitness_cache_.find(key);
        if (it != fitness_cache_.end()) {
            ++cache_hits_;
            return it->second;
        }
    }
    ++evals_;
    FitnessRecord record = compute(sentence, foldset_id);
    std::lock_guard<std::mutex> lock(fitness_mu_);
    fitness_cache_.emplace(std::move(key), record);
    return record;
}

FitnessRecord Evaluator::compute(const std::vector<std::string>& sentence,
                                 int foldset_id) {
    using Clock = std::chrono::steady_clock;
    FitnessRecord record;
    Deadline deadline = budget_seconds_ < 0.0 ? Deadline::unlimited()
                                              : Deadline::after(budget_seconds_);
    try {
        PipelineSpec spec = spec_from_sentence(grammar_, sentence);
        auto features = features_for(spec.groups);
        const Foldset& fs = foldset(foldset_id);
        // Fit seeds hang off (foldset, sentence), not off call order, so a
        // cache hit and a recomputation are indistinguishable.
        std::uint64_t fit_base = derive_seed(master_seed_, "fit",
                                             static_cast<std::uint64_t>(foldset_id),
                                             fnv1a64(join_tokens(sentence)));

        std::vector<bool> in_test(labels_.size());
        for (std::size_t f = 0; f < fs.test_folds.size(); ++f) {
            deadline.poll();
            auto fold_start = Clock::now();

            in_test.assign(labels_.size(), false);
            for (int i : fs.test_folds[f]) in_test[i] = true;
            Matrix train_x;
            Matrix test_x;
            Labels train_y;
            Labels test_y;
            for (std::size_t i = 0; i < labels_.size(); ++i) {
                (in_test[i] ? test_x : train_x).push_back(features->rows[i]);
                (in_test[i] ? test_y : train_y).push_back(labels_[i]);
            }

            Rng fit_rng(derive_seed(fit_base, "fold", f));
            FittedPipeline fitted = fit_pipeline(spec, train_x, features->column_names,
                                                 train_y, fit_rng, deadline);
            std::vector<int> predicted = fitted.predict(test_x);
            record.per_fold_mcc.push_back(mcc(confusion(test_y, predicted)));
            record.fold_seconds.push_back(
                std::chrono::duration<double>(Clock::now() - fold_start).count());
        }
        record.mean_mcc =
            std::accumulate(record.per_fold_mcc.begin(), record.per_fold_mcc.end(), 0.0) /
            static_cast<double>(record.per_fold_mcc.size());
        record.status = EvalStatus::Ok;
    } catch (const DeadlineExceeded&) {
        record.status = EvalStatus::Timeout;
        record.mean_mcc = 0.0;
    } catch (const EmptyMaskError&) {
        record.status = EvalStatus::EmptyFeatureSet;
        record.mean_mcc = 0.0;
    } catch (const std::exception&) {
        record.status = EvalStatus::TrainFailure;
        record.mean_mcc = 0.0;
    }
    return record;
}

FitnessRecord StubFitness::evaluate(const std::vector<std::string>& sentence,
                                    int foldset_id) {
    ++evals_;
    std::uint64_t h = fnv1a64(join_tokens(sentence));
    std::uint64_t salted = fold_sensitive_
                               ? derive_seed(salt_ ^ h, "stub",
                                             static_cast<std::uint64_t>(foldset_id))
                               : derive_seed(salt_ ^ h, "stub");
    FitnessRecord record;
    // Map the hash into [0, 1); plenty of resolution for rank comparisons.
    record.mean_mcc = static_cast<double>(salted >> 11) * 0x1.0p-53;
    record.per_fold_mcc.assign(1, record.mean_mcc);
    record.fold_seconds.assign(1, 0.0);
    return record;
}

}  // namespace automol
