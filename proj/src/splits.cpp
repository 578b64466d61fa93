#include "automol/splits.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "automol/rng.hpp"

namespace automol {

namespace {

std::vector<std::vector<int>> per_class_indices(const Labels& labels) {
    std::vector<std::vector<int>> by_class(2);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1)
            throw DataError("non-binary label at index " + std::to_string(i));
        by_class[static_cast<std::size_t>(labels[i])].push_back(static_cast<int>(i));
    }
    if (by_class[0].empty() || by_class[1].empty())
        throw DataError("both classes must be present");
    return by_class;
}

void shuffle(std::vector<int>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.below(i)]);
}

}  // namespace

std::pair<std::vector<int>, std::vector<int>> stratified_split(const Labels& labels,
                                                               double train_fraction,
                                                               std::uint64_t seed) {
    if (train_fraction <= 0.0 || train_fraction >= 1.0)
        throw DataError("train_fraction must lie strictly between 0 and 1");
    auto by_class = per_class_indices(labels);
    Rng rng(seed);

    std::vector<int> train, blind;
    for (auto& members : by_class) {
        if (members.size() < 2)
            throw DataError("a class has fewer than 2 samples; cannot split");
        shuffle(members, rng);
        const auto take = static_cast<std::size_t>(
            std::llround(train_fraction * static_cast<double>(members.size())));
        for (std::size_t i = 0; i < members.size(); ++i)
            (i < take ? train : blind).push_back(members[i]);
    }
    std::sort(train.begin(), train.end());
    std::sort(blind.begin(), blind.end());
    return {std::move(train), std::move(blind)};
}

std::vector<std::vector<int>> stratified_kfold(const Labels& labels, int k, std::uint64_t seed) {
    if (k < 2) throw DataError("k must be at least 2");
    auto by_class = per_class_indices(labels);
    Rng rng(seed);

    std::vector<std::vector<int>> folds(static_cast<std::size_t>(k));
    for (auto& members : by_class) {
        if (members.size() < static_cast<std::size_t>(k))
            throw DataError("a class has fewer samples than folds");
        shuffle(members, rng);
        for (std::size_t i = 0; i < members.size(); ++i)
            folds[i % static_cast<std::size_t>(k)].push_back(members[i]);
    }
    for (auto& fold : folds) std::sort(fold.begin(), fold.end());
    return folds;
}

}  // namespace automol
