#pragma once

#include <cstdint>
#include <utility>

#include "automol/ml_types.hpp"

namespace automol {

// Train gets round(fraction × class size) of each class, remainder goes to
// the blind set; within-class assignment by seeded shuffle.
std::pair<std::vector<int>, std::vector<int>> stratified_split(const Labels& labels,
                                                               double train_fraction,
                                                               std::uint64_t seed);

// K validation folds partitioning all indices; per-class fold sizes differ by
// at most one.
std::vector<std::vector<int>> stratified_kfold(const Labels& labels, int k, std::uint64_t seed);

}  // namespace automol
