#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "automol/fitness_record.hpp"
#include "automol/grammar.hpp"
#include "automol/rng.hpp"

namespace automol {

struct Individual {
    DerivationTree tree;
    std::optional<FitnessRecord> fitness;
    int birth_generation = 0;

    bool evaluated() const { return fitness.has_value(); }
    double score() const { return fitness ? fitness->mean_mcc : 0.0; }
    std::vector<std::string> sentence() const { return tree.sentence(); }
};

// Whigham crossover: pick a nonterminal label occurring in both trees
// (uniform over shared labels, then uniform over that label's nodes in each
// parent) and swap the two subtrees. Offspring are valid by construction and
// carry no fitness.
std::pair<Individual, Individual> whigham_crossover(const Individual& a, const Individual& b,
                                                    Rng& rng);

// Subtree-regrow mutation: pick one internal node uniformly — expansion nodes
// and optional markers alike, so presence of a scaler/selector can toggle —
// and regrow it under the depth budget that node had at its position.
Individual mutate(const Individual& a, const Grammar& g, Rng& rng, int depth_limit = 20);

// Sample `tournament_size` indices uniformly with replacement; winner is the
// highest fitness, ties to the lower index.
std::size_t tournament_select_index(const std::vector<Individual>& population,
                                    std::size_t tournament_size, Rng& rng);

const Individual& tournament_select(const std::vector<Individual>& population,
                                    std::size_t tournament_size, Rng& rng);

}  // namespace automol
