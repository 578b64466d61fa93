#include "automol/genome.hpp"

#include <algorithm>
#include <map>

namespace automol {

namespace {

// Pre-order over expansion nodes only (the optional wrapper's inner node is
// itself an expansion node, so expanded optionals are reachable through it).
void collect_expansions(DerivationNode& node,
                        std::map<std::string, std::vector<DerivationNode*>>& by_label) {
    if (node.symbol.kind == Symbol::Kind::Nonterminal) by_label[node.symbol.text].push_back(&node);
    for (auto& child : node.children) collect_expansions(child, by_label);
}

// Internal nodes for mutation, paired with the depth budget each received
// when grown: the root gets the full limit, every child of an expansion node
// one less, and an optional wrapper hands its budget through unchanged.
void collect_internal(DerivationNode& node, int budget,
                      std::vector<std::pair<DerivationNode*, int>>& out) {
    if (node.symbol.is_terminal()) return;
    out.emplace_back(&node, budget);
    const int child_budget = node.symbol.is_optional() ? budget : budget - 1;
    for (auto& child : node.children) collect_internal(child, child_budget, out);
}

}  // namespace

std::pair<Individual, Individual> whigham_crossover(const Individual& a, const Individual& b,
                                                    Rng& rng) {
    Individual child_a{a.tree, std::nullopt, 0};
    Individual child_b{b.tree, std::nullopt, 0};

    std::map<std::string, std::vector<DerivationNode*>> nodes_a, nodes_b;
    collect_expansions(child_a.tree.root, nodes_a);
    collect_expansions(child_b.tree.root, nodes_b);

    std::vector<std::string> shared;  // std::map keeps this ordering deterministic
    for (const auto& [label, _] : nodes_a)
        if (nodes_b.count(label)) shared.push_back(label);

    const auto& label = shared[rng.index(shared.size())];
    auto& picks_a = nodes_a[label];
    auto& picks_b = nodes_b[label];
    DerivationNode* at_a = picks_a[rng.index(picks_a.size())];
    DerivationNode* at_b = picks_b[rng.index(picks_b.size())];
    std::swap(*at_a, *at_b);
    return {std::move(child_a), std::move(child_b)};
}

Individual mutate(const Individual& a, const Grammar& g, Rng& rng, int depth_limit) {
    Individual child{a.tree, std::nullopt, 0};

    std::vector<std::pair<DerivationNode*, int>> internal;
    collect_internal(child.tree.root, depth_limit, internal);

    auto [node, budget] = internal[rng.index(internal.size())];
    *node = grow_symbol(g, node->symbol, rng, budget);
    return child;
}

std::size_t tournament_select_index(const std::vector<Individual>& population,
                                    std::size_t tournament_size, Rng& rng) {
    std::size_t best = rng.index(population.size());
    for (std::size_t t = 1; t < tournament_size; ++t) {
        const std::size_t i = rng.index(population.size());
        if (population[i].score() > population[best].score() ||
            (population[i].score() == population[best].score() && i < best))
            best = i;
    }
    return best;
}

const Individual& tournament_select(const std::vector<Individual>& population,
                                    std::size_t tournament_size, Rng& rng) {
    return population[tournament_select_index(population, tournament_size, rng)];
}

}  // namespace automol
