#include "automol/patterns.hpp"

#include <algorithm>

#include "automol/errors.hpp"

namespace automol {

namespace {

bool atom_matches(const Atom& a, const PatternAtom& p) {
    if (!p.elements.empty() &&
        std::find(p.elements.begin(), p.elements.end(), a.element) == p.elements.end())
        return false;
    if (p.aromatic == PatternAtom::Arom::Yes && !a.aromatic) return false;
    if (p.aromatic == PatternAtom::Arom::No && a.aromatic) return false;
    if (p.charge && *p.charge != a.charge) return false;
    return a.hydrogens >= p.min_hydrogens;
}

bool bond_matches(BondOrder order, BondConstraint c) {
    switch (c) {
        case BondConstraint::Single: return order == BondOrder::Single;
        case BondConstraint::Double: return order == BondOrder::Double;
        case BondConstraint::Triple: return order == BondOrder::Triple;
        case BondConstraint::Aromatic: return order == BondOrder::Aromatic;
        case BondConstraint::SingleOrDouble:
            return order == BondOrder::Single || order == BondOrder::Double;
        case BondConstraint::Any: return true;
    }
    return false;
}

struct Matcher {
    const MoleculeGraph& m;
    const Pattern& p;
    std::vector<std::vector<std::pair<int, BondConstraint>>> p_adj;  // pattern adjacency
    std::vector<int> order;        // pattern atoms, connected-first visit order
    std::vector<int> assignment;   // pattern atom -> molecule atom, -1 unset
    std::vector<bool> used;        // molecule atoms already taken
    std::set<std::set<int>> found;

    Matcher(const MoleculeGraph& mol, const Pattern& pat) : m(mol), p(pat) {
        p_adj.resize(p.atoms.size());
        for (const auto& b : p.bonds) {
            p_adj[static_cast<std::size_t>(b.i)].emplace_back(b.j, b.kind);
            p_adj[static_cast<std::size_t>(b.j)].emplace_back(b.i, b.kind);
        }
        // Visit pattern atoms so each one (after the first of its component)
        // touches an already-placed atom; keeps the search anchored.
        std::vector<bool> seen(p.atoms.size(), false);
        for (std::size_t s = 0; s < p.atoms.size(); ++s) {
            if (seen[s]) continue;
            std::vector<int> stack = {static_cast<int>(s)};
            seen[s] = true;
            while (!stack.empty()) {
                const int u = stack.back();
                stack.pop_back();
                order.push_back(u);
                for (const auto& [v, k] : p_adj[static_cast<std::size_t>(u)]) {
                    (void)k;
                    if (!seen[static_cast<std::size_t>(v)]) {
                        seen[static_cast<std::size_t>(v)] = true;
                        stack.push_back(v);
                    }
                }
            }
        }
        assignment.assign(p.atoms.size(), -1);
        used.assign(m.size(), false);
    }

    bool edges_ok(int pat_atom, int mol_atom) {
        for (const auto& [q, kind] : p_adj[static_cast<std::size_t>(pat_atom)]) {
            const int mapped = assignment[static_cast<std::size_t>(q)];
            if (mapped < 0) continue;
            bool ok = false;
            for (const auto& [nbr, bi] : m.adj[static_cast<std::size_t>(mol_atom)])
                if (nbr == mapped &&
                    bond_matches(m.bonds[static_cast<std::size_t>(bi)].order, kind)) {
                    ok = true;
                    break;
                }
            if (!ok) return false;
        }
        return true;
    }

    void search(std::size_t step) {
        if (step == order.size()) {
            std::set<int> atoms;
            for (const int a : assignment) atoms.insert(a);
            found.insert(std::move(atoms));
            return;
        }
        const int pat_atom = order[step];
        for (std::size_t cand = 0; cand < m.size(); ++cand) {
            if (used[cand]) continue;
            if (!atom_matches(m.atoms[cand], p.atoms[static_cast<std::size_t>(pat_atom)]))
                continue;
            if (!edges_ok(pat_atom, static_cast<int>(cand))) continue;
            assignment[static_cast<std::size_t>(pat_atom)] = static_cast<int>(cand);
            used[cand] = true;
            search(step + 1);
            used[cand] = false;
            assignment[static_cast<std::size_t>(pat_atom)] = -1;
        }
    }
};

}  // namespace

std::vector<std::set<int>> match_atom_sets(const MoleculeGraph& m, const Pattern& p) {
    if (p.atoms.size() > kMaxPatternAtoms)
        throw DataError("pattern '" + p.name + "' exceeds " + std::to_string(kMaxPatternAtoms) +
                        " atoms");
    Matcher matcher(m, p);
    matcher.search(0);
    return {matcher.found.begin(), matcher.found.end()};
}

int match_pattern(const MoleculeGraph& m, const Pattern& p) {
    return static_cast<int>(match_atom_sets(m, p).size());
}

std::vector<double> library_counts(const MoleculeGraph& m, const PatternLibrary& lib) {
    std::vector<std::vector<std::set<int>>> sets;
    sets.reserve(lib.patterns.size());
    for (const auto& pat : lib.patterns) sets.push_back(match_atom_sets(m, pat));

    for (const auto& [small, large] : lib.suppressions) {
        auto& victims = sets[static_cast<std::size_t>(small)];
        const auto& winners = sets[static_cast<std::size_t>(large)];
        victims.erase(std::remove_if(victims.begin(), victims.end(),
                                     [&](const std::set<int>& v) {
                                         return std::any_of(
                                             winners.begin(), winners.end(),
                                             [&](const std::set<int>& w) {
                                                 return std::includes(w.begin(), w.end(),
                                                                      v.begin(), v.end());
                                             });
                                     }),
                      victims.end());
    }

    std::vector<double> counts;
    counts.reserve(sets.size());
    for (const auto& s : sets) counts.push_back(static_cast<double>(s.size()));
    return counts;
}

std::vector<std::string> library_names(const PatternLibrary& lib) {
    std::vector<std::string> names;
    names.reserve(lib.patterns.size());
    for (const auto& pat : lib.patterns) names.push_back(pat.name);
    return names;
}

namespace {

using Arom = PatternAtom::Arom;

PatternAtom el(std::string e, Arom aromatic = Arom::Any, int min_h = 0) {
    PatternAtom a;
    a.elements = {std::move(e)};
    a.aromatic = aromatic;
    a.min_hydrogens = min_h;
    return a;
}

PatternAtom el0(std::string e, Arom aromatic = Arom::Any, int min_h = 0) {
    PatternAtom a = el(std::move(e), aromatic, min_h);
    a.charge = 0;
    return a;
}

PatternAtom any_aromatic() {
    PatternAtom a;
    a.aromatic = Arom::Yes;
    return a;
}

PatternAtom halogen() {
    PatternAtom a;
    a.elements = {"F", "Cl", "Br", "I"};
    return a;
}

constexpr auto S = BondConstraint::Single;
constexpr auto D = BondConstraint::Double;
constexpr auto T = BondConstraint::Triple;
constexpr auto SD = BondConstraint::SingleOrDouble;

}  // namespace

const PatternLibrary& toxicophore_library() {
    static const PatternLibrary lib = [] {
        PatternLibrary l;
        // N(=O)~O written either charge-separated or as a pentavalent N
        l.patterns.push_back({"nitro",
                              {el("N", Arom::No), el("O", Arom::No), el("O", Arom::No)},
                              {{0, 1, D}, {0, 2, SD}}});
        l.patterns.push_back({"aromatic_nitro",
                              {el("N", Arom::No), el("O", Arom::No), el("O", Arom::No),
                               any_aromatic()},
                              {{0, 1, D}, {0, 2, SD}, {0, 3, S}}});
        l.patterns.push_back(
            {"aromatic_amine", {el0("N", Arom::No), any_aromatic()}, {{0, 1, S}}});
        l.patterns.push_back(
            {"aldehyde", {el("C", Arom::No, 1), el("O", Arom::No)}, {{0, 1, D}}});
        l.patterns.push_back({"epoxide",
                              {el("C", Arom::No), el("C", Arom::No), el("O", Arom::No)},
                              {{0, 1, S}, {1, 2, S}, {2, 0, S}}});
        l.patterns.push_back({"quinone",
                              {el("C", Arom::No), el("C", Arom::No), el("C", Arom::No),
                               el("C", Arom::No), el("C", Arom::No), el("C", Arom::No),
                               el("O", Arom::No), el("O", Arom::No)},
                              {{0, 1, S},
                               {1, 2, D},
                               {2, 3, S},
                               {3, 4, S},
                               {4, 5, D},
                               {5, 0, S},
                               {0, 6, D},
                               {3, 7, D}}});
        l.patterns.push_back({"acyl_halide",
                              {el("C", Arom::No), el("O", Arom::No), halogen()},
                              {{0, 1, D}, {0, 2, S}}});
        l.patterns.push_back({"azo", {el0("N", Arom::No), el0("N", Arom::No)}, {{0, 1, D}}});
        l.patterns.push_back(
            {"hydrazine", {el0("N", Arom::No), el0("N", Arom::No)}, {{0, 1, S}}});
        l.patterns.push_back({"thiol", {el0("S", Arom::No, 1)}, {}});
        l.patterns.push_back({"michael_acceptor",
                              {el("C", Arom::No), el("C", Arom::No), el("C", Arom::No),
                               el("O", Arom::No)},
                              {{0, 1, D}, {1, 2, S}, {2, 3, D}}});
        l.patterns.push_back(
            {"alkyl_halide", {el("C", Arom::No), halogen()}, {{0, 1, S}}});

        const auto index = [&](const std::string& name) {
            for (std::size_t i = 0; i < l.patterns.size(); ++i)
                if (l.patterns[i].name == name) return static_cast<int>(i);
            throw DataError("pattern not found: " + name);
        };
        l.suppressions = {{index("nitro"), index("aromatic_nitro")},
                          {index("alkyl_halide"), index("acyl_halide")},
                          {index("michael_acceptor"), index("quinone")}};
        return l;
    }();
    return lib;
}

const PatternLibrary& fragment_library() {
    static const PatternLibrary lib = [] {
        PatternLibrary l;
        l.patterns.push_back({"hydroxyl", {el0("O", Arom::No, 1), el("C")}, {{0, 1, S}}});
        l.patterns.push_back({"carboxylic_acid",
                              {el("C", Arom::No), el("O", Arom::No), el0("O", Arom::No, 1)},
                              {{0, 1, D}, {0, 2, S}}});
        l.patterns.push_back({"ester",
                              {el("C", Arom::No), el("O", Arom::No), el0("O", Arom::No), el("C")},
                              {{0, 1, D}, {0, 2, S}, {2, 3, S}}});
        l.patterns.push_back(
            {"ether", {el("C"), el0("O", Arom::No), el("C")}, {{0, 1, S}, {1, 2, S}}});
        l.patterns.push_back({"amide",
                              {el("C", Arom::No), el("O", Arom::No), el0("N", Arom::No)},
                              {{0, 1, D}, {0, 2, S}}});
        l.patterns.push_back({"amine_primary", {el0("N", Arom::No, 2), el("C")}, {{0, 1, S}}});
        l.patterns.push_back({"amine_secondary",
                              {el0("N", Arom::No, 1), el("C"), el("C")},
                              {{0, 1, S}, {0, 2, S}}});
        l.patterns.push_back({"amine_tertiary",
                              {el0("N", Arom::No), el("C"), el("C"), el("C")},
                              {{0, 1, S}, {0, 2, S}, {0, 3, S}}});
        l.patterns.push_back({"ketone",
                              {el("C", Arom::No), el("O", Arom::No), el("C"), el("C")},
                              {{0, 1, D}, {0, 2, S}, {0, 3, S}}});
        l.patterns.push_back(
            {"aldehyde", {el("C", Arom::No, 1), el("O", Arom::No)}, {{0, 1, D}}});
        l.patterns.push_back(
            {"nitrile", {el("C", Arom::No), el("N", Arom::No)}, {{0, 1, T}}});
        l.patterns.push_back({"sulfonamide",
                              {el("S", Arom::No), el("O", Arom::No), el("O", Arom::No),
                               el0("N", Arom::No)},
                              {{0, 1, D}, {0, 2, D}, {0, 3, S}}});
        l.patterns.push_back({"fluorine", {el("F")}, {}});
        l.patterns.push_back({"chlorine", {el("Cl")}, {}});
        l.patterns.push_back({"bromine", {el("Br")}, {}});
        l.patterns.push_back({"iodine", {el("I")}, {}});

        const auto index = [&](const std::string& name) {
            for (std::size_t i = 0; i < l.patterns.size(); ++i)
                if (l.patterns[i].name == name) return static_cast<int>(i);
            throw DataError("pattern not found: " + name);
        };
        l.suppressions = {{index("hydroxyl"), index("carboxylic_acid")},
                          {index("ether"), index("ester")}};
        return l;
    }();
    return lib;
}

}  // namespace automol
