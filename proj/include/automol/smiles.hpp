#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace automol {

enum class BondOrder { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

struct Atom {
    std::string element;
    int charge = 0;
    bool aromatic = false;
    int hydrogens = 0;   // implicit for organic-subset atoms, explicit for brackets
    bool bracket = false;
    std::size_t offset = 0;  // character position in the source string
};

struct Bond {
    int i = 0;
    int j = 0;
    BondOrder order = BondOrder::Single;
    bool in_ring = false;  // lies on some cycle
};

struct MoleculeGraph {
    std::vector<Atom> atoms;
    std::vector<Bond> bonds;
    std::vector<std::vector<std::pair<int, int>>> adj;  // per atom: (neighbor, bond index)

    std::size_t size() const { return atoms.size(); }
    int degree(int i) const { return static_cast<int>(adj[static_cast<std::size_t>(i)].size()); }
    // 1/2/3 for plain bonds, 1 for aromatic (the sigma framework)
    int bond_order_sum(int i) const;
    bool atom_in_ring(int i) const;

    void rebuild_adjacency();
};

// Organic subset B C N O P S F Cl Br I (+ aromatic b c n o p s), bracket
// atoms with isotope/stereo parsed and dropped, -, =, #, / and \ (as single),
// branches, ring closures incl. %nn, and dot disconnection.
MoleculeGraph parse_smiles(const std::string& text);

// Bond-count distances via BFS from every atom; kUnreachable marks separate
// components.
inline constexpr int kUnreachable = -1;
std::vector<std::vector<int>> shortest_paths(const MoleculeGraph& m);

// Monoisotopic-free standard atomic weight; throws DataError for elements
// without a tabulated mass.
double element_mass(const std::string& element);

// Allowed valences (e.g. S -> {2,4,6}); empty if the element has no table
// entry, in which case no valence rule is enforced.
const std::vector<int>& allowed_valences(const std::string& element);

}  // namespace automol
