#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "automol/smiles.hpp"

namespace automol {

// A small attributed graph matched into molecules by backtracking
// monomorphism (extra molecule bonds between matched atoms are allowed).
struct PatternAtom {
    std::vector<std::string> elements;  // empty = any element
    enum class Arom { Any, Yes, No } aromatic = Arom::Any;
    std::optional<int> charge;
    int min_hydrogens = 0;
};

enum class BondConstraint { Single, Double, Triple, Aromatic, SingleOrDouble, Any };

struct PatternBond {
    int i = 0;
    int j = 0;
    BondConstraint kind = BondConstraint::Single;
};

struct Pattern {
    std::string name;
    std::vector<PatternAtom> atoms;
    std::vector<PatternBond> bonds;
};

inline constexpr std::size_t kMaxPatternAtoms = 8;

// Distinct matched atom sets; two embeddings related by a pattern
// automorphism land on the same set and count once.
std::vector<std::set<int>> match_atom_sets(const MoleculeGraph& m, const Pattern& p);
int match_pattern(const MoleculeGraph& m, const Pattern& p);

// `suppressions` lists (suppressed index, larger index): an embedding of the
// smaller pattern whose atoms are contained in some embedding of the larger
// one is not counted. Only used where the smaller pattern is a strict
// subgraph of the larger, so the containment is never coincidental.
struct PatternLibrary {
    std::vector<Pattern> patterns;
    std::vector<std::pair<int, int>> suppressions;
};

const PatternLibrary& toxicophore_library();
const PatternLibrary& fragment_library();

std::vector<double> library_counts(const MoleculeGraph& m, const PatternLibrary& lib);
std::vector<std::string> library_names(const PatternLibrary& lib);

}  // namespace automol
