#pragma once

#include <string>
#include <vector>

#include "automol/smiles.hpp"

namespace automol {

// Molecular weight, heavy atoms, ten element counts, aromatic atoms,
// cyclomatic ring count, H-bond donors/acceptors, rotatable bonds, net charge.
std::vector<std::string> general_descriptor_names();
std::vector<double> general_descriptors(const MoleculeGraph& m);

// Wiener, Randić, both Zagreb indices, radius, diameter; disconnected inputs
// are handled per component and summed.
std::vector<std::string> advanced_descriptor_names();
std::vector<double> advanced_descriptors(const MoleculeGraph& m);

// Pharmacophore-class pair counts, cumulative over distance cutoffs 1..D.
inline constexpr int kSignatureDistance = 6;
std::vector<std::string> signature_names(int max_distance = kSignatureDistance);
std::vector<double> graph_signatures(const MoleculeGraph& m,
                                     int max_distance = kSignatureDistance);

// Class membership per atom, in the fixed class order used by the signature
// columns; exposed for the brute-force tests.
inline constexpr int kSignatureClasses = 6;
extern const char* const kSignatureClassNames[kSignatureClasses];
std::vector<std::vector<bool>> signature_classes(const MoleculeGraph& m);

}  // namespace automol
