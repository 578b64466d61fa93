#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "automol/ml_types.hpp"

namespace automol {

struct DataRecord {
    std::string id;
    std::string smiles;
    int label = 0;
};

struct QuarantineEntry {
    std::size_t row = 0;  // 1-based data-row number
    std::string id;
    std::string reason;
};

// Labeled molecules; rows whose SMILES fail to parse are quarantined with
// the parser's reason and never reach featurization.
struct Dataset {
    std::string name;
    std::vector<DataRecord> records;
    std::vector<QuarantineEntry> quarantined;

    std::vector<std::string> smiles_list() const;
    Labels labels() const;
    std::uint64_t digest() const;
};

Dataset ingest_csv(const std::string& path);
void write_dataset_csv(const std::string& path, const Dataset& d);

enum class SynthKind { NitroRule, MwThreshold, NoisyXorGroups };

std::string to_string(SynthKind kind);
SynthKind synth_kind_from_string(const std::string& name);

// Deterministic synthetic benchmark sets assembled from valence-safe
// fragment templates:
//   nitro-rule:       label 1 iff the molecule carries a nitro group
//   mw-threshold:     label 1 iff molecular weight exceeds the set's median
//   noisy-xor-groups: label = (has nitro) XOR (has chloro)
// then each label is flipped with probability noise_rate.
Dataset synth_dataset(SynthKind kind, int n, double noise_rate, std::uint64_t seed);

}  // namespace automol
