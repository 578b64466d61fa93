#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "automol/smiles.hpp"

namespace automol {

enum class FeatureGroup { General = 0, Advanced, Signatures, Toxicophores, Fragments };
inline constexpr int kFeatureGroupCount = 5;

// The grammar terminal for the group ("General_Descriptors", ...).
std::string group_token(FeatureGroup g);
// Short prefix used in column names ("General:MW", ...).
std::string group_prefix(FeatureGroup g);
std::optional<FeatureGroup> group_from_token(const std::string& token);

// Subset of the five groups, iterated in canonical order.
struct GroupSet {
    unsigned mask = 0;

    static GroupSet all();
    static GroupSet of(std::initializer_list<FeatureGroup> groups);
    void add(FeatureGroup g) { mask |= 1u << static_cast<unsigned>(g); }
    bool contains(FeatureGroup g) const { return mask & (1u << static_cast<unsigned>(g)); }
    bool empty() const { return mask == 0; }
    std::vector<FeatureGroup> list() const;
    std::string spec_string() const;  // group tokens joined by spaces
    bool operator==(const GroupSet&) const = default;
};

struct FeatureMatrix {
    std::vector<std::string> column_names;
    std::vector<FeatureGroup> column_group;
    std::vector<std::vector<double>> rows;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_cols() const { return column_names.size(); }
    bool operator==(const FeatureMatrix&) const = default;
};

std::vector<std::string> feature_column_names(GroupSet groups, int max_distance = 6);

// Per-molecule feature vector in canonical group order; non-finite
// intermediates become 0.
std::vector<double> molecule_features(const MoleculeGraph& m, GroupSet groups,
                                      int max_distance = 6);

// OpenMP over molecules; featurize_serial is the reference implementation the
// tests and the benchmark compare against. Parse failures are reported with
// the offending row index (lowest row wins when several fail).
FeatureMatrix featurize(const std::vector<std::string>& smiles, GroupSet groups,
                        int max_distance = 6);
FeatureMatrix featurize_serial(const std::vector<std::string>& smiles, GroupSet groups,
                               int max_distance = 6);

void save_feature_csv(const std::string& path, const FeatureMatrix& fm);
FeatureMatrix load_feature_csv(const std::string& path);

// Content digest of (SMILES list, group subset, D); names the cache file.
std::uint64_t feature_digest(const std::vector<std::string>& smiles, GroupSet groups,
                             int max_distance);
// Loads from `cache_dir/<digest>.csv` when present, else computes and saves.
FeatureMatrix featurize_cached(const std::vector<std::string>& smiles, GroupSet groups,
                               int max_distance, const std::string& cache_dir);

}  // namespace automol
