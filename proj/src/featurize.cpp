#include "automol/featurize.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "automol/descriptors.hpp"
#include "automol/errors.hpp"
#include "automol/patterns.hpp"
#include "automol/rng.hpp"

namespace automol {

std::string group_token(FeatureGroup g) {
    switch (g) {
        case FeatureGroup::General: return "General_Descriptors";
        case FeatureGroup::Advanced: return "Advanced_Descriptors";
        case FeatureGroup::Signatures: return "Graph-based_Signatures";
        case FeatureGroup::Toxicophores: return "Toxicophores";
        case FeatureGroup::Fragments: return "Fragments";
    }
    return "?";
}

std::string group_prefix(FeatureGroup g) {
    switch (g) {
        case FeatureGroup::General: return "General";
        case FeatureGroup::Advanced: return "Advanced";
        case FeatureGroup::Signatures: return "Signatures";
        case FeatureGroup::Toxicophores: return "Toxicophores";
        case FeatureGroup::Fragments: return "Fragments";
    }
    return "?";
}

std::optional<FeatureGroup> group_from_token(const std::string& token) {
    for (int g = 0; g < kFeatureGroupCount; ++g)
        if (group_token(static_cast<FeatureGroup>(g)) == token)
            return static_cast<FeatureGroup>(g);
    return std::nullopt;
}

GroupSet GroupSet::all() {
    GroupSet s;
    for (int g = 0; g < kFeatureGroupCount; ++g) s.add(static_cast<FeatureGroup>(g));
    return s;
}

GroupSet GroupSet::of(std::initializer_list<FeatureGroup> groups) {
    GroupSet s;
    for (const FeatureGroup g : groups) s.add(g);
    return s;
}

std::vector<FeatureGroup> GroupSet::list() const {
    std::vector<FeatureGroup> out;
    for (int g = 0; g < kFeatureGroupCount; ++g)
        if (contains(static_cast<FeatureGroup>(g))) out.push_back(static_cast<FeatureGroup>(g));
    return out;
}

std::string GroupSet::spec_string() const {
    std::string out;
    for (const FeatureGroup g : list()) {
        if (!out.empty()) out += ' ';
        out += group_token(g);
    }
    return out;
}

std::vector<std::string> feature_column_names(GroupSet groups, int max_distance) {
    std::vector<std::string> names;
    for (const FeatureGroup g : groups.list()) {
        std::vector<std::string> base;
        switch (g) {
            case FeatureGroup::General: base = general_descriptor_names(); break;
            case FeatureGroup::Advanced: base = advanced_descriptor_names(); break;
            case FeatureGroup::Signatures: base = signature_names(max_distance); break;
            case FeatureGroup::Toxicophores: base = library_names(toxicophore_library()); break;
            case FeatureGroup::Fragments: base = library_names(fragment_library()); break;
        }
        for (const auto& n : base) names.push_back(group_prefix(g) + ":" + n);
    }
    return names;
}

std::vector<double> molecule_features(const MoleculeGraph& m, GroupSet groups,
                                      int max_distance) {
    std::vector<double> row;
    for (const FeatureGroup g : groups.list()) {
        std::vector<double> part;
        switch (g) {
            case FeatureGroup::General: part = general_descriptors(m); break;
            case FeatureGroup::Advanced: part = advanced_descriptors(m); break;
            case FeatureGroup::Signatures: part = graph_signatures(m, max_distance); break;
            case FeatureGroup::Toxicophores: part = library_counts(m, toxicophore_library()); break;
            case FeatureGroup::Fragments: part = library_counts(m, fragment_library()); break;
        }
        for (const double v : part) row.push_back(std::isfinite(v) ? v : 0.0);
    }
    return row;
}

namespace {

FeatureMatrix featurize_impl(const std::vector<std::string>& smiles, GroupSet groups,
                             int max_distance, bool parallel) {
    if (groups.empty()) throw DataError("no feature groups selected");
    FeatureMatrix fm;
    fm.column_names = feature_column_names(groups, max_distance);
    for (const FeatureGroup g : groups.list()) {
        std::size_t width = 0;
        switch (g) {
            case FeatureGroup::General: width = general_descriptor_names().size(); break;
            case FeatureGroup::Advanced: width = advanced_descriptor_names().size(); break;
            case FeatureGroup::Signatures: width = signature_names(max_distance).size(); break;
            case FeatureGroup::Toxicophores:
                width = toxicophore_library().patterns.size();
                break;
            case FeatureGroup::Fragments: width = fragment_library().patterns.size(); break;
        }
        fm.column_group.insert(fm.column_group.end(), width, g);
    }

    fm.rows.assign(smiles.size(), {});
    std::vector<std::string> failures(smiles.size());
    bool failed = false;

    const auto one = [&](std::size_t i) {
        try {
            fm.rows[i] = molecule_features(parse_smiles(smiles[i]), groups, max_distance);
        } catch (const std::exception& e) {
            failures[i] = e.what();
            failed = true;
        }
    };

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(smiles.size()); ++i)
            one(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < smiles.size(); ++i) one(i);
    }

    if (failed)
        for (std::size_t i = 0; i < failures.size(); ++i)
            if (!failures[i].empty())
                throw DataError("molecule " + std::to_string(i) + ": " + failures[i]);
    return fm;
}

}  // namespace

FeatureMatrix featurize(const std::vector<std::string>& smiles, GroupSet groups,
                        int max_distance) {
    return featurize_impl(smiles, groups, max_distance, true);
}

FeatureMatrix featurize_serial(const std::vector<std::string>& smiles, GroupSet groups,
                               int max_distance) {
    return featurize_impl(smiles, groups, max_distance, false);
}

void save_feature_csv(const std::string& path, const FeatureMatrix& fm) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    for (std::size_t c = 0; c < fm.column_names.size(); ++c)
        out << (c ? "," : "") << fm.column_names[c];
    out << '\n';
    char buf[64];
    for (const auto& row : fm.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", row[c]);
            out << (c ? "," : "") << buf;
        }
        out << '\n';
    }
}

FeatureMatrix load_feature_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read " + path);
    FeatureMatrix fm;
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty feature file " + path);
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) {
        fm.column_names.push_back(cell);
        const auto colon = cell.find(':');
        const std::string prefix = cell.substr(0, colon);
        for (int g = 0; g < kFeatureGroupCount; ++g)
            if (group_prefix(static_cast<FeatureGroup>(g)) == prefix)
                fm.column_group.push_back(static_cast<FeatureGroup>(g));
        if (fm.column_group.size() != fm.column_names.size())
            throw DataError("unknown column group in " + cell);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row_in(line);
        std::vector<double> row;
        while (std::getline(row_in, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != fm.column_names.size())
            throw DataError("ragged row in " + path);
        fm.rows.push_back(std::move(row));
    }
    return fm;
}

std::uint64_t feature_digest(const std::vector<std::string>& smiles, GroupSet groups,
                             int max_distance) {
    std::string blob = groups.spec_string() + "|D" + std::to_string(max_distance);
    for (const auto& s : smiles) {
        blob += '\n';
        blob += s;
    }
    return fnv1a64(blob);
}

FeatureMatrix featurize_cached(const std::vector<std::string>& smiles, GroupSet groups,
                               int max_distance, const std::string& cache_dir) {
    std::filesystem::create_directories(cache_dir);
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.csv",
                  static_cast<unsigned long long>(feature_digest(smiles, groups, max_distance)));
    const std::string path = (std::filesystem::path(cache_dir) / name).string();
    if (std::filesystem::exists(path)) return load_feature_csv(path);
    FeatureMatrix fm = featurize(smiles, groups, max_distance);
    save_feature_csv(path, fm);
    return fm;
}

}  // namespace automol
