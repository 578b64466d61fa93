#include "automol/dataset.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "automol/errors.hpp"
#include "automol/rng.hpp"
#include "automol/smiles.hpp"

namespace automol {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

}  // namespace

std::vector<std::string> Dataset::smiles_list() const {
    std::vector<std::string> out;
    out.reserve(records.size());
    for (const DataRecord& r : records) out.push_back(r.smiles);
    return out;
}

Labels Dataset::labels() const {
    Labels out;
    out.reserve(records.size());
    for (const DataRecord& r : records) out.push_back(r.label);
    return out;
}

std::uint64_t Dataset::digest() const {
    std::string blob;
    for (const DataRecord& r : records) {
        blob += r.id;
        blob += ',';
        blob += r.smiles;
        blob += ',';
        blob += std::to_string(r.label);
        blob += '\n';
    }
    return fnv1a64(blob);
}

Dataset ingest_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset: " + path);

    Dataset out;
    out.name = path;
    std::string line;
    int id_col = -1;
    int smiles_col = -1;
    int label_col = -1;
    std::size_t n_header_fields = 0;
    bool have_header = false;
    std::size_t data_row = 0;
    std::set<std::string> seen_ids;

    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (!have_header) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                std::string name = trim(fields[i]);
                if (name == "id") id_col = static_cast<int>(i);
                if (name == "smiles") smiles_col = static_cast<int>(i);
                if (name == "label") label_col = static_cast<int>(i);
            }
            if (smiles_col < 0) throw DataError("missing column: smiles");
            if (label_col < 0) throw DataError("missing column: label");
            n_header_fields = fields.size();
            have_header = true;
            continue;
        }
        ++data_row;
        if (fields.size() != n_header_fields) {
            throw DataError("row " + std::to_string(data_row) + ": expected " +
                            std::to_string(n_header_fields) + " fields, got " +
                            std::to_string(fields.size()));
        }
        DataRecord rec;
        rec.id = id_col >= 0 ? trim(fields[id_col]) : std::to_string(data_row);
        if (rec.id.empty()) rec.id = std::to_string(data_row);
        rec.smiles = trim(fields[smiles_col]);
        std::string label = trim(fields[label_col]);
        if (label == "0") {
            rec.label = 0;
        } else if (label == "1") {
            rec.label = 1;
        } else {
            throw DataError("row " + std::to_string(data_row) + ": non-binary label '" +
                            label + "'");
        }
        if (!seen_ids.insert(rec.id).second) {
            throw DataError("row " + std::to_string(data_row) + ": duplicate id '" +
                            rec.id + "'");
        }
        try {
            parse_smiles(rec.smiles);
        } catch (const std::exception& e) {
            out.quarantined.push_back({data_row, rec.id, e.what()});
            continue;
        }
        out.records.push_back(std::move(rec));
    }
    if (!have_header) throw DataError("empty file: " + path);
    if (data_row == 0) throw DataError("no data rows: " + path);
    return out;
}

void write_dataset_csv(const std::string& path, const Dataset& d) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write dataset: " + path);
    out << "id,smiles,label\n";
    for (const DataRecord& r : d.records) {
        out << r.id << ',' << r.smiles << ',' << r.label << '\n';
    }
}

std::string to_string(SynthKind kind) {
    switch (kind) {
        case SynthKind::NitroRule: return "nitro-rule";
        case SynthKind::MwThreshold: return "mw-threshold";
        case SynthKind::NoisyXorGroups: return "noisy-xor-groups";
    }
    throw DataError("unknown synth kind");
}

SynthKind synth_kind_from_string(const std::string& name) {
    if (name == "nitro-rule") return SynthKind::NitroRule;
    if (name == "mw-threshold") return SynthKind::MwThreshold;
    if (name == "noisy-xor-groups") return SynthKind::NoisyXorGroups;
    throw DataError("unknown synth kind: " + name +
                    " (expected nitro-rule, mw-threshold, or noisy-xor-groups)");
}

namespace {

// Fragment pools. A molecule is `prefix + C( cap_a ) cap_b`: the junction
// carbon takes three single bonds, so any combination stays valence-safe.
// The base caps deliberately contain no nitro group and no halogen; the rule
// bits are injected only through kNitro / kChloro.
const std::vector<std::string> kPrefixes = {"CC",     "CCC",       "CCCC", "CCO",
                                            "CCN",    "CC(C)",     "CCCCC",
                                            "c1ccccc1C"};
const std::vector<std::string> kBaseCaps = {"C",  "CC",        "O",   "N",  "OC",
                                            "CO", "C(=O)O",    "C#N", "CCO",
                                            "CN", "c1ccccc1"};
const std::string kNitroCap = "[N+](=O)[O-]";
const std::string kChloroCap = "Cl";

std::string assemble(const std::string& prefix, const std::string& chain,
                     const std::string& cap_a, const std::string& cap_b) {
    return prefix + chain + "C(" + cap_a + ")" + cap_b;
}

std::string draw(const std::vector<std::string>& pool, Rng& rng) {
    return pool[rng.index(pool.size())];
}

double molecular_weight(const MoleculeGraph& m) {
    double mw = 0.0;
    for (const Atom& a : m.atoms) {
        mw += element_mass(a.element) + a.hydrogens * element_mass("H");
    }
    return mw;
}

std::string build_molecule(Rng& rng, bool with_nitro, bool with_chloro,
                           int extra_chain) {
    std::string cap_a;
    std::string cap_b;
    if (with_nitro && with_chloro) {
        cap_a = kNitroCap;
        cap_b = kChloroCap;
        if (rng.coin(0.5)) std::swap(cap_a, cap_b);
    } else if (with_nitro || with_chloro) {
        cap_a = with_nitro ? kNitroCap : kChloroCap;
        cap_b = draw(kBaseCaps, rng);
        if (rng.coin(0.5)) std::swap(cap_a, cap_b);
    } else {
        cap_a = draw(kBaseCaps, rng);
        cap_b = draw(kBaseCaps, rng);
    }
    return assemble(draw(kPrefixes, rng), std::string(extra_chain, 'C'), cap_a, cap_b);
}

}  // namespace

Dataset synth_dataset(SynthKind kind, int n, double noise_rate, std::uint64_t seed) {
    if (n < 20) throw DataError("synthetic datasets need n >= 20");
    if (noise_rate < 0.0 || noise_rate > 1.0) {
        throw DataError("noise_rate must be in [0, 1]");
    }

    Rng rng(derive_seed(seed, "synth", static_cast<std::uint64_t>(kind)));
    std::vector<DataRecord> records(n);

    if (kind == SynthKind::MwThreshold) {
        std::vector<double> mws(n);
        for (int i = 0; i < n; ++i) {
            records[i].smiles =
                build_molecule(rng, false, false, static_cast<int>(rng.below(9)));
            mws[i] = molecular_weight(parse_smiles(records[i].smiles));
        }
        // Median-ish threshold between two distinct weights keeps both
        // classes populated for any draw.
        std::vector<double> sorted = mws;
        std::sort(sorted.begin(), sorted.end());
        int best_gap = -1;
        double threshold = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            if (sorted[i] == sorted[i + 1]) continue;
            int dist = std::abs(i + 1 - n / 2);
            if (best_gap < 0 || dist < best_gap) {
                best_gap = dist;
                threshold = sorted[i] + (sorted[i + 1] - sorted[i]) / 2.0;
            }
        }
        if (best_gap < 0) throw DataError("degenerate draw: all weights equal");
        for (int i = 0; i < n; ++i) records[i].label = mws[i] > threshold ? 1 : 0;
    } else {
        for (int i = 0; i < n; ++i) {
            bool nitro = false;
            bool chloro = false;
            if (kind == SynthKind::NitroRule) {
                records[i].label = i % 2;
                nitro = records[i].label == 1;
            } else {  // NoisyXorGroups
                nitro = i % 4 == 1 || i % 4 == 3;
                chloro = i % 4 == 2 || i % 4 == 3;
                records[i].label = (nitro != chloro) ? 1 : 0;
            }
            records[i].smiles = build_molecule(rng, nitro, chloro, 0);
        }
    }

    // Shuffle so the label sequence carries no positional signal.
    for (int i = n - 1; i > 0; --i) {
        std::size_t j = rng.index(static_cast<std::size_t>(i) + 1);
        std::swap(records[i], records[j]);
    }
    for (int i = 0; i < n; ++i) {
        if (noise_rate > 0.0 && rng.coin(noise_rate)) {
            records[i].label = 1 - records[i].label;
        }
        std::string id = std::to_string(i);
        records[i].id = "m" + std::string(id.size() >= 5 ? 0 : 5 - id.size(), '0') + id;
    }

    Dataset out;
    out.name = to_string(kind);
    out.records = std::move(records);
    for (const DataRecord& r : out.records) parse_smiles(r.smiles);  // template guard
    return out;
}

}  // namespace automol
