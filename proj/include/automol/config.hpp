#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "automol/search.hpp"

namespace automol {

// Flat `key = value` config; unknown keys are errors so a typo cannot
// silently fall back to a default. `#` starts a comment.
SearchConfig parse_search_config(const std::string& text);
SearchConfig load_search_config(const std::string& path);

// The config rendered back as key=value lines (the manifest snapshot).
std::string search_config_text(const SearchConfig& config);

// Everything needed to reproduce a run bit-for-bit, plus timestamps.
struct RunManifest {
    std::string config_text;
    std::string grammar_digest;
    std::string dataset_digest;
    std::uint64_t master_seed = 0;
    std::string version;
    std::string started_at;
    std::string finished_at;
};

void write_manifest(const std::string& path, const RunManifest& m);
RunManifest read_manifest(const std::string& path);

std::string iso8601_now();

}  // namespace automol
