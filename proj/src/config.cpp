#include "automol/config.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "automol/errors.hpp"

namespace automol {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

int to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not an integer: " + value);
    }
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a number: " + value);
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a non-negative integer: " + value);
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError(key + ": not a boolean (true/false): " + value);
}

}  // namespace

SearchConfig parse_search_config(const std::string& text) {
    SearchConfig config;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected key = value, got: " + line);
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
        }

        if (key == "population_size") {
            config.population_size = to_int(key, value);
        } else if (key == "generations") {
            config.generations = to_int(key, value);
        } else if (key == "time_budget_seconds") {
            config.time_budget_seconds = to_double(key, value);
        } else if (key == "crossover_rate") {
            config.crossover_rate = to_double(key, value);
        } else if (key == "mutation_rate") {
            config.mutation_rate = to_double(key, value);
        } else if (key == "elitism") {
            config.elitism = to_int(key, value);
        } else if (key == "resample_period") {
            config.resample_period = to_int(key, value);
        } else if (key == "individual_budget_seconds") {
            config.individual_budget_seconds = to_double(key, value);
        } else if (key == "tournament_size") {
            config.tournament_size = to_int(key, value);
        } else if (key == "k_folds") {
            config.k_folds = to_int(key, value);
        } else if (key == "depth_limit") {
            config.depth_limit = to_int(key, value);
        } else if (key == "train_fraction") {
            config.train_fraction = to_double(key, value);
        } else if (key == "master_seed") {
            config.master_seed = to_u64(key, value);
        } else if (key == "serial") {
            config.serial = to_bool(key, value);
        } else {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key: " + key);
        }
    }
    return config;
}

SearchConfig load_search_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_search_config(buffer.str());
}

std::string search_config_text(const SearchConfig& c) {
    char buf[64];
    std::string out;
    auto put_int = [&](const char* key, long long v) {
        out += key;
        std::snprintf(buf, sizeof buf, " = %lld\n", v);
        out += buf;
    };
    auto put_double = [&](const char* key, double v) {
        out += key;
        std::snprintf(buf, sizeof buf, " = %.17g\n", v);
        out += buf;
    };
    put_int("population_size", c.population_size);
    put_int("generations", c.generations);
    put_double("time_budget_seconds", c.time_budget_seconds);
    put_double("crossover_rate", c.crossover_rate);
    put_double("mutation_rate", c.mutation_rate);
    put_int("elitism", c.elitism);
    put_int("resample_period", c.resample_period);
    put_double("individual_budget_seconds", c.individual_budget_seconds);
    put_int("tournament_size", c.tournament_size);
    put_int("k_folds", c.k_folds);
    put_int("depth_limit", c.depth_limit);
    put_double("train_fraction", c.train_fraction);
    put_int("master_seed", static_cast<long long>(c.master_seed));
    out += "serial = ";
    out += c.serial ? "true" : "false";
    out += "\n";
    return out;
}

void write_manifest(const std::string& path, const RunManifest& m) {
    nlohmann::json j;
    j["config"] = m.config_text;
    j["grammar_digest"] = m.grammar_digest;
    j["dataset_digest"] = m.dataset_digest;
    j["master_seed"] = m.master_seed;
    j["version"] = m.version;
    j["started_at"] = m.started_at;
    j["finished_at"] = m.finished_at;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write manifest: " + path);
    out << j.dump(2) << "\n";
}

RunManifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open manifest: " + path);
    nlohmann::json j;
    in >> j;
    RunManifest m;
    m.config_text = j.at("config").get<std::string>();
    m.grammar_digest = j.at("grammar_digest").get<std::string>();
    m.dataset_digest = j.at("dataset_digest").get<std::string>();
    m.master_seed = j.at("master_seed").get<std::uint64_t>();
    m.version = j.at("version").get<std::string>();
    m.started_at = j.value("started_at", "");
    m.finished_at = j.value("finished_at", "");
    return m;
}

std::string iso8601_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

}  // namespace automol
