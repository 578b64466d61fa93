#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "automol/config.hpp"
#include "automol/dataset.hpp"
#include "automol/errors.hpp"
#include "automol/evaluate.hpp"
#include "automol/featurize.hpp"
#include "automol/grammar.hpp"
#include "automol/metrics.hpp"
#include "automol/pipeline.hpp"
#include "automol/search.hpp"
#include "automol/splits.hpp"
#include "automol/stats_compare.hpp"
#include "automol/version.hpp"

namespace {

using namespace automol;

constexpr const char* kGrammarEnv = "AUTOMOL_GRAMMAR";
constexpr const char* kDefaultGrammar = "grammars/pipeline.bnf";

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << text;
}

std::string hex64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string resolve_grammar_path(const std::string& cli_path) {
    if (!cli_path.empty()) return cli_path;
    if (const char* env = std::getenv(kGrammarEnv); env && *env) return env;
    return kDefaultGrammar;
}

Grammar load_grammar(const std::string& cli_path, std::string* used_path = nullptr) {
    std::string path = resolve_grammar_path(cli_path);
    if (used_path) *used_path = path;
    Grammar g = Grammar::parse_file(path);
    GrammarStats stats = g.stats();
    std::printf("automol %s | grammar %s: %zu rules, %zu nonterminals, %zu terminals\n",
                kVersion, path.c_str(), stats.rule_count, stats.nonterminal_count,
                stats.terminal_count);
    return g;
}

void report_quarantine(const Dataset& d) {
    if (d.quarantined.empty()) return;
    std::printf("quarantined %zu row(s):\n", d.quarantined.size());
    for (const QuarantineEntry& q : d.quarantined) {
        std::printf("  row %zu (id %s): %s\n", q.row, q.id.c_str(), q.reason.c_str());
    }
}

GroupSet parse_groups(const std::string& text) {
    if (text == "all") return GroupSet::all();
    GroupSet groups;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        auto g = group_from_token(token);
        if (!g) throw DataError("unknown feature group: " + token);
        groups.add(*g);
    }
    if (groups.empty()) throw DataError("no feature groups given");
    return groups;
}

std::vector<std::string> read_sentence_file(const std::string& path) {
    std::vector<std::string> tokens = split_tokens(read_file(path));
    if (tokens.empty()) throw DataError("empty pipeline sentence: " + path);
    return tokens;
}

double fold_std(const std::vector<double>& folds, double mean) {
    if (folds.empty()) return 0.0;
    double var = 0.0;
    for (double v : folds) var += (v - mean) * (v - mean);
    return std::sqrt(var / static_cast<double>(folds.size()));
}

struct SubsetTable {
    std::vector<std::string> smiles;
    Labels labels;
};

SubsetTable subset(const Dataset& d, const std::vector<int>& indices) {
    SubsetTable out;
    for (int i : indices) {
        out.smiles.push_back(d.records[i].smiles);
        out.labels.push_back(d.records[i].label);
    }
    return out;
}

Matrix rows_of(const FeatureMatrix& fm) { return fm.rows; }

int cmd_validate_grammar(const std::string& grammar_path) {
    std::string used;
    Grammar g = load_grammar(grammar_path, &used);
    ValidationReport report = g.validate();
    if (report.clean()) {
        std::printf("validation: clean\n");
        return 0;
    }
    for (const std::string& nt : report.unreachable) {
        std::printf("unreachable: <%s>\n", nt.c_str());
    }
    for (const std::string& nt : report.nonproductive) {
        std::printf("nonproductive: <%s>\n", nt.c_str());
    }
    return 1;
}

int cmd_synth(const std::string& kind, int n, double noise, std::uint64_t seed,
              const std::string& out_path) {
    Dataset d = synth_dataset(synth_kind_from_string(kind), n, noise, seed);
    write_dataset_csv(out_path, d);
    std::printf("wrote %s: %zu molecules, digest %s\n", out_path.c_str(),
                d.records.size(), hex64(d.digest()).c_str());
    return 0;
}

int cmd_featurize(const std::string& data_path, const std::string& groups_text,
                  const std::string& out_path, bool serial) {
    Dataset d = ingest_csv(data_path);
    report_quarantine(d);
    GroupSet groups = parse_groups(groups_text);
    FeatureMatrix fm =
        serial ? featurize_serial(d.smiles_list(), groups) : featurize(d.smiles_list(), groups);
    save_feature_csv(out_path, fm);
    std::printf("wrote %s: %zu rows x %zu columns (%s)\n", out_path.c_str(), fm.n_rows(),
                fm.n_cols(), groups.spec_string().c_str());
    return 0;
}

int cmd_search(const std::string& grammar_path, const std::string& data_path,
               const std::string& config_path, bool desk, bool have_seed,
               std::uint64_t seed, bool serial, const std::string& out_dir) {
    std::string used_grammar;
    Grammar g = load_grammar(grammar_path, &used_grammar);

    SearchConfig cfg;
    if (!config_path.empty()) cfg = load_search_config(config_path);
    if (desk) {
        cfg.population_size = 20;
        cfg.generations = 10;
        cfg.individual_budget_seconds = 30.0;
        cfg.time_budget_seconds = 240.0;
    }
    if (have_seed) cfg.master_seed = seed;
    if (serial) cfg.serial = true;

    Dataset d = ingest_csv(data_path);
    report_quarantine(d);

    RunManifest manifest;
    manifest.config_text = search_config_text(cfg);
    manifest.grammar_digest = hex64(fnv1a64(read_file(used_grammar)));
    manifest.dataset_digest = hex64(d.digest());
    manifest.master_seed = cfg.master_seed;
    manifest.version = kVersion;
    manifest.started_at = iso8601_now();

    auto [train_idx, blind_idx] =
        stratified_split(d.labels(), cfg.train_fraction, derive_seed(cfg.master_seed, "blind"));
    SubsetTable train = subset(d, train_idx);
    SubsetTable blind = subset(d, blind_idx);
    std::printf("dataset %s: %zu molecules (train %zu, blind %zu)\n", d.name.c_str(),
                d.records.size(), train.smiles.size(), blind.smiles.size());

    Evaluator evaluator(g, train.smiles, train.labels, cfg.k_folds, cfg.master_seed,
                        cfg.individual_budget_seconds);
    SearchResult result = run_search(g, evaluator, cfg, [](const GenerationRow& row) {
        std::printf("gen %3d  best %.4f  mean %.4f  foldset %d  evals %llu  hits %llu\n",
                    row.generation, row.best_mcc, row.mean_mcc, row.foldset_id,
                    static_cast<unsigned long long>(row.evals),
                    static_cast<unsigned long long>(row.cache_hits));
        std::fflush(stdout);
    });
    if (result.stopped_by_budget) std::printf("stopped: wall-clock budget reached\n");

    // Finalize: refit the winner on the full training table, score blind.
    const Individual& best = result.best();
    std::vector<std::string> sentence = best.sentence();
    PipelineSpec spec = spec_from_sentence(g, sentence);
    auto train_features = evaluator.features_for(spec.groups);
    Rng refit_rng(derive_seed(cfg.master_seed, "final-fit"));
    FittedPipeline fitted =
        fit_pipeline(spec, rows_of(*train_features), train_features->column_names,
                     train.labels, refit_rng, Deadline::unlimited());
    FeatureMatrix blind_features = featurize(blind.smiles, spec.groups);
    double blind_mcc =
        mcc(confusion(blind.labels, fitted.predict(rows_of(blind_features))));

    double cv_mean = best.fitness ? best.fitness->mean_mcc : 0.0;
    double cv_std = best.fitness ? fold_std(best.fitness->per_fold_mcc, cv_mean) : 0.0;

    std::filesystem::create_directories(out_dir);
    auto in_dir = [&](const std::string& name) { return out_dir + "/" + name; };
    write_generation_log(in_dir("generations.csv"), result.log);
    std::string sentence_lines;
    for (const std::string& token : sentence) sentence_lines += token + "\n";
    write_file(in_dir("best_pipeline.txt"), sentence_lines);
    write_file(in_dir("best_pipeline.json"), fitted.to_json().dump(2) + "\n");

    char line[256];
    std::string report = "# Search report\n\n";
    report += "- dataset: " + d.name + " (" + std::to_string(d.records.size()) +
              " molecules; train " + std::to_string(train.smiles.size()) + ", blind " +
              std::to_string(blind.smiles.size()) + ")\n";
    report += "- best pipeline: `" + join_tokens(sentence) + "`\n";
    report += "- fitness status: " + to_string(best.fitness ? best.fitness->status
                                                            : EvalStatus::TrainFailure) +
              "\n\n";
    report += "| Metric | MCC |\n|---|---|\n";
    std::snprintf(line, sizeof line, "| %d-fold CV | %.3f (%.3f) |\n", cfg.k_folds,
                  cv_mean, cv_std);
    report += line;
    std::snprintf(line, sizeof line, "| Blind Test | %.3f |\n", blind_mcc);
    report += line;
    write_file(in_dir("final_report.md"), report);

    manifest.finished_at = iso8601_now();
    write_manifest(in_dir("manifest.json"), manifest);

    std::printf("best: %s\n", join_tokens(sentence).c_str());
    std::printf("%d-fold CV MCC: %.3f (%.3f)\n", cfg.k_folds, cv_mean, cv_std);
    std::printf("blind MCC: %.3f\n", blind_mcc);
    std::printf("artifacts in %s\n", out_dir.c_str());
    return 0;
}

int cmd_evaluate(const std::string& grammar_path, const std::string& pipeline_path,
                 const std::string& data_path, int k, double train_fraction,
                 std::uint64_t seed) {
    Grammar g = load_grammar(grammar_path);
    std::vector<std::string> sentence = read_sentence_file(pipeline_path);
    PipelineSpec spec = spec_from_sentence(g, sentence);  // unparseable -> error exit

    Dataset d = ingest_csv(data_path);
    report_quarantine(d);

    SubsetTable cv_table{d.smiles_list(), d.labels()};
    SubsetTable blind;
    bool have_blind = train_fraction > 0.0 && train_fraction < 1.0;
    if (have_blind) {
        auto [train_idx, blind_idx] =
            stratified_split(d.labels(), train_fraction, derive_seed(seed, "blind"));
        cv_table = subset(d, train_idx);
        blind = subset(d, blind_idx);
    }

    Evaluator evaluator(g, cv_table.smiles, cv_table.labels, k, seed, -1.0);
    FitnessRecord record = evaluator.evaluate(sentence, 0);
    if (record.status != EvalStatus::Ok) {
        std::fprintf(stderr, "evaluation failed: %s\n", to_string(record.status).c_str());
        return 1;
    }
    double cv_std = fold_std(record.per_fold_mcc, record.mean_mcc);
    std::printf("%d-fold CV MCC: %.3f (%.3f)\n", k, record.mean_mcc, cv_std);

    if (have_blind) {
        auto features = evaluator.features_for(spec.groups);
        Rng rng(derive_seed(seed, "final-fit"));
        FittedPipeline fitted = fit_pipeline(spec, rows_of(*features),
                                             features->column_names, cv_table.labels, rng,
                                             Deadline::unlimited());
        FeatureMatrix blind_features = featurize(blind.smiles, spec.groups);
        double blind_mcc =
            mcc(confusion(blind.labels, fitted.predict(rows_of(blind_features))));
        std::printf("Blind Test MCC: %.3f\n", blind_mcc);
    }
    return 0;
}

int cmd_analyze(const std::string& grammar_path, const std::vector<std::string>& run_dirs,
                const std::string& out_path) {
    Grammar g = load_grammar(grammar_path);
    std::map<std::string, int> groups_counts;
    std::map<std::string, int> scaler_counts;
    std::map<std::string, int> selector_counts;
    std::map<std::string, int> classifier_counts;
    int total = 0;

    for (const std::string& dir : run_dirs) {
        std::vector<std::string> sentence = read_sentence_file(dir + "/best_pipeline.txt");
        PipelineSpec spec = spec_from_sentence(g, sentence);
        ++total;
        ++groups_counts[spec.groups.spec_string()];
        std::string scaler = "none";
        if (spec.scaler) {
            switch (spec.scaler->kind) {
                case ScalerKind::Normalizer: scaler = "Normalizer"; break;
                case ScalerKind::MinMax: scaler = "MinMaxScaler"; break;
                case ScalerKind::MaxAbs: scaler = "MaxAbsScaler"; break;
                case ScalerKind::Robust: scaler = "RobustScaler"; break;
                case ScalerKind::Standard: scaler = "StddScaler"; break;
                case ScalerKind::None: break;
            }
        }
        ++scaler_counts[scaler];
        std::string selector = "none";
        if (spec.selector) {
            switch (spec.selector->kind) {
                case SelectorKind::VarianceThreshold: selector = "VarianceThreshold"; break;
                case SelectorKind::SelectPercentile: selector = "SelectPercentile"; break;
                case SelectorKind::SelectFPR: selector = "SelectFPR"; break;
                case SelectorKind::SelectFWE: selector = "SelectFWE"; break;
                case SelectorKind::SelectFDR: selector = "SelectFDR"; break;
                case SelectorKind::None: break;
            }
        }
        ++selector_counts[selector];
        ++classifier_counts[to_string(spec.classifier.kind)];
    }
    if (total == 0) throw DataError("no run directories given");

    std::string out = "# Selection frequencies (" + std::to_string(total) + " runs)\n";
    auto emit = [&](const char* title, const std::map<std::string, int>& counts) {
        out += "\n## " + std::string(title) + "\n\n| choice | share |\n|---|---|\n";
        char buf[64];
        for (const auto& [name, count] : counts) {
            std::snprintf(buf, sizeof buf, " | %.3f |\n",
                          static_cast<double>(count) / total);
            out += "| " + name + buf;
        }
    };
    emit("Feature groups", groups_counts);
    emit("Scaler", scaler_counts);
    emit("Selector", selector_counts);
    emit("Classifier", classifier_counts);

    if (out_path.empty()) {
        std::fputs(out.c_str(), stdout);
    } else {
        write_file(out_path, out);
        std::printf("wrote %s\n", out_path.c_str());
    }
    return 0;
}

int cmd_compare(const std::string& scores_path, const std::string& out_md,
                const std::string& out_csv) {
    ScoreTable t = read_score_csv(scores_path);
    std::string md = comparison_markdown(t);
    std::fputs(md.c_str(), stdout);
    if (!out_md.empty()) write_file(out_md, md);
    if (!out_csv.empty()) write_file(out_csv, comparison_csv(t));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grammar-based genetic programming over molecular ML pipelines"};
    app.require_subcommand(1);

    std::string grammar_path;
    app.add_option("--grammar", grammar_path,
                   "grammar file (default: $AUTOMOL_GRAMMAR or grammars/pipeline.bnf)");
    int jobs = 0;
    app.add_option("--jobs", jobs, "cap evaluator parallelism (0 = hardware default)");

    auto* validate = app.add_subcommand("validate-grammar", "check the grammar file");

    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
    std::string synth_kind = "nitro-rule";
    int synth_n = 300;
    double synth_noise = 0.0;
    std::uint64_t synth_seed = 42;
    std::string synth_out = "synth.csv";
    synth->add_option("--kind", synth_kind, "nitro-rule | mw-threshold | noisy-xor-groups");
    synth->add_option("--n", synth_n, "number of molecules (>= 20)");
    synth->add_option("--noise", synth_noise, "label flip probability");
    synth->add_option("--seed", synth_seed, "generator seed");
    synth->add_option("--out", synth_out, "output CSV")->required();

    auto* featurize_cmd = app.add_subcommand("featurize", "compute feature table");
    std::string feat_data;
    std::string feat_groups = "all";
    std::string feat_out;
    bool feat_serial = false;
    featurize_cmd->add_option("--data", feat_data, "dataset CSV")->required();
    featurize_cmd->add_option("--groups", feat_groups,
                              "comma-separated group tokens or 'all'");
    featurize_cmd->add_option("--out", feat_out, "output CSV")->required();
    featurize_cmd->add_flag("--serial", feat_serial, "use the serial reference path");

    auto* search = app.add_subcommand("search", "run the pipeline search");
    std::string search_data;
    std::string search_config;
    std::string search_out = "run";
    bool desk = false;
    bool search_serial = false;
    std::uint64_t search_seed = 0;
    search->add_option("--data", search_data, "dataset CSV")->required();
    search->add_option("--config", search_config, "key=value config file");
    auto* seed_opt = search->add_option("--seed", search_seed, "master seed override");
    search->add_flag("--desk", desk,
                     "desk-scale preset: population 20, 10 generations, "
                     "30 s per individual, 240 s total");
    search->add_flag("--serial", search_serial, "force serial evaluation");
    search->add_option("--out", search_out, "output directory");

    auto* evaluate = app.add_subcommand("evaluate", "re-score a persisted pipeline");
    std::string eval_pipeline;
    std::string eval_data;
    int eval_k = 5;
    double eval_split = 0.0;
    std::uint64_t eval_seed = 42;
    evaluate->add_option("--pipeline", eval_pipeline, "pipeline sentence file")->required();
    evaluate->add_option("--data", eval_data, "dataset CSV")->required();
    evaluate->add_option("--k", eval_k, "CV folds");
    evaluate->add_option("--train-fraction", eval_split,
                         "hold out a blind split (0 = CV on the whole set)");
    evaluate->add_option("--seed", eval_seed, "fold/fit seed");

    auto* analyze = app.add_subcommand("analyze", "selection frequencies of best pipelines");
    std::vector<std::string> run_dirs;
    std::string analyze_out;
    analyze->add_option("dirs", run_dirs, "completed run directories")->required();
    analyze->add_option("--out", analyze_out, "write markdown here instead of stdout");

    auto* compare = app.add_subcommand("compare", "rank methods and test significance");
    std::string scores_path;
    std::string compare_md;
    std::string compare_csv;
    compare->add_option("--scores", scores_path, "CSV: dataset,method1,...")->required();
    compare->add_option("--out-md", compare_md, "write the markdown report here");
    compare->add_option("--out-csv", compare_csv, "write the CSV report here");

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#endif

    try {
        if (app.got_subcommand(validate)) return cmd_validate_grammar(grammar_path);
        if (app.got_subcommand(synth)) {
            return cmd_synth(synth_kind, synth_n, synth_noise, synth_seed, synth_out);
        }
        if (app.got_subcommand(featurize_cmd)) {
            return cmd_featurize(feat_data, feat_groups, feat_out, feat_serial);
        }
        if (app.got_subcommand(search)) {
            return cmd_search(grammar_path, search_data, search_config, desk,
                              seed_opt->count() > 0, search_seed, search_serial, search_out);
        }
        if (app.got_subcommand(evaluate)) {
            return cmd_evaluate(grammar_path, eval_pipeline, eval_data, eval_k, eval_split,
                                eval_seed);
        }
        if (app.got_subcommand(analyze)) {
            return cmd_analyze(grammar_path, run_dirs, analyze_out);
        }
        if (app.got_subcommand(compare)) {
            return cmd_compare(scores_path, compare_md, compare_csv);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
