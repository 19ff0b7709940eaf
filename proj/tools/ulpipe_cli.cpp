// Command-line front end: each stage as a subcommand plus `run` for the whole
// pipeline. Exit codes: 0 success, 1 validation/config error, 2 stage failure.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ulpipe/downstream.hpp"
#include "ulpipe/flan.hpp"
#include "ulpipe/metrics.hpp"
#include "ulpipe/pipeline.hpp"

using namespace ulpipe;
namespace fs = std::filesystem;

namespace {

// A directory expands to its *.jsonl files, sorted by name.
std::vector<std::string> expand_inputs(const std::vector<std::string>& paths) {
    std::vector<std::string> files;
    for (const std::string& path : paths) {
        if (fs::is_directory(path)) {
            std::vector<std::string> found;
            for (const auto& entry : fs::directory_iterator(path))
                if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
                    found.push_back(entry.path().string());
            std::sort(found.begin(), found.end());
            if (found.empty())
                throw std::invalid_argument("no .jsonl files in directory " + path);
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(path);
        }
    }
    return files;
}

std::vector<Document> read_docs(const std::vector<std::string>& paths) {
    std::vector<Document> docs;
    for (const std::string& file : expand_inputs(paths)) {
        auto part = read_jsonl(file);
        docs.insert(docs.end(), std::make_move_iterator(part.begin()),
                    std::make_move_iterator(part.end()));
    }
    return docs;
}

void write_report(const json& report, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) throw std::runtime_error("cannot write " + path);
    out << report.dump(2) << '\n';
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

std::vector<int> windows_from_spec(const std::string& spec) {
    return spec == "default" ? kDefaultWindows : parse_window_spec(spec);
}

// "<file>=<n>" for --repeat
std::pair<std::string, int> parse_repeat(const std::string& spec) {
    auto eq = spec.rfind('=');
    if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("--repeat expects <file>=<n>, got \"" + spec + "\"");
    int n = 0;
    try {
        n = std::stoi(spec.substr(eq + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("--repeat count is not a number in \"" + spec + "\"");
    }
    if (n < 1) throw std::invalid_argument("--repeat count must be >= 1");
    return {spec.substr(0, eq), n};
}

json instance_with_text(const CorruptedInstance& inst, const Tokenizer& tok) {
    json j = instance_to_json(inst);
    j["encoder_text"] = tok.decode(inst.encoder_ids);
    j["decoder_text"] = tok.decode(inst.decoder_ids);
    return j;
}

struct GlobalFlags {
    std::string config;
    std::optional<uint64_t> seed;
    std::optional<int> workers;
    std::string report;
};

// ---- subcommand bodies; each returns the report it printed/wrote ----

json cmd_filter(const std::string& in, const std::string& out, double threshold, int workers) {
    auto docs = read_jsonl(in);
    FilterOptions opts;
    opts.lang_threshold = threshold;
    opts.workers = workers;
    FilterReport report;
    docs = filter_documents(std::move(docs), opts, report);
    write_jsonl(docs, out);
    std::printf("filter: %llu in, %llu out -> %s\n", (unsigned long long)report.docs_in,
                (unsigned long long)report.docs_out, out.c_str());
    return report.to_json();
}

json cmd_dedup(const std::vector<std::string>& in, const std::string& out,
               const std::string& window_spec, int max_run, const std::string& store_path,
               int workers) {
    std::vector<int> windows = windows_from_spec(window_spec);
    HashStore doc_store, window_store;
    std::string window_store_path = store_path.empty() ? "" : store_path + ".windows";
    if (!store_path.empty() && fs::exists(store_path)) doc_store = HashStore::load(store_path);
    if (!window_store_path.empty() && fs::exists(window_store_path))
        window_store = HashStore::load(window_store_path);

    fs::create_directories(out);
    uint64_t docs_removed = 0, windows_removed = 0;
    json files = json::array();
    for (const std::string& file : expand_inputs(in)) {
        auto docs = read_jsonl(file);
        size_t before = docs.size();
        for (Document& doc : docs) doc.text = collapse_char_runs(doc.text, max_run);
        docs = dedup_documents(std::move(docs), doc_store, docs_removed, workers);
        docs = dedup_paragraphs(std::move(docs), windows, window_store, windows_removed, workers);
        std::string dest = out + "/" + fs::path(file).filename().string();
        write_jsonl(docs, dest);
        files.push_back({{"in", file}, {"docs_in", before}, {"docs_out", docs.size()}});
        std::printf("dedup: %s %zu -> %zu docs\n", file.c_str(), before, docs.size());
    }
    if (!store_path.empty()) {
        doc_store.save(store_path);
        window_store.save(window_store_path);
    }
    json report;
    report["files"] = files;
    report["documents_removed"] = docs_removed;
    report["windows_removed"] = windows_removed;
    report["document_fingerprints"] = doc_store.count();
    report["window_fingerprints"] = window_store.count();
    std::printf("dedup: removed %llu duplicate docs, %llu duplicate windows\n",
                (unsigned long long)docs_removed, (unsigned long long)windows_removed);
    return report;
}

json cmd_mix(const std::string& zh, const std::string& en, const std::string& code,
             int64_t budget, const std::string& shares_spec, uint64_t seed,
             const std::string& out) {
    MixtureShares shares = parse_shares(shares_spec);
    MixturePlan plan = plan_mixture(shares, budget);
    auto tok = default_tokenizer();
    auto mixed = sample_mixture(read_jsonl(zh), read_jsonl(en), read_jsonl(code), plan, tok, seed);
    fs::create_directories(out);
    std::string dest = out + "/mixed.jsonl";
    write_jsonl(mixed, dest);
    json report;
    report["plan"] = {{"budget", plan.budget},
                      {"zh_tokens", plan.zh_tokens},
                      {"en_tokens", plan.en_tokens},
                      {"code_tokens", plan.code_tokens}};
    report["docs"] = mixed.size();
    std::printf("mix: %zu docs -> %s\n", mixed.size(), dest.c_str());
    return report;
}

json cmd_partition(const std::string& in, const std::string& budget_spec, const std::string& out) {
    std::string source = fs::is_directory(in) ? in + "/mixed.jsonl" : in;
    auto docs = read_jsonl(source);
    auto budgets = parse_stage_budgets(budget_spec);
    auto tok = default_tokenizer();
    auto parts = partition_stages(docs, budgets, tok);
    fs::create_directories(out);
    json report = json::object();
    for (const auto& [stage, part] : parts) {
        std::string name(stage_name(stage));
        std::string dest = out + "/stage_" + name + ".docs.jsonl";
        write_jsonl(part, dest);
        report[name] = part.size();
        std::printf("partition: stage %s %zu docs -> %s\n", name.c_str(), part.size(),
                    dest.c_str());
    }
    return report;
}

json cmd_denoise(const std::string& in, const std::string& stage_spec,
                 const std::string& weights_spec, uint64_t seed, const std::string& out,
                 bool with_text, int workers) {
    auto stage = stage_from(stage_spec);
    if (!stage || *stage == Stage::III)
        throw std::invalid_argument("--stage must be I or II");
    std::string source =
        fs::is_directory(in) ? in + "/stage_" + std::string(stage_name(*stage)) + ".docs.jsonl"
                             : in;
    auto docs = read_jsonl(source);
    DenoiseWeights weights = parse_weights(weights_spec);
    StageConfig cfg = default_stage_config(*stage);
    auto tok = default_tokenizer();
    uint64_t skipped = 0;
    auto instances = build_corpus_instances(docs, cfg, weights, tok, seed, skipped, workers);
    fs::create_directories(out);
    std::string dest = out + "/stage_" + std::string(stage_name(*stage)) + ".jsonl";
    if (with_text) {
        std::ofstream f(dest, std::ios::binary);
        if (!f.is_open()) throw std::runtime_error("cannot write " + dest);
        for (const auto& inst : instances) f << instance_with_text(inst, *tok).dump() << '\n';
        if (!f.good()) throw std::runtime_error("write failed: " + dest);
    } else {
        write_instances(instances, dest);
    }
    json report;
    report["instances"] = instances.size();
    report["chunks_skipped"] = skipped;
    std::printf("denoise: %zu instances (stage %s) -> %s\n", instances.size(),
                std::string(stage_name(*stage)).c_str(), dest.c_str());
    return report;
}

json cmd_flan_build(const std::string& en_path, const std::string& zh_path, double zh_share,
                    uint64_t seed, const std::string& out) {
    auto en = read_flan_jsonl(en_path, Lang::en);
    auto zh = read_flan_jsonl(zh_path, Lang::zh);
    auto tok = default_tokenizer();
    BiflanStats stats;
    auto examples =
        build_biflan(en, zh, zh_share, default_stage_config(Stage::III), tok, seed, &stats);
    fs::create_directories(out);
    std::string dest = out + "/biflan.jsonl";
    std::ofstream f(dest, std::ios::binary);
    if (!f.is_open()) throw std::runtime_error("cannot write " + dest);
    for (const auto& ex : examples) f << example_to_json(ex).dump() << '\n';
    f.flush();
    if (!f.good()) throw std::runtime_error("write failed: " + dest);
    json report;
    report["en_in"] = stats.en_in;
    report["zh_in"] = stats.zh_in;
    report["en_dropped"] = stats.en_dropped;
    report["zh_dropped"] = stats.zh_dropped;
    report["zh_epochs"] = stats.zh_epochs;
    report["emitted_en"] = stats.emitted_en;
    report["emitted_zh"] = stats.emitted_zh;
    std::printf("flan-build: %zu examples (%llu en, %llu zh) -> %s\n", examples.size(),
                (unsigned long long)stats.emitted_en, (unsigned long long)stats.emitted_zh,
                dest.c_str());
    return report;
}

// chat: conversations in, filtered + unrolled pairs out
json build_chat(const std::string& in, const std::string& repeat_spec,
                std::vector<TrainPair>& pairs) {
    std::vector<Conversation> convs;
    auto load = [&](const std::string& path, int copies) {
        std::ifstream f(path, std::ios::binary);
        if (!f.is_open()) throw std::runtime_error("cannot read " + path);
        std::string line;
        size_t lineno = 0;
        std::vector<Conversation> batch;
        while (std::getline(f, line)) {
            ++lineno;
            if (line.empty()) continue;
            try {
                batch.push_back(conversation_from_json(json::parse(line)));
            } catch (const std::exception& e) {
                throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
            }
        }
        for (int c = 0; c < copies; ++c) convs.insert(convs.end(), batch.begin(), batch.end());
    };
    load(in, 1);
    if (!repeat_spec.empty()) {
        auto [file, n] = parse_repeat(repeat_spec);
        load(file, n);
    }
    uint64_t dropped = 0;
    for (const Conversation& conv : convs) {
        if (!filter_dialogue(conv)) {
            ++dropped;
            continue;
        }
        auto unrolled = unroll_dialogue(conv);
        pairs.insert(pairs.end(), unrolled.begin(), unrolled.end());
    }
    return {{"conversations", convs.size()}, {"dropped", dropped}, {"pairs", pairs.size()}};
}

// code: documents in; first line becomes the prompt, the rest the target,
// with whitespace fidelity checked under the augmented tokenizer
json build_code(const std::string& in, std::vector<TrainPair>& pairs) {
    auto docs = read_docs({in});
    auto tok = augment_code_tokens(default_tokenizer());
    uint64_t skipped = 0;
    for (const Document& doc : docs) {
        auto nl = doc.text.find('\n');
        if (nl == std::string::npos || nl == 0 || nl + 1 >= doc.text.size()) {
            ++skipped;
            continue;
        }
        TrainPair pair{doc.text.substr(0, nl), doc.text.substr(nl + 1)};
        for (const std::string& side : {pair.input_text, pair.target_text})
            if (tok->decode(tok->encode(side)) != side)
                throw std::runtime_error("code tokenizer failed to round-trip document " + doc.id);
        pairs.push_back(std::move(pair));
    }
    return {{"docs", docs.size()}, {"skipped", skipped}, {"pairs", pairs.size()}};
}

// instructgen: instruction records in, reversed pairs out
json build_instructgen(const std::string& in, std::vector<TrainPair>& pairs) {
    auto recs = read_flan_jsonl(in, Lang::zh);
    for (const FlanRecord& rec : recs)
        pairs.push_back(reverse_instruction(rec.instruction, rec.output, rec.lang));
    return {{"records", recs.size()}, {"pairs", pairs.size()}};
}

// tool: {"query","recalled"} records in; formatted call pairs out, failed
// retrievals dropped
json build_tool(const std::string& in, std::vector<TrainPair>& pairs) {
    std::ifstream f(in, std::ios::binary);
    if (!f.is_open()) throw std::runtime_error("cannot read " + in);
    std::string line;
    size_t lineno = 0;
    uint64_t records = 0, dropped = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        ++records;
        std::string query, recalled;
        try {
            json j = json::parse(line);
            query = j.at("query").get<std::string>();
            recalled = j.value("recalled", "");
        } catch (const std::exception& e) {
            throw std::runtime_error(in + ":" + std::to_string(lineno) + ": " + e.what());
        }
        auto call = format_tool_call(query, recalled);
        if (!call) {
            ++dropped;
            continue;
        }
        pairs.push_back({query, *call});
    }
    return {{"records", records}, {"dropped", dropped}, {"pairs", pairs.size()}};
}

json cmd_downstream(const std::string& task, const std::string& in, const std::string& out,
                    const std::string& repeat_spec) {
    std::vector<TrainPair> pairs;
    json report;
    if (task == "chat")
        report = build_chat(in, repeat_spec, pairs);
    else if (task == "code")
        report = build_code(in, pairs);
    else if (task == "instructgen")
        report = build_instructgen(in, pairs);
    else if (task == "tool")
        report = build_tool(in, pairs);
    else
        throw std::invalid_argument("--task must be chat, code, instructgen or tool");
    std::ofstream f(out, std::ios::binary);
    if (!f.is_open()) throw std::runtime_error("cannot write " + out);
    for (const TrainPair& pair : pairs) f << train_pair_to_json(pair).dump() << '\n';
    f.flush();
    if (!f.good()) throw std::runtime_error("write failed: " + out);
    std::printf("downstream-build(%s): %zu pairs -> %s\n", task.c_str(), pairs.size(),
                out.c_str());
    return report;
}

json cmd_valsets(const std::vector<std::string>& in, int size, uint64_t seed,
                 const std::string& out) {
    auto docs = read_docs(in);
    auto tok = default_tokenizer();
    auto sets = build_validation_sets(docs, size_t(size), seed, tok);
    fs::create_directories(out);
    json report = json::object();
    for (const auto& [name, set] : sets) {
        std::string dest = out + "/valset_" + name + ".jsonl";
        write_instances(set.instances, dest);
        report[name] = {{"instances", set.instances.size()}, {"docs", set.doc_ids.size()}};
        std::printf("valsets: %s %zu instances -> %s\n", name.c_str(), set.instances.size(),
                    dest.c_str());
    }
    return report;
}

json cmd_stats(const std::vector<std::string>& in, int workers) {
    auto docs = read_docs(in);
    auto tok = default_tokenizer();
    CorpusStats stats = corpus_stats(docs, tok, workers);
    json report = stats_to_json(stats);
    std::printf("%s\n", report.dump(2).c_str());
    return report;
}

json cmd_carbon(double mwh, double pue, double intensity, bool defaults_only) {
    double tco2e = defaults_only ? carbon_emission(mwh) : carbon_emission(mwh, pue, intensity);
    std::printf("%.12g\n", tco2e);
    json report;
    report["mwh"] = mwh;
    report["pue"] = defaults_only ? kDefaultPue : pue;
    report["grid_intensity"] = defaults_only ? kDefaultGridIntensity : intensity;
    report["tco2e"] = tco2e;
    return report;
}

json cmd_run(const GlobalFlags& flags) {
    PipelineConfig config =
        flags.config.empty() ? default_pipeline_config() : load_pipeline_config(flags.config);
    if (flags.seed) config.seed = *flags.seed;
    if (flags.workers) config.workers = *flags.workers;
    json manifest = run_pipeline(config);
    for (const auto& [stage, report] : manifest["stages"].items())
        std::printf("run: %-9s %s\n", stage.c_str(), report.dump().c_str());
    std::printf("run: manifest -> %s/manifest.json\n", config.out_dir.c_str());
    return manifest;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bilingual corpus pipeline: cleaning, dedup, mixing, denoising instances"};
    app.require_subcommand(1);

    GlobalFlags flags;
    uint64_t seed_opt = 0;
    int workers_opt = 0;
    app.add_option("--config", flags.config, "pipeline config file (// comments allowed)");
    auto* seed_flag = app.add_option("--seed", seed_opt, "override the config seed");
    auto* workers_flag = app.add_option("--workers", workers_opt, "override the worker count");
    app.add_option("--report", flags.report, "write the subcommand's JSON report here");

    // filter
    auto* filter = app.add_subcommand("filter", "scrub privacy spans, clean markup, keep zh/en");
    std::string f_in, f_out;
    double f_threshold = kDefaultLangThreshold;
    filter->add_option("--in", f_in, "input document .jsonl")->required();
    filter->add_option("--out", f_out, "output document .jsonl")->required();
    filter->add_option("--lang-threshold", f_threshold, "language-id confidence floor");

    // dedup
    auto* dedup = app.add_subcommand("dedup", "collapse runs, drop duplicate docs and paragraphs");
    std::vector<std::string> d_in;
    std::string d_out, d_windows = "default", d_store;
    int d_max_run = 3;
    dedup->add_option("--in", d_in, "input .jsonl files or directories")->required();
    dedup->add_option("--out", d_out, "output directory (keeps basenames)")->required();
    dedup->add_option("--windows", d_windows, "window sizes: default, full, or e.g. 1,2,3");
    dedup->add_option("--max-run", d_max_run, "collapse character runs longer than this");
    dedup->add_option("--store", d_store,
                      "fingerprint store for resume; window store lands at <store>.windows");

    // mix
    auto* mix = app.add_subcommand("mix", "sample the component mixture into one stream");
    std::string m_zh, m_en, m_code, m_shares = "0.475,0.475,0.05", m_out;
    int64_t m_budget = 0;
    mix->add_option("--zh", m_zh, "Chinese component .jsonl")->required();
    mix->add_option("--en", m_en, "English component .jsonl")->required();
    mix->add_option("--code", m_code, "code component .jsonl")->required();
    mix->add_option("--budget", m_budget, "token budget of the mixed stream")->required();
    mix->add_option("--shares", m_shares, "zh,en,code token shares");
    mix->add_option("--out", m_out, "output directory (writes mixed.jsonl)")->required();

    // partition
    auto* partition = app.add_subcommand("partition", "split the mixed stream into stages");
    std::string p_in, p_budgets, p_out;
    partition->add_option("--in", p_in, "mixed .jsonl, or a directory holding mixed.jsonl")
        ->required();
    partition->add_option("--budgets", p_budgets, "token budgets, e.g. I=50000,II=6600")
        ->required();
    partition->add_option("--out", p_out, "output directory")->required();

    // denoise
    auto* denoise = app.add_subcommand("denoise", "build span-corruption instances for a stage");
    std::string n_in, n_stage, n_weights = "0.333,0.333,0.334", n_out;
    uint64_t n_seed = 1;
    bool n_text = false;
    denoise
        ->add_option("--in", n_in, "document .jsonl, or a directory holding stage_<S>.docs.jsonl")
        ->required();
    denoise->add_option("--stage", n_stage, "I or II")->required();
    denoise->add_option("--weights", n_weights, "kind weights r,s,x (stage I only)");
    denoise->add_option("--seed", n_seed, "instance sampling seed");
    denoise->add_option("--out", n_out, "output directory")->required();
    denoise->add_flag("--text", n_text, "also emit decoded encoder/decoder text per instance");

    // flan-build
    auto* flanb = app.add_subcommand("flan-build", "interleave bilingual instruction examples");
    std::string fb_en, fb_zh, fb_out;
    double fb_share = 1.0 / 3;
    uint64_t fb_seed = 1;
    flanb->add_option("--en", fb_en, "English instruction records .jsonl")->required();
    flanb->add_option("--zh", fb_zh, "Chinese instruction records .jsonl")->required();
    flanb->add_option("--zh-share", fb_share, "Chinese fraction of the emitted stream");
    flanb->add_option("--seed", fb_seed, "shuffling seed");
    flanb->add_option("--out", fb_out, "output directory (writes biflan.jsonl)")->required();

    // downstream-build
    auto* down = app.add_subcommand("downstream-build", "format fine-tuning datasets");
    std::string ds_task, ds_in, ds_out, ds_repeat;
    down->add_option("--task", ds_task, "chat, code, instructgen or tool")->required();
    down->add_option("--in", ds_in, "input records .jsonl")->required();
    down->add_option("--out", ds_out, "output pairs .jsonl")->required();
    down->add_option("--repeat", ds_repeat, "extra conversations <file>=<n> (chat only)");

    // valsets
    auto* valsets = app.add_subcommand("valsets", "carve per-kind validation instance sets");
    std::vector<std::string> v_in;
    int v_size = 0;
    uint64_t v_seed = 1;
    std::string v_out;
    valsets->add_option("--in", v_in, "document .jsonl files or directories")->required();
    valsets->add_option("--size", v_size, "instances per set")->required();
    valsets->add_option("--seed", v_seed, "assignment seed");
    valsets->add_option("--out", v_out, "output directory")->required();

    // stats
    auto* stats = app.add_subcommand("stats", "corpus composition statistics");
    std::vector<std::string> s_in;
    stats->add_option("--in", s_in, "document .jsonl files or directories")->required();

    // carbon
    auto* carbon = app.add_subcommand("carbon", "grid carbon emission for a power draw");
    double c_mwh = 0, c_pue = kDefaultPue, c_intensity = kDefaultGridIntensity;
    carbon->add_option("--mwh", c_mwh, "energy consumed, MWh")->required();
    auto* pue_opt = carbon->add_option("--pue", c_pue, "power usage effectiveness");
    auto* int_opt = carbon->add_option("--intensity", c_intensity, "tCO2e per MWh at the grid");

    // run
    auto* run_cmd = app.add_subcommand("run", "run the whole pipeline per --config");

    // global flags are accepted after the subcommand name too
    for (CLI::App* sub : {filter, dedup, mix, partition, denoise, flanb, down, valsets, stats,
                          carbon, run_cmd})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (seed_flag->count()) flags.seed = seed_opt;
    if (workers_flag->count()) flags.workers = workers_opt;
    int workers = flags.workers.value_or(1);

    try {
        json report;
        if (filter->parsed())
            report = cmd_filter(f_in, f_out, f_threshold, workers);
        else if (dedup->parsed())
            report = cmd_dedup(d_in, d_out, d_windows, d_max_run, d_store, workers);
        else if (mix->parsed())
            report = cmd_mix(m_zh, m_en, m_code, m_budget, m_shares, flags.seed.value_or(1), m_out);
        else if (partition->parsed())
            report = cmd_partition(p_in, p_budgets, p_out);
        else if (denoise->parsed())
            report = cmd_denoise(n_in, n_stage, n_weights, flags.seed.value_or(n_seed), n_out,
                                 n_text, workers);
        else if (flanb->parsed())
            report = cmd_flan_build(fb_en, fb_zh, fb_share, flags.seed.value_or(fb_seed), fb_out);
        else if (down->parsed())
            report = cmd_downstream(ds_task, ds_in, ds_out, ds_repeat);
        else if (valsets->parsed())
            report = cmd_valsets(v_in, v_size, flags.seed.value_or(v_seed), v_out);
        else if (stats->parsed())
            report = cmd_stats(s_in, workers);
        else if (carbon->parsed())
            report = cmd_carbon(c_mwh, c_pue, c_intensity,
                                pue_opt->count() == 0 && int_opt->count() == 0);
        else
            report = cmd_run(flags);
        write_report(report, flags.report);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
