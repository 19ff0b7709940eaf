#include "ulpipe/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "ulpipe/flan.hpp"
#include "ulpipe/metrics.hpp"
#include "ulpipe/text.hpp"

namespace ulpipe {

namespace {

const std::vector<std::string> kComponentNames = {"zh", "en", "code"};

bool known_component(const std::string& name) {
    for (const auto& c : kComponentNames)
        if (c == name) return true;
    return false;
}

void check_component_list(const std::vector<std::string>& list, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& name : list) {
        if (!known_component(name))
            throw std::invalid_argument(std::string("config: ") + what + " names unknown component \"" +
                                        name + "\"");
        if (!seen.insert(name).second)
            throw std::invalid_argument(std::string("config: ") + what + " lists \"" + name +
                                        "\" twice");
    }
}

std::string hex128(U128 h) {
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", (unsigned long long)h.hi,
                  (unsigned long long)h.lo);
    return buf;
}

U128 hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw std::runtime_error("cannot hash " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return murmur3_128(bytes);
}

json file_entry(const std::string& name, const std::string& path, json extra = json::object()) {
    json e;
    e["name"] = name;
    e["path"] = path;
    e["bytes"] = uint64_t(std::filesystem::file_size(path));
    e["hash"] = hex128(hash_file(path));
    for (auto& [k, v] : extra.items()) e[k] = v;
    return e;
}

void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

// ---- config serialization ----

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
    for (const auto& [k, v] : j.items()) {
        (void)v;
        bool ok = false;
        for (const char* a : allowed)
            if (k == a) ok = true;
        if (!ok)
            throw std::invalid_argument(std::string("config: unknown key \"") + k + "\" in " +
                                        where);
    }
}

json stage_to_json(const StageConfig& s) {
    json j;
    j["encoder_len"] = s.encoder_len;
    j["decoder_len"] = s.decoder_len;
    j["batch_size"] = s.batch_size;
    j["token_budget"] = s.token_budget;
    return j;
}

void stage_from_json(const json& j, StageConfig& s, const std::string& where) {
    check_keys(j, {"encoder_len", "decoder_len", "batch_size", "token_budget"}, where.c_str());
    if (j.contains("encoder_len")) s.encoder_len = j.at("encoder_len").get<int>();
    if (j.contains("decoder_len")) s.decoder_len = j.at("decoder_len").get<int>();
    if (j.contains("batch_size")) s.batch_size = j.at("batch_size").get<int>();
    if (j.contains("token_budget")) s.token_budget = j.at("token_budget").get<int64_t>();
}

std::vector<int> windows_from_json(const json& j) {
    if (j.is_string()) {
        std::string spec = j.get<std::string>();
        return spec == "default" ? kDefaultWindows : parse_window_spec(spec);
    }
    if (j.is_array()) {
        std::vector<int> sizes;
        for (const auto& v : j) sizes.push_back(v.get<int>());
        return sizes;
    }
    throw std::invalid_argument("config: dedup.windows must be a string spec or an array of sizes");
}

}  // namespace

PipelineConfig default_pipeline_config() { return PipelineConfig{}; }

void validate(const PipelineConfig& config) {
    if (config.workers < 1) throw std::invalid_argument("config: workers must be >= 1");
    if (config.out_dir.empty()) throw std::invalid_argument("config: out_dir is empty");
    if (config.zh_path.empty() || config.en_path.empty() || config.code_path.empty())
        throw std::invalid_argument("config: every component input path must be set");
    check_component_list(config.filter_components, "filter.components");
    check_component_list(config.text_components, "dedup.text_components");
    if (!(config.filter.lang_threshold >= 0.0 && config.filter.lang_threshold <= 1.0))
        throw std::invalid_argument("config: filter.lang_threshold must be in [0, 1]");
    if (config.max_run < 1) throw std::invalid_argument("config: dedup.max_run must be >= 1");
    if (config.windows.empty()) throw std::invalid_argument("config: dedup.windows is empty");
    for (int w : config.windows)
        if (w < 1 || w > 99)
            throw std::invalid_argument("config: dedup window sizes must be in [1, 99]");
    plan_mixture(config.shares, config.token_budget);  // validates shares and budget
    if (config.partition_budgets.empty())
        throw std::invalid_argument("config: partition budgets are empty");
    int64_t partition_total = 0;
    for (const auto& [stage, budget] : config.partition_budgets) {
        if (stage == Stage::III)
            throw std::invalid_argument(
                "config: stage III takes instruction data, not a partition budget");
        if (budget <= 0) throw std::invalid_argument("config: partition budgets must be positive");
        partition_total += budget;
    }
    if (partition_total > config.token_budget)
        throw std::invalid_argument("config: partition budgets exceed the mixed-stream budget");
    if (!(config.weights.r >= 0 && config.weights.s >= 0 && config.weights.x >= 0) ||
        config.weights.r + config.weights.s + config.weights.x <= 0)
        throw std::invalid_argument("config: denoise weights must be non-negative, sum positive");
    if (!(config.sigma_factor >= 0))
        throw std::invalid_argument("config: denoise.sigma_factor must be >= 0");
    for (Stage stage : {Stage::I, Stage::II, Stage::III}) {
        auto it = config.stages.find(stage);
        if (it == config.stages.end())
            throw std::invalid_argument(std::string("config: missing stage config for stage ") +
                                        std::string(stage_name(stage)));
        StageConfig s = it->second;
        s.stage = stage;
        validate(s);
    }
    for (const auto& [stage, budget] : config.partition_budgets) {
        (void)budget;
        chunk_capacity(config.stages.at(stage), config.weights);  // throws if chunks cannot fit
    }
    if (config.flan_en_path.empty() != config.flan_zh_path.empty())
        throw std::invalid_argument("config: flan.en and flan.zh must be set together");
    if (!(config.zh_share >= 0.0 && config.zh_share < 1.0))
        throw std::invalid_argument("config: flan.zh_share must be in [0, 1)");
}

json config_to_json(const PipelineConfig& config) {
    json j;
    j["seed"] = config.seed;
    j["workers"] = config.workers;
    j["out_dir"] = config.out_dir;
    j["inputs"] = {{"zh", config.zh_path}, {"en", config.en_path}, {"code", config.code_path}};
    j["filter"] = {{"components", config.filter_components},
                   {"privacy", config.filter.privacy},
                   {"clean", config.filter.clean},
                   {"language", config.filter.language},
                   {"lang_threshold", config.filter.lang_threshold}};
    j["dedup"] = {{"max_run", config.max_run},
                  {"windows", config.windows},
                  {"text_components", config.text_components}};
    j["mix"] = {{"shares",
                 {{"zh", config.shares.zh}, {"en", config.shares.en}, {"code", config.shares.code}}},
                {"token_budget", config.token_budget}};
    json partition = json::object();
    for (const auto& [stage, budget] : config.partition_budgets)
        partition[std::string(stage_name(stage))] = budget;
    j["partition"] = partition;
    j["denoise"] = {{"weights",
                     {{"r", config.weights.r}, {"s", config.weights.s}, {"x", config.weights.x}}},
                    {"sigma_factor", config.sigma_factor}};
    json stages = json::object();
    for (const auto& [stage, cfg] : config.stages)
        stages[std::string(stage_name(stage))] = stage_to_json(cfg);
    j["stages"] = stages;
    j["flan"] = {{"en", config.flan_en_path},
                 {"zh", config.flan_zh_path},
                 {"zh_share", config.zh_share}};
    return j;
}

PipelineConfig config_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: root must be an object");
    check_keys(j,
               {"seed", "workers", "out_dir", "inputs", "filter", "dedup", "mix", "partition",
                "denoise", "stages", "flan"},
               "root");
    PipelineConfig config;
    if (j.contains("seed")) config.seed = j.at("seed").get<uint64_t>();
    if (j.contains("workers")) config.workers = j.at("workers").get<int>();
    if (j.contains("out_dir")) config.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("inputs")) {
        const json& in = j.at("inputs");
        check_keys(in, {"zh", "en", "code"}, "inputs");
        if (in.contains("zh")) config.zh_path = in.at("zh").get<std::string>();
        if (in.contains("en")) config.en_path = in.at("en").get<std::string>();
        if (in.contains("code")) config.code_path = in.at("code").get<std::string>();
    }
    if (j.contains("filter")) {
        const json& f = j.at("filter");
        check_keys(f, {"components", "privacy", "clean", "language", "lang_threshold"}, "filter");
        if (f.contains("components"))
            config.filter_components = f.at("components").get<std::vector<std::string>>();
        if (f.contains("privacy")) config.filter.privacy = f.at("privacy").get<bool>();
        if (f.contains("clean")) config.filter.clean = f.at("clean").get<bool>();
        if (f.contains("language")) config.filter.language = f.at("language").get<bool>();
        if (f.contains("lang_threshold"))
            config.filter.lang_threshold = f.at("lang_threshold").get<double>();
    }
    if (j.contains("dedup")) {
        const json& d = j.at("dedup");
        check_keys(d, {"max_run", "windows", "text_components"}, "dedup");
        if (d.contains("max_run")) config.max_run = d.at("max_run").get<int>();
        if (d.contains("windows")) config.windows = windows_from_json(d.at("windows"));
        if (d.contains("text_components"))
            config.text_components = d.at("text_components").get<std::vector<std::string>>();
    }
    if (j.contains("mix")) {
        const json& m = j.at("mix");
        check_keys(m, {"shares", "token_budget"}, "mix");
        if (m.contains("shares")) {
            const json& s = m.at("shares");
            check_keys(s, {"zh", "en", "code"}, "mix.shares");
            if (s.contains("zh")) config.shares.zh = s.at("zh").get<double>();
            if (s.contains("en")) config.shares.en = s.at("en").get<double>();
            if (s.contains("code")) config.shares.code = s.at("code").get<double>();
        }
        if (m.contains("token_budget")) config.token_budget = m.at("token_budget").get<int64_t>();
    }
    if (j.contains("partition")) {
        const json& p = j.at("partition");
        if (!p.is_object()) throw std::invalid_argument("config: partition must be an object");
        config.partition_budgets.clear();
        for (const auto& [k, v] : p.items()) {
            auto stage = stage_from(k);
            if (!stage)
                throw std::invalid_argument("config: partition names unknown stage \"" + k + "\"");
            config.partition_budgets[*stage] = v.get<int64_t>();
        }
    }
    if (j.contains("denoise")) {
        const json& d = j.at("denoise");
        check_keys(d, {"weights", "sigma_factor"}, "denoise");
        if (d.contains("weights")) {
            const json& w = d.at("weights");
            check_keys(w, {"r", "s", "x"}, "denoise.weights");
            if (w.contains("r")) config.weights.r = w.at("r").get<double>();
            if (w.contains("s")) config.weights.s = w.at("s").get<double>();
            if (w.contains("x")) config.weights.x = w.at("x").get<double>();
        }
        if (d.contains("sigma_factor")) config.sigma_factor = d.at("sigma_factor").get<double>();
    }
    if (j.contains("stages")) {
        const json& st = j.at("stages");
        if (!st.is_object()) throw std::invalid_argument("config: stages must be an object");
        for (const auto& [k, v] : st.items()) {
            auto stage = stage_from(k);
            if (!stage)
                throw std::invalid_argument("config: stages names unknown stage \"" + k + "\"");
            StageConfig& cfg = config.stages.at(*stage);
            stage_from_json(v, cfg, "stages." + k);
        }
    }
    if (j.contains("flan")) {
        const json& f = j.at("flan");
        check_keys(f, {"en", "zh", "zh_share"}, "flan");
        if (f.contains("en")) config.flan_en_path = f.at("en").get<std::string>();
        if (f.contains("zh")) config.flan_zh_path = f.at("zh").get<std::string>();
        if (f.contains("zh_share")) config.zh_share = f.at("zh_share").get<double>();
    }
    validate(config);
    return config;
}

PipelineConfig load_pipeline_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw std::invalid_argument("config: cannot read " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    json j;
    try {
        j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    return config_from_json(j);
}

// ---- run ----

namespace {

struct Components {
    std::vector<Document> zh, en, code;

    std::vector<Document>& by_name(const std::string& name) {
        if (name == "zh") return zh;
        if (name == "en") return en;
        return code;
    }
};

}  // namespace

size_t write_instances(const std::vector<CorruptedInstance>& instances, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) throw std::runtime_error("cannot write " + path);
    for (const CorruptedInstance& inst : instances) out << instance_to_json(inst).dump() << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
    return instances.size();
}

std::vector<CorruptedInstance> read_instances(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw std::runtime_error("cannot read " + path);
    std::vector<CorruptedInstance> instances;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            instances.push_back(instance_from_json(json::parse(line)));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return instances;
}

json run_pipeline(const PipelineConfig& config) {
    validate(config);
    auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(config.out_dir);
    auto out_path = [&](const std::string& name) { return config.out_dir + "/" + name; };

    TokenizerHandle tok = default_tokenizer();
    json manifest;
    manifest["config_hash"] = hex128(murmur3_128(config_to_json(config).dump()));
    manifest["seed"] = config.seed;
    manifest["workers"] = config.workers;
    manifest["config"] = config_to_json(config);
    manifest["inputs"] = json::array();
    manifest["stages"] = json::object();
    manifest["outputs"] = json::array();

    auto finish = [&](const char* failed_stage, const char* error) {
        if (failed_stage) {
            manifest["failed_stage"] = failed_stage;
            manifest["error"] = error;
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        manifest["wall_clock_ms"] = int64_t(ms);
        write_json_file(manifest, out_path("manifest.json"));
    };

    const char* current = "read";
    try {
        // read
        Components comps;
        {
            json report = json::object();
            const std::pair<const char*, const std::string*> inputs[] = {
                {"zh", &config.zh_path}, {"en", &config.en_path}, {"code", &config.code_path}};
            for (auto [name, path] : inputs) {
                std::vector<LineError> errors;
                comps.by_name(name) = read_jsonl(*path, 0.001, &errors);
                manifest["inputs"].push_back(file_entry(name, *path));
                report[std::string(name) + "_docs"] = comps.by_name(name).size();
                report[std::string(name) + "_bad_lines"] = errors.size();
            }
            manifest["stages"]["read"] = report;
        }

        // filter
        current = "filter";
        uint64_t filter_removed = 0;
        {
            json report = json::object();
            FilterOptions opts = config.filter;
            opts.workers = config.workers;
            for (const std::string& name : config.filter_components) {
                FilterReport fr;
                comps.by_name(name) = filter_documents(std::move(comps.by_name(name)), opts, fr);
                filter_removed += fr.docs_in - fr.docs_out;
                report[name] = fr.to_json();
            }
            manifest["stages"]["filter"] = report;
        }

        // dedup: run collapse (prose only) -> whole documents (all components,
        // one shared store) -> paragraph windows (prose only)
        current = "dedup";
        uint64_t docs_removed = 0, windows_removed = 0;
        HashStore doc_store, window_store;
        {
            for (const std::string& name : config.text_components)
                for (Document& doc : comps.by_name(name))
                    doc.text = collapse_char_runs(doc.text, config.max_run);

            std::vector<Document> all;
            for (const std::string& name : kComponentNames) {
                auto& stream = comps.by_name(name);
                all.insert(all.end(), std::make_move_iterator(stream.begin()),
                           std::make_move_iterator(stream.end()));
                stream.clear();
            }
            all = dedup_documents(std::move(all), doc_store, docs_removed, config.workers);
            for (Document& doc : all) {
                // split back by detected language; code never re-labels
                Lang lang = doc.lang == Lang::code ? Lang::code
                            : doc.lang == Lang::zh ? Lang::zh
                                                   : Lang::en;
                comps.by_name(std::string(lang_name(lang))).push_back(std::move(doc));
            }

            for (const std::string& name : config.text_components)
                comps.by_name(name) = dedup_paragraphs(std::move(comps.by_name(name)),
                                                       config.windows, window_store,
                                                       windows_removed, config.workers);

            doc_store.save(out_path("dedup_docs.store"));
            window_store.save(out_path("dedup_windows.store"));
            json report = json::object();
            report["documents_removed"] = docs_removed;
            report["windows_removed"] = windows_removed;
            report["document_fingerprints"] = doc_store.count();
            report["window_fingerprints"] = window_store.count();
            for (const std::string& name : kComponentNames) {
                size_t count = write_jsonl(comps.by_name(name), out_path("corpus_" + name + ".jsonl"));
                report["clean_" + name + "_docs"] = count;
            }
            manifest["stages"]["dedup"] = report;
            for (const std::string& name : kComponentNames)
                manifest["outputs"].push_back(
                    file_entry("corpus_" + name, out_path("corpus_" + name + ".jsonl"),
                               {{"records", comps.by_name(name).size()}}));
            manifest["outputs"].push_back(file_entry("dedup_docs.store", out_path("dedup_docs.store")));
            manifest["outputs"].push_back(
                file_entry("dedup_windows.store", out_path("dedup_windows.store")));
        }

        // stats over the cleaned corpus
        current = "stats";
        {
            std::vector<Document> all;
            for (const std::string& name : kComponentNames)
                all.insert(all.end(), comps.by_name(name).begin(), comps.by_name(name).end());
            CorpusStats stats = corpus_stats(all, tok, config.workers);
            stats.filter_removed = filter_removed;
            stats.dedup_docs_removed = docs_removed;
            stats.dedup_windows_removed = windows_removed;
            json sj = stats_to_json(stats);
            write_json_file(sj, out_path("stats.json"));
            manifest["stages"]["stats"] = sj;
            manifest["outputs"].push_back(file_entry("stats", out_path("stats.json")));
        }

        // mix
        current = "mix";
        std::vector<Document> mixed;
        {
            MixturePlan plan = plan_mixture(config.shares, config.token_budget);
            mixed = sample_mixture(std::move(comps.zh), std::move(comps.en), std::move(comps.code),
                                   plan, tok, config.seed);
            int64_t mixed_tokens = 0;
            for (const Document& doc : mixed) mixed_tokens += token_count(doc, *tok);
            size_t count = write_jsonl(mixed, out_path("mixed.jsonl"));
            json report = json::object();
            report["plan"] = {{"budget", plan.budget},
                              {"zh_tokens", plan.zh_tokens},
                              {"en_tokens", plan.en_tokens},
                              {"code_tokens", plan.code_tokens}};
            report["docs"] = count;
            report["tokens"] = mixed_tokens;
            manifest["stages"]["mix"] = report;
            manifest["outputs"].push_back(
                file_entry("mixed", out_path("mixed.jsonl"), {{"records", count}}));
        }

        // partition
        current = "partition";
        std::map<Stage, std::vector<Document>> parts;
        {
            parts = partition_stages(mixed, config.partition_budgets, tok);
            json report = json::object();
            for (const auto& [stage, docs] : parts) {
                int64_t tokens = 0;
                for (const Document& doc : docs) tokens += token_count(doc, *tok);
                std::string name(stage_name(stage));
                size_t count = write_jsonl(docs, out_path("stage_" + name + ".docs.jsonl"));
                report[name] = {{"docs", count}, {"tokens", tokens}};
                manifest["outputs"].push_back(file_entry("stage_" + name + ".docs",
                                                         out_path("stage_" + name + ".docs.jsonl"),
                                                         {{"records", count}}));
            }
            manifest["stages"]["partition"] = report;
        }

        // denoise
        current = "denoise";
        {
            json report = json::object();
            for (const auto& [stage, docs] : parts) {
                uint64_t skipped = 0;
                auto instances =
                    build_corpus_instances(docs, config.stages.at(stage), config.weights, tok,
                                           config.seed, skipped, config.workers);
                std::string name(stage_name(stage));
                size_t count = write_instances(instances, out_path("stage_" + name + ".jsonl"));
                report[name] = {{"instances", count}, {"chunks_skipped", skipped}};
                manifest["outputs"].push_back(file_entry(
                    "stage_" + name, out_path("stage_" + name + ".jsonl"), {{"records", count}}));
            }
            manifest["stages"]["denoise"] = report;
        }

        // flan (stage III)
        if (!config.flan_en_path.empty()) {
            current = "flan";
            auto en = read_flan_jsonl(config.flan_en_path, Lang::en);
            auto zh = read_flan_jsonl(config.flan_zh_path, Lang::zh);
            manifest["inputs"].push_back(file_entry("flan_en", config.flan_en_path));
            manifest["inputs"].push_back(file_entry("flan_zh", config.flan_zh_path));
            BiflanStats stats;
            auto examples = build_biflan(en, zh, config.zh_share, config.stages.at(Stage::III), tok,
                                         config.seed, &stats);
            std::vector<CorruptedInstance> instances;
            instances.reserve(examples.size());
            for (const Seq2SeqExample& ex : examples)
                instances.push_back(seq2seq_to_instance(ex, *tok));
            size_t count = write_instances(instances, out_path("stage_III.jsonl"));
            json report = json::object();
            report["en_in"] = stats.en_in;
            report["zh_in"] = stats.zh_in;
            report["en_dropped"] = stats.en_dropped;
            report["zh_dropped"] = stats.zh_dropped;
            report["dropped_encoder"] = stats.dropped_encoder;
            report["dropped_decoder"] = stats.dropped_decoder;
            report["zh_epochs"] = stats.zh_epochs;
            report["emitted_en"] = stats.emitted_en;
            report["emitted_zh"] = stats.emitted_zh;
            report["instances"] = count;
            manifest["stages"]["flan"] = report;
            manifest["outputs"].push_back(
                file_entry("stage_III", out_path("stage_III.jsonl"), {{"records", count}}));
        }
    } catch (const std::exception& e) {
        finish(current, e.what());
        throw;
    }

    finish(nullptr, nullptr);
    return manifest;
}

}  // namespace ulpipe
