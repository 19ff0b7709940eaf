#pragma once
// End-to-end orchestration: read -> filter -> dedup -> mixture -> stage
// partition -> denoising instances (stages I/II) -> bilingual instruction
// instances (stage III) -> corpus stats -> run manifest. Every output byte is
// a function of (inputs, config); the worker count never changes results.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ulpipe/corpus.hpp"
#include "ulpipe/dedup.hpp"
#include "ulpipe/denoiser.hpp"
#include "ulpipe/filters.hpp"
#include "ulpipe/mixer.hpp"

namespace ulpipe {

struct PipelineConfig {
    uint64_t seed = 1;
    int workers = 1;
    std::string out_dir = "out";

    // component inputs, one line-delimited document file each
    std::string zh_path = "data/sample/zh.jsonl";
    std::string en_path = "data/sample/en.jsonl";
    std::string code_path = "data/sample/code.jsonl";

    // privacy scrubbing / cleaning / language id run on these components only;
    // the rest pass through (code would be shredded by sentence-level rules)
    std::vector<std::string> filter_components = {"zh"};
    FilterOptions filter;  // .workers is overridden with `workers` at run time

    // whole-document dedup always covers every component. Character-run
    // collapse and paragraph-window dedup are scoped to prose: sentence
    // segmentation fragments code at '.' into low-entropy pieces, and run
    // collapse would destroy indentation.
    int max_run = 3;
    std::vector<int> windows = kDefaultWindows;
    std::vector<std::string> text_components = {"zh", "en"};

    MixtureShares shares;
    int64_t token_budget = 60000;  // mixed-stream size for this run
    std::map<Stage, int64_t> partition_budgets = {{Stage::I, 50000}, {Stage::II, 6600}};

    DenoiseWeights weights;
    double sigma_factor = 0.25;
    std::map<Stage, StageConfig> stages = {
        {Stage::I, default_stage_config(Stage::I)},
        {Stage::II, default_stage_config(Stage::II)},
        {Stage::III, default_stage_config(Stage::III)},
    };

    // instruction streams for stage III; both set or both empty (stage skipped)
    std::string flan_en_path = "data/sample/flan_en.jsonl";
    std::string flan_zh_path = "data/sample/flan_zh.jsonl";
    double zh_share = 1.0 / 3;

    bool operator==(const PipelineConfig&) const = default;
};

// Defaults above point at the bundled sample corpus.
PipelineConfig default_pipeline_config();

void validate(const PipelineConfig& config);  // throws std::invalid_argument

json config_to_json(const PipelineConfig& config);
PipelineConfig config_from_json(const json& j);  // unknown keys are errors

// Reads a config file; // and /* */ comments are allowed. Keys omitted from
// the file keep their defaults.
PipelineConfig load_pipeline_config(const std::string& path);

// Line-delimited instance files: one {paradigm, encoder_ids, decoder_ids}
// object per line. Reading reports the first bad line by number.
size_t write_instances(const std::vector<CorruptedInstance>& instances, const std::string& path);
std::vector<CorruptedInstance> read_instances(const std::string& path);

// Runs every stage, writes the outputs and manifest.json under
// config.out_dir, and returns the manifest: config hash, inputs and outputs
// with content hashes, per-stage reports, seed, wall clock. If a stage
// throws, a partial manifest naming the failed stage is written first and the
// exception propagates.
json run_pipeline(const PipelineConfig& config);

}  // namespace ulpipe
