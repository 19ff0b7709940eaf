#pragma once
// Bilingual instruction-tuning dataset: unified record shape, template
// normalization, rendering to seq2seq examples, length filtering, and the
// two-thirds/one-third interleaving.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ulpipe/corpus.hpp"
#include "ulpipe/denoiser.hpp"
#include "ulpipe/mixer.hpp"

namespace ulpipe {

// Unified instruction record. Serialized keys are exactly:
// instruction, input, output, domain, task, lang.
struct FlanRecord {
    std::string instruction;
    std::string input;
    std::string output;
    std::string domain;
    std::string task;
    Lang lang = Lang::zh;  // zh or en only

    bool operator==(const FlanRecord&) const = default;
};

// The 18 Chinese instruction task types, each with its English and Chinese
// label. A copy ships as data/chinese_flan_tasks.json.
struct TaskType {
    std::string_view en;
    std::string_view zh;
};
const std::vector<TaskType>& chinese_task_registry();
bool is_registered_task(std::string_view label);  // matches either language's label

// instruction and output non-empty; lang zh/en; zh tasks must be registered.
void validate_record(const FlanRecord& rec);

json flan_to_json(const FlanRecord& rec);
FlanRecord flan_from_json(const json& j, Lang default_lang = Lang::zh);  // throws on bad shape

// Line-delimited record files. Reading validates every record and reports the
// first bad line by number; writing emits one compact JSON object per line.
std::vector<FlanRecord> read_flan_jsonl(const std::string& path, Lang default_lang = Lang::zh);
size_t write_flan_jsonl(const std::vector<FlanRecord>& recs, const std::string& path);

// How one raw source maps into the unified shape.
struct TaskTemplate {
    std::string task;
    std::string domain;
    std::string instruction;
    std::string input_field;   // raw key for input; empty -> no input
    std::string output_field;  // raw key for output
};

// The attested translation template (English sentence -> Chinese).
TaskTemplate translation_template();

// Raw already in unified shape passes through unchanged (idempotent);
// otherwise fields are pulled through the template. A missing source field
// raises an error naming the field and the task.
FlanRecord normalize_record(const json& raw, const TaskTemplate& tpl, Lang lang = Lang::zh);

struct Seq2SeqExample {
    std::string source_text;  // instruction, newline, input (or instruction alone)
    std::string target_text;
    int64_t encoder_token_count = 0;
    int64_t decoder_token_count = 0;

    bool operator==(const Seq2SeqExample&) const = default;
};

Seq2SeqExample render_example(const FlanRecord& rec, const Tokenizer& tok);

json example_to_json(const Seq2SeqExample& ex);
Seq2SeqExample example_from_json(const json& j);  // throws on bad shape

// Serialized training instance for the generation stage: encoder carries the
// source tokens; the decoder side opens with the generation marker before the
// target and closes with end-of-sequence.
CorruptedInstance seq2seq_to_instance(const Seq2SeqExample& ex, const Tokenizer& tok);

struct BiflanStats {
    uint64_t en_in = 0, zh_in = 0;
    uint64_t en_dropped = 0, zh_dropped = 0;            // per stream, over the caps
    uint64_t dropped_encoder = 0, dropped_decoder = 0;  // same drops, by which cap
    uint64_t zh_epochs = 0;                             // shuffled passes over the zh pool begun
    uint64_t emitted_en = 0, emitted_zh = 0;
};

// Renders and filters both pools, then interleaves so the realized zh share
// tracks zh_share at every prefix. English examples never repeat; the stream
// ends when they are exhausted; zh examples repeat in shuffled epochs when
// scarce. Overlong examples are dropped, never cut: encoder side at
// encoder_len, decoder side at decoder_len minus the two slots the serialized
// form spends on the generation marker and end-of-sequence.
std::vector<Seq2SeqExample> build_biflan(const std::vector<FlanRecord>& en,
                                         const std::vector<FlanRecord>& zh, double zh_share,
                                         const StageConfig& stage, const TokenizerHandle& tok,
                                         uint64_t seed, BiflanStats* stats = nullptr);

}  // namespace ulpipe
