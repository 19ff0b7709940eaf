#include "ulpipe/flan.hpp"

#include <fstream>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "ulpipe/rng.hpp"

namespace ulpipe {

// ---- task registry ----

const std::vector<TaskType>& chinese_task_registry() {
    static const std::vector<TaskType> kTasks = {
        {"Question Answering", "问答"},
        {"Text Classification", "文本分类"},
        {"Sentiment Classification", "情感分类"},
        {"Named Entity Recognition", "命名实体识别"},
        {"Text Matching", "文本匹配"},
        {"Text Summarization", "文本摘要"},
        {"Reading Comprehension", "阅读理解"},
        {"Question Generation", "问题生成"},
        {"Dialogue", "对话"},
        {"Machine Translation", "机器翻译"},
        {"Cloze Test", "完形填空"},
        {"Text Generation", "文本生成"},
        {"Semantic Analysis", "语义分析"},
        {"Relation Extraction", "关系抽取"},
        {"Grammatical Error Correction", "语法纠错"},
        {"Fact-checking", "事实核查"},
        {"Interpretable Evaluation", "可解释性评估"},
        {"Event Extraction", "事件抽取"},
    };
    return kTasks;
}

bool is_registered_task(std::string_view label) {
    for (const TaskType& t : chinese_task_registry())
        if (label == t.en || label == t.zh) return true;
    return false;
}

// ---- records ----

void validate_record(const FlanRecord& rec) {
    if (rec.instruction.empty()) throw std::invalid_argument("flan record: instruction must be non-empty");
    if (rec.output.empty()) throw std::invalid_argument("flan record: output must be non-empty");
    if (rec.lang != Lang::zh && rec.lang != Lang::en)
        throw std::invalid_argument("flan record: lang must be zh or en");
    if (rec.lang == Lang::zh && !is_registered_task(rec.task))
        throw std::invalid_argument("flan record: task \"" + rec.task +
                                    "\" is not in the Chinese task registry");
}

json flan_to_json(const FlanRecord& rec) {
    json j;
    j["instruction"] = rec.instruction;
    j["input"] = rec.input;
    j["output"] = rec.output;
    j["domain"] = rec.domain;
    j["task"] = rec.task;
    j["lang"] = std::string(lang_name(rec.lang));
    return j;
}

namespace {

std::string require_string(const json& j, const std::string& key, const std::string& context) {
    auto it = j.find(key);
    if (it == j.end()) throw std::runtime_error(context + ": missing field " + key);
    if (!it->is_string()) throw std::runtime_error(context + ": field " + key + " must be a string");
    return it->get<std::string>();
}

std::string optional_string(const json& j, const std::string& key, const std::string& context) {
    auto it = j.find(key);
    if (it == j.end()) return "";
    if (!it->is_string()) throw std::runtime_error(context + ": field " + key + " must be a string");
    return it->get<std::string>();
}

}  // namespace

FlanRecord flan_from_json(const json& j, Lang default_lang) {
    if (!j.is_object()) throw std::runtime_error("flan record: not an object");
    FlanRecord rec;
    rec.instruction = require_string(j, "instruction", "flan record");
    rec.input = optional_string(j, "input", "flan record");
    rec.output = require_string(j, "output", "flan record");
    rec.domain = optional_string(j, "domain", "flan record");
    rec.task = optional_string(j, "task", "flan record");
    rec.lang = default_lang;
    if (auto it = j.find("lang"); it != j.end()) {
        if (!it->is_string()) throw std::runtime_error("flan record: field lang must be a string");
        auto lang = lang_from(it->get<std::string>());
        if (!lang) throw std::runtime_error("flan record: unknown lang \"" + it->get<std::string>() + "\"");
        rec.lang = *lang;
    }
    validate_record(rec);
    return rec;
}

std::vector<FlanRecord> read_flan_jsonl(const std::string& path, Lang default_lang) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw std::runtime_error("cannot read " + path);
    std::vector<FlanRecord> recs;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            recs.push_back(flan_from_json(json::parse(line), default_lang));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return recs;
}

size_t write_flan_jsonl(const std::vector<FlanRecord>& recs, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) throw std::runtime_error("cannot write " + path);
    for (const FlanRecord& rec : recs) out << flan_to_json(rec).dump() << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
    return recs.size();
}

TaskTemplate translation_template() {
    return TaskTemplate{
        "机器翻译", "多领域", "请将输入的英语句子翻译成中文", "en", "zh",
    };
}

FlanRecord normalize_record(const json& raw, const TaskTemplate& tpl, Lang lang) {
    if (!raw.is_object())
        throw std::runtime_error("task " + tpl.task + ": raw record is not an object");
    const std::string context = "task " + tpl.task;
    FlanRecord rec;
    rec.lang = lang;
    if (raw.contains("instruction") && raw.contains("output")) {
        // Already unified: pass through, filling omitted labels from the template.
        rec.instruction = require_string(raw, "instruction", context);
        rec.input = optional_string(raw, "input", context);
        rec.output = require_string(raw, "output", context);
        rec.domain = raw.contains("domain") ? require_string(raw, "domain", context) : tpl.domain;
        rec.task = raw.contains("task") ? require_string(raw, "task", context) : tpl.task;
        if (auto it = raw.find("lang"); it != raw.end()) {
            auto parsed = lang_from(require_string(raw, "lang", context));
            if (!parsed) throw std::runtime_error(context + ": unknown lang");
            rec.lang = *parsed;
        }
    } else {
        rec.instruction = tpl.instruction;
        rec.domain = tpl.domain;
        rec.task = tpl.task;
        if (!tpl.input_field.empty()) rec.input = require_string(raw, tpl.input_field, context);
        rec.output = require_string(raw, tpl.output_field, context);
    }
    validate_record(rec);
    return rec;
}

// ---- rendering ----

Seq2SeqExample render_example(const FlanRecord& rec, const Tokenizer& tok) {
    Seq2SeqExample ex;
    ex.source_text = rec.input.empty() ? rec.instruction : rec.instruction + "\n" + rec.input;
    ex.target_text = rec.output;
    ex.encoder_token_count = static_cast<int64_t>(tok.encode(ex.source_text).size());
    ex.decoder_token_count = static_cast<int64_t>(tok.encode(ex.target_text).size());
    return ex;
}

json example_to_json(const Seq2SeqExample& ex) {
    json j;
    j["source_text"] = ex.source_text;
    j["target_text"] = ex.target_text;
    j["encoder_token_count"] = ex.encoder_token_count;
    j["decoder_token_count"] = ex.decoder_token_count;
    return j;
}

Seq2SeqExample example_from_json(const json& j) {
    if (!j.is_object()) throw std::runtime_error("seq2seq example: not an object");
    Seq2SeqExample ex;
    ex.source_text = require_string(j, "source_text", "seq2seq example");
    ex.target_text = require_string(j, "target_text", "seq2seq example");
    for (auto [key, dst] : {std::pair<const char*, int64_t*>{"encoder_token_count", &ex.encoder_token_count},
                            {"decoder_token_count", &ex.decoder_token_count}}) {
        auto it = j.find(key);
        if (it == j.end()) throw std::runtime_error(std::string("seq2seq example: missing field ") + key);
        if (!it->is_number_integer() || it->get<int64_t>() < 0)
            throw std::runtime_error(std::string("seq2seq example: field ") + key +
                                     " must be a non-negative integer");
        *dst = it->get<int64_t>();
    }
    return ex;
}

CorruptedInstance seq2seq_to_instance(const Seq2SeqExample& ex, const Tokenizer& tok) {
    CorruptedInstance inst;
    inst.paradigm = "<S>";
    inst.encoder_ids = tok.encode(ex.source_text);
    TokenSeq target = tok.encode(ex.target_text);
    inst.decoder_ids.ids.reserve(target.size() + 2);
    inst.decoder_ids.ids.push_back(Specials::paradigm_s);
    inst.decoder_ids.ids.insert(inst.decoder_ids.ids.end(), target.ids.begin(), target.ids.end());
    inst.decoder_ids.ids.push_back(Specials::eos);
    return inst;
}

// ---- combination ----

std::vector<Seq2SeqExample> build_biflan(const std::vector<FlanRecord>& en,
                                         const std::vector<FlanRecord>& zh, double zh_share,
                                         const StageConfig& stage, const TokenizerHandle& tok,
                                         uint64_t seed, BiflanStats* stats) {
    if (!tok) throw std::invalid_argument("build_biflan: null tokenizer");
    if (!(zh_share >= 0.0 && zh_share < 1.0))
        throw std::invalid_argument("build_biflan: zh share must be in [0,1)");
    validate(stage);

    BiflanStats local;
    BiflanStats& st = stats ? *stats : local;
    st = BiflanStats{};
    st.en_in = en.size();
    st.zh_in = zh.size();

    auto render_pool = [&](const std::vector<FlanRecord>& recs, uint64_t& dropped) {
        std::vector<Seq2SeqExample> pool;
        pool.reserve(recs.size());
        for (const FlanRecord& rec : recs) {
            Seq2SeqExample ex = render_example(rec, *tok);
            if (ex.encoder_token_count > stage.encoder_len) {
                ++dropped, ++st.dropped_encoder;
            } else if (ex.decoder_token_count + 2 > stage.decoder_len) {
                ++dropped, ++st.dropped_decoder;
            } else {
                pool.push_back(std::move(ex));
            }
        }
        return pool;
    };
    std::vector<Seq2SeqExample> en_pool = render_pool(en, st.en_dropped);
    std::vector<Seq2SeqExample> zh_pool = render_pool(zh, st.zh_dropped);

    if (en_pool.empty())
        throw std::runtime_error("build_biflan: en stream has no usable examples but its share is > 0");
    if (zh_share > 0.0 && zh_pool.empty())
        throw std::runtime_error("build_biflan: zh stream has no usable examples but its share is > 0");

    Rng en_rng(derive_seed(seed, "flan/en"));
    en_rng.shuffle(en_pool);

    std::vector<size_t> zh_order;
    size_t zh_cursor = 0;
    auto next_zh = [&]() -> const Seq2SeqExample& {
        if (zh_cursor == zh_order.size()) {
            zh_order.resize(zh_pool.size());
            std::iota(zh_order.begin(), zh_order.end(), size_t{0});
            Rng rng(derive_seed(seed, "flan/zh-epoch/" + std::to_string(st.zh_epochs)));
            rng.shuffle(zh_order);
            ++st.zh_epochs;
            zh_cursor = 0;
        }
        return zh_pool[zh_order[zh_cursor++]];
    };

    std::vector<Seq2SeqExample> out;
    out.reserve(static_cast<size_t>(double(en_pool.size()) / (1.0 - zh_share)) + 4);
    size_t en_cursor = 0;
    while (en_cursor < en_pool.size()) {
        uint64_t total = st.emitted_en + st.emitted_zh;
        if (double(st.emitted_zh) < zh_share * double(total + 1)) {
            out.push_back(next_zh());
            ++st.emitted_zh;
        } else {
            out.push_back(std::move(en_pool[en_cursor++]));
            ++st.emitted_en;
        }
    }
    return out;
}

}  // namespace ulpipe
