#include "ulpipe/downstream.hpp"

#include <algorithm>
#include <stdexcept>

#include "ulpipe/text.hpp"

namespace ulpipe {

// ---- dialogue ----

void validate(const Conversation& conv) {
    if (conv.turns.empty()) throw std::invalid_argument("conversation must have at least one turn");
    for (const auto& [human, assistant] : conv.turns) {
        if (human.empty() || assistant.empty())
            throw std::invalid_argument("conversation: every utterance must be non-empty");
    }
}

json conversation_to_json(const Conversation& conv) {
    json turns = json::array();
    for (const auto& [human, assistant] : conv.turns) {
        json turn;
        turn["human"] = human;
        turn["assistant"] = assistant;
        turns.push_back(std::move(turn));
    }
    json j;
    j["turns"] = std::move(turns);
    return j;
}

Conversation conversation_from_json(const json& j) {
    if (!j.is_object() || !j.contains("turns") || !j["turns"].is_array())
        throw std::runtime_error("conversation: expected an object with a turns array");
    Conversation conv;
    for (const json& turn : j["turns"]) {
        if (!turn.is_object() || !turn.contains("human") || !turn.contains("assistant") ||
            !turn["human"].is_string() || !turn["assistant"].is_string())
            throw std::runtime_error("conversation: each turn needs human and assistant strings");
        conv.turns.emplace_back(turn["human"].get<std::string>(),
                                turn["assistant"].get<std::string>());
    }
    validate(conv);
    return conv;
}

json train_pair_to_json(const TrainPair& pair) {
    json j;
    j["input"] = pair.input_text;
    j["target"] = pair.target_text;
    return j;
}

TrainPair train_pair_from_json(const json& j) {
    if (!j.is_object() || !j.contains("input") || !j.contains("target") ||
        !j["input"].is_string() || !j["target"].is_string())
        throw std::runtime_error("train pair: expected input and target strings");
    TrainPair pair{j["input"].get<std::string>(), j["target"].get<std::string>()};
    if (pair.input_text.empty() || pair.target_text.empty())
        throw std::runtime_error("train pair: input and target must be non-empty");
    return pair;
}

std::vector<TrainPair> unroll_dialogue(const Conversation& conv) {
    validate(conv);
    std::vector<TrainPair> pairs;
    pairs.reserve(conv.turns.size());
    std::string history;
    for (const auto& [human, assistant] : conv.turns) {
        if (!history.empty()) history += ' ';
        history += "Human: ";
        history += human;
        history += " Assistant:";
        pairs.push_back({history, assistant});
        history += ' ';
        history += assistant;
    }
    return pairs;
}

std::string render_dialogue(const Conversation& conv) {
    validate(conv);
    std::string out;
    for (const auto& [human, assistant] : conv.turns) {
        if (!out.empty()) out += ' ';
        out += "Human: ";
        out += human;
        out += " Assistant: ";
        out += assistant;
    }
    return out;
}

Conversation parse_dialogue(std::string_view transcript) {
    constexpr std::string_view kHuman = "Human: ";
    constexpr std::string_view kAssistant = " Assistant: ";
    constexpr std::string_view kNextHuman = " Human: ";

    if (transcript.substr(0, kHuman.size()) != kHuman)
        throw std::runtime_error("dialogue transcript must start with \"Human: \"");
    Conversation conv;
    size_t pos = kHuman.size();
    while (true) {
        size_t sep = transcript.find(kAssistant, pos);
        if (sep == std::string_view::npos)
            throw std::runtime_error("dialogue transcript: turn without \" Assistant: \"");
        std::string human(transcript.substr(pos, sep - pos));
        size_t reply = sep + kAssistant.size();
        size_t next = transcript.find(kNextHuman, reply);
        std::string assistant(next == std::string_view::npos
                                  ? transcript.substr(reply)
                                  : transcript.substr(reply, next - reply));
        conv.turns.emplace_back(std::move(human), std::move(assistant));
        if (next == std::string_view::npos) break;
        pos = next + kNextHuman.size();
    }
    validate(conv);
    return conv;
}

const std::vector<std::string>& default_identity_patterns() {
    static const std::vector<std::string> kPatterns = {"I am ChatGPT", "我是ChatGPT"};
    return kPatterns;
}

namespace {

size_t codepoint_count(std::string_view s) {
    size_t n = 0;
    for (size_t i = 0; i < s.size(); i += decode_cp(s, i).width) ++n;
    return n;
}

}  // namespace

bool filter_dialogue(const Conversation& conv, int min_len,
                     const std::vector<std::string>& identity_patterns) {
    size_t length = 0;
    for (const auto& [human, assistant] : conv.turns)
        length += codepoint_count(human) + codepoint_count(assistant);
    if (min_len > 0 && length < size_t(min_len)) return false;
    for (const auto& [human, assistant] : conv.turns) {
        for (const std::string& pattern : identity_patterns) {
            if (pattern.empty()) continue;
            if (human.find(pattern) != std::string::npos ||
                assistant.find(pattern) != std::string::npos)
                return false;
        }
    }
    return true;
}

// ---- code tokenizer augmentation ----

namespace {

class CodeAugmentedTokenizer : public Tokenizer {
public:
    CodeAugmentedTokenizer(TokenizerHandle inner, int max_run)
        : inner_(std::move(inner)), max_run_(max_run) {}

    TokenSeq encode(std::string_view text) const override {
        TokenSeq out;
        size_t i = 0;
        while (i < text.size()) {
            char c = text[i];
            if (c == '\t') {
                out.ids.push_back(Specials::tab);
                ++i;
            } else if (c == '\n') {
                out.ids.push_back(Specials::newline);
                ++i;
            } else if (c == ' ') {
                size_t j = i;
                while (j < text.size() && text[j] == ' ') ++j;
                size_t run = j - i;
                while (run >= 2) {
                    size_t take = std::min(run, size_t(max_run_));
                    out.ids.push_back(Specials::space_run_base + int64_t(take) - 2);
                    run -= take;
                }
                if (run == 1) append(out, inner_->encode(" "));
                i = j;
            } else {
                size_t j = i;
                while (j < text.size() && text[j] != '\t' && text[j] != '\n' && text[j] != ' ') ++j;
                append(out, inner_->encode(text.substr(i, j - i)));
                i = j;
            }
        }
        return out;
    }

    std::string decode(const TokenSeq& seq) const override {
        std::string out;
        TokenSeq pending;
        auto flush = [&] {
            if (!pending.empty()) {
                out += inner_->decode(pending);
                pending.ids.clear();
            }
        };
        for (int64_t id : seq.ids) {
            if (id == Specials::tab) {
                flush();
                out += '\t';
            } else if (id == Specials::newline) {
                flush();
                out += '\n';
            } else if (id >= Specials::space_run_base &&
                       id <= Specials::space_run_base + (Specials::space_run_max - 2)) {
                flush();
                out.append(size_t(id - Specials::space_run_base) + 2, ' ');
            } else {
                pending.ids.push_back(id);
            }
        }
        flush();
        return out;
    }

    int64_t vocab_size() const override { return inner_->vocab_size(); }

private:
    static void append(TokenSeq& out, const TokenSeq& part) {
        out.ids.insert(out.ids.end(), part.ids.begin(), part.ids.end());
    }

    TokenizerHandle inner_;
    int max_run_;
};

}  // namespace

TokenizerHandle augment_code_tokens(const TokenizerHandle& tok, int max_space_run) {
    if (!tok) throw std::invalid_argument("augment_code_tokens: null tokenizer");
    if (max_space_run < 2 || max_space_run > Specials::space_run_max)
        throw std::invalid_argument("augment_code_tokens: max space run must be in [2, 16]");
    return std::make_shared<CodeAugmentedTokenizer>(tok, max_space_run);
}

// ---- instruction reversal ----

TrainPair reverse_instruction(std::string_view instruction, std::string_view answer, Lang lang) {
    if (instruction.empty())
        throw std::invalid_argument("reverse_instruction: instruction must be non-empty");
    if (answer.empty()) throw std::invalid_argument("reverse_instruction: answer must be non-empty");
    TrainPair pair;
    if (lang == Lang::en) {
        pair.input_text = "Please generate the instruction according to the text I provide: ";
        pair.input_text += answer;
        pair.input_text += ".";
    } else if (lang == Lang::zh) {
        pair.input_text = "请你根据提供的文本生成对应的指令：";
        pair.input_text += answer;
        pair.input_text += "。";
    } else {
        throw std::invalid_argument("reverse_instruction: lang must be zh or en");
    }
    pair.target_text = instruction;
    return pair;
}

// ---- tool calls ----

std::optional<std::string> format_tool_call(std::string_view query, std::string_view recalled) {
    if (query.empty()) throw std::invalid_argument("format_tool_call: query must be non-empty");
    if (recalled.empty()) return std::nullopt;  // failed call: dropped
    std::string out = "WikiSearch(\"";
    for (char c : query) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += "\") → ";
    out += recalled;
    return out;
}

ToolCall parse_tool_call(std::string_view text) {
    constexpr std::string_view kPrefix = "WikiSearch(\"";
    constexpr std::string_view kArrow = "\") → ";

    if (text.substr(0, kPrefix.size()) != kPrefix)
        throw std::runtime_error("tool call must start with WikiSearch(\"");
    ToolCall call;
    size_t i = kPrefix.size();
    while (true) {
        if (i >= text.size()) throw std::runtime_error("tool call: unterminated query");
        char c = text[i];
        if (c == '\\') {
            if (i + 1 >= text.size()) throw std::runtime_error("tool call: dangling escape");
            call.query += text[i + 1];
            i += 2;
        } else if (c == '"') {
            break;  // i sits on the closing quote, where kArrow begins
        } else {
            call.query += c;
            ++i;
        }
    }
    if (text.substr(i, kArrow.size()) != kArrow)
        throw std::runtime_error("tool call: missing \") → \" delimiter");
    call.recalled = std::string(text.substr(i + kArrow.size()));
    if (call.query.empty()) throw std::runtime_error("tool call: empty query");
    if (call.recalled.empty()) throw std::runtime_error("tool call: empty recalled results");
    return call;
}

}  // namespace ulpipe
