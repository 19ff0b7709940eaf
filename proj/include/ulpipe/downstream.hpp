#pragma once
// Fine-tuning dataset formatters: dialogue history unrolling, code-aware
// tokenizer augmentation, instruction reversal, and tool-call rendering.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ulpipe/corpus.hpp"

namespace ulpipe {

// ---- dialogue ----

struct Conversation {
    // (human utterance, assistant utterance) per turn; T >= 1, all non-empty.
    std::vector<std::pair<std::string, std::string>> turns;

    bool operator==(const Conversation&) const = default;
};

void validate(const Conversation& conv);

json conversation_to_json(const Conversation& conv);
Conversation conversation_from_json(const json& j);  // throws on bad shape

struct TrainPair {
    std::string input_text;
    std::string target_text;

    bool operator==(const TrainPair&) const = default;
};

json train_pair_to_json(const TrainPair& pair);  // keys input, target
TrainPair train_pair_from_json(const json& j);

// One training pair per turn: pair t's input is the full history
// "Human: {H1} Assistant: {A1} ... Human: {Ht} Assistant:" and its target the
// t-th assistant reply. Segments are joined by single spaces.
std::vector<TrainPair> unroll_dialogue(const Conversation& conv);

// Full transcript "Human: {H1} Assistant: {A1} ..." — what pair T's input and
// target concatenate to.
std::string render_dialogue(const Conversation& conv);

// Inverse of render_dialogue for utterances free of the two markers.
Conversation parse_dialogue(std::string_view transcript);  // throws on malformed

const std::vector<std::string>& default_identity_patterns();  // "I am ChatGPT" + zh equivalent

// Keep/drop verdict: drops conversations whose total codepoint length is
// below min_len or that mention a model identity pattern. true = keep.
bool filter_dialogue(const Conversation& conv, int min_len = 20,
                     const std::vector<std::string>& identity_patterns = default_identity_patterns());

// ---- code tokenizer augmentation ----

// Wraps a tokenizer so '\t', '\n' and runs of 2..max_space_run spaces map to
// dedicated special ids (longer runs decompose greedily); everything else
// delegates to the wrapped tokenizer. Round-trips indentation exactly.
TokenizerHandle augment_code_tokens(const TokenizerHandle& tok,
                                    int max_space_run = Specials::space_run_max);

// ---- instruction reversal ----

// Swaps roles: the answer becomes the prompt (wrapped in the per-language
// request template), the original instruction becomes the target.
TrainPair reverse_instruction(std::string_view instruction, std::string_view answer, Lang lang);

// ---- tool calls ----

// Renders `WikiSearch("{query}") → {recalled}`; quotes and backslashes in the
// query are escaped. Empty recalled results mean the call failed: nullopt.
std::optional<std::string> format_tool_call(std::string_view query, std::string_view recalled);

struct ToolCall {
    std::string query;
    std::string recalled;

    bool operator==(const ToolCall&) const = default;
};

// Inverse of format_tool_call on its output.
ToolCall parse_tool_call(std::string_view text);  // throws on malformed

}  // namespace ulpipe
