#pragma once
// Document data model, tokenizer abstraction, and line-delimited record I/O.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "ulpipe/text.hpp"

namespace ulpipe {

using json = nlohmann::ordered_json;

// ---- documents ----

enum class Lang { zh, en, code, unknown };

std::string_view lang_name(Lang lang);
std::optional<Lang> lang_from(std::string_view name);

struct Document {
    std::string id;        // non-empty, unique within a stream
    std::string text;
    Lang lang = Lang::unknown;
    std::string source;
    json meta;             // extra fields; null when absent

    bool operator==(const Document&) const = default;
};

json doc_to_json(const Document& doc);

// ---- token sequences ----

struct TokenSeq {
    std::vector<int64_t> ids;

    size_t size() const { return ids.size(); }
    bool empty() const { return ids.empty(); }
    bool operator==(const TokenSeq&) const = default;
};

// Reserved low-id band for special tokens; ordinary text ids start at
// `reserved` so the two ranges can never collide.
struct Specials {
    static constexpr int64_t pad = 0;
    static constexpr int64_t eos = 1;
    static constexpr int64_t paradigm_r = 3;
    static constexpr int64_t paradigm_s = 4;
    static constexpr int64_t paradigm_x = 5;
    static constexpr int64_t tab = 6;            // code-mode whitespace tokens
    static constexpr int64_t newline = 7;
    static constexpr int64_t space_run_base = 8; // width w in [2,16] -> id 8+w-2
    static constexpr int64_t space_run_max = 16;
    static constexpr int64_t mask_base = 64;     // <mask_i> -> 64+i
    static constexpr int64_t mask_count = 256;
    static constexpr int64_t reserved = 512;

    static int64_t mask_id(int i);
    static bool is_mask(int64_t id) { return id >= mask_base && id < mask_base + mask_count; }
    static bool is_special(int64_t id) { return id < reserved; }
    // "<R>" / "<S>" / "<X>" -> paradigm id
    static int64_t paradigm_id(std::string_view sentinel);
    static std::string_view paradigm_name(int64_t id);
    // printable form of any special id ("<eos>", "<mask_3>", ...)
    static std::string special_name(int64_t id);
};

class Tokenizer {
public:
    virtual ~Tokenizer() = default;
    virtual TokenSeq encode(std::string_view text) const = 0;
    // Inverse of encode for ids this process has produced; special ids decode
    // to their printable names. Throws on an id never seen.
    virtual std::string decode(const TokenSeq& seq) const = 0;
    virtual int64_t vocab_size() const = 0;
};

using TokenizerHandle = std::shared_ptr<const Tokenizer>;

// Default tokenizer: deterministic segmenter (whitespace runs, Latin/digit
// words, single CJK characters, byte fallback) with ids from a stable 64-bit
// hash folded into [reserved, vocab_size). Lossless: concatenating the token
// strings reproduces the input, so decode(encode(t)) == t.
TokenizerHandle default_tokenizer();

// Same segmentation, but '\t', '\n' and runs of 2..16 spaces become dedicated
// special ids (longer runs decompose greedily). Round-trips indentation.
TokenizerHandle code_tokenizer();

// ---- line-delimited I/O ----

struct LineError {
    size_t line = 0;       // 1-based
    std::string field;     // offending field, empty for parse errors
    std::string message;
};

// Parses one record; on failure fills err.field/message and returns nullopt.
std::optional<Document> doc_from_json(const json& j, LineError& err);

// Streaming reader. Malformed lines are collected, not silently dropped;
// close() enforces the error-rate policy.
class JsonlReader {
public:
    explicit JsonlReader(const std::string& path, double max_error_rate = 0.001,
                         bool check_unique_ids = true);
    ~JsonlReader();
    JsonlReader(JsonlReader&&) noexcept;
    JsonlReader& operator=(JsonlReader&&) = delete;

    std::optional<Document> next();

    const std::vector<LineError>& errors() const { return errors_; }
    size_t lines_read() const { return lines_; }

    // Throws if the malformed-line rate exceeded the threshold.
    void close();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::vector<LineError> errors_;
    std::unordered_set<std::string> seen_ids_;
    size_t lines_ = 0;
    double max_error_rate_;
    bool check_unique_ids_;
    bool closed_ = false;
};

// Convenience wrappers used by tests and the desk-scale pipeline.
std::vector<Document> read_jsonl(const std::string& path, double max_error_rate = 0.001,
                                 std::vector<LineError>* errors_out = nullptr);
size_t write_jsonl(const std::vector<Document>& docs, const std::string& path);

}  // namespace ulpipe
