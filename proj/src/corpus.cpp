#include "ulpipe/corpus.hpp"

#include <fstream>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace ulpipe {

// ---------------------------------------------------------------- lang

std::string_view lang_name(Lang lang) {
    switch (lang) {
        case Lang::zh: return "zh";
        case Lang::en: return "en";
        case Lang::code: return "code";
        default: return "unknown";
    }
}

std::optional<Lang> lang_from(std::string_view name) {
    if (name == "zh") return Lang::zh;
    if (name == "en") return Lang::en;
    if (name == "code") return Lang::code;
    if (name == "unknown") return Lang::unknown;
    return std::nullopt;
}

// ---------------------------------------------------------------- specials

int64_t Specials::mask_id(int i) {
    if (i < 0 || i >= mask_count)
        throw std::out_of_range("mask ordinal out of range: " + std::to_string(i));
    return mask_base + i;
}

int64_t Specials::paradigm_id(std::string_view sentinel) {
    if (sentinel == "<R>") return paradigm_r;
    if (sentinel == "<S>") return paradigm_s;
    if (sentinel == "<X>") return paradigm_x;
    throw std::invalid_argument("unknown paradigm sentinel: " + std::string(sentinel));
}

std::string_view Specials::paradigm_name(int64_t id) {
    if (id == paradigm_r) return "<R>";
    if (id == paradigm_s) return "<S>";
    if (id == paradigm_x) return "<X>";
    throw std::invalid_argument("not a paradigm id: " + std::to_string(id));
}

std::string Specials::special_name(int64_t id) {
    if (id == pad) return "<pad>";
    if (id == eos) return "<eos>";
    if (id == paradigm_r) return "<R>";
    if (id == paradigm_s) return "<S>";
    if (id == paradigm_x) return "<X>";
    if (is_mask(id)) return "<mask_" + std::to_string(id - mask_base) + ">";
    if (id == tab) return "\t";
    if (id == newline) return "\n";
    if (id >= space_run_base && id <= space_run_base + (space_run_max - 2))
        return std::string(size_t(id - space_run_base + 2), ' ');
    return "<special_" + std::to_string(id) + ">";
}

// ---------------------------------------------------------------- tokenizer

namespace {

constexpr int64_t kVocab = int64_t(1) << 48;
constexpr uint64_t kTokenSeed = 0x0b5e9a115eed0011ull;

// id -> token string, filled lazily by encode so decode can invert the hash.
class TokenRegistry {
public:
    void record(int64_t id, std::string_view tok) {
        {
            std::shared_lock lk(mu_);
            auto it = map_.find(id);
            if (it != map_.end()) {
                if (it->second != tok)
                    throw std::runtime_error("token id collision between '" + it->second +
                                             "' and '" + std::string(tok) + "'");
                return;
            }
        }
        std::unique_lock lk(mu_);
        auto [it, inserted] = map_.emplace(id, std::string(tok));
        if (!inserted && it->second != tok)
            throw std::runtime_error("token id collision between '" + it->second +
                                     "' and '" + std::string(tok) + "'");
    }

    std::string lookup(int64_t id) const {
        std::shared_lock lk(mu_);
        auto it = map_.find(id);
        if (it == map_.end())
            throw std::runtime_error("cannot decode unseen token id " + std::to_string(id));
        return it->second;
    }

private:
    mutable std::shared_mutex mu_;
    std::unordered_map<int64_t, std::string> map_;
};

TokenRegistry& registry() {
    static TokenRegistry r;
    return r;
}

int64_t ordinary_id(std::string_view tok) {
    return Specials::reserved +
           int64_t(hash64(tok, kTokenSeed) % uint64_t(kVocab - Specials::reserved));
}

class HashTokenizer : public Tokenizer {
public:
    explicit HashTokenizer(bool code_whitespace) : code_ws_(code_whitespace) {}

    TokenSeq encode(std::string_view text) const override {
        TokenSeq seq;
        seq.ids.reserve(text.size() / 4 + 1);
        size_t i = 0;
        while (i < text.size()) {
            Cp c = decode_cp(text, i);
            if (!c.valid) {
                push(seq, text.substr(i, 1));
                i += 1;
                continue;
            }
            if (is_space_cp(c.cp)) {
                size_t j = i;
                while (j < text.size()) {
                    Cp w = decode_cp(text, j);
                    if (!w.valid || !is_space_cp(w.cp)) break;
                    j += w.width;
                }
                if (code_ws_)
                    push_code_whitespace(seq, text.substr(i, j - i));
                else
                    push(seq, text.substr(i, j - i));
                i = j;
                continue;
            }
            if (is_latin_letter(c.cp) || is_ascii_digit(c.cp)) {
                size_t j = i;
                while (j < text.size()) {
                    Cp w = decode_cp(text, j);
                    if (!w.valid || (!is_latin_letter(w.cp) && !is_ascii_digit(w.cp))) break;
                    j += w.width;
                }
                push(seq, text.substr(i, j - i));
                i = j;
                continue;
            }
            // CJK and everything else: one codepoint per token
            push(seq, text.substr(i, c.width));
            i += c.width;
        }
        return seq;
    }

    std::string decode(const TokenSeq& seq) const override {
        std::string out;
        for (int64_t id : seq.ids) {
            if (Specials::is_special(id))
                out += Specials::special_name(id);
            else
                out += registry().lookup(id);
        }
        return out;
    }

    int64_t vocab_size() const override { return kVocab; }

private:
    bool code_ws_;

    static void push(TokenSeq& seq, std::string_view tok) {
        int64_t id = ordinary_id(tok);
        registry().record(id, tok);
        seq.ids.push_back(id);
    }

    static void push_code_whitespace(TokenSeq& seq, std::string_view run) {
        size_t i = 0;
        while (i < run.size()) {
            char ch = run[i];
            if (ch == '\t') {
                seq.ids.push_back(Specials::tab);
                i++;
            } else if (ch == '\n') {
                seq.ids.push_back(Specials::newline);
                i++;
            } else if (ch == ' ') {
                size_t j = i;
                while (j < run.size() && run[j] == ' ') j++;
                size_t w = j - i;
                while (w >= 2) {
                    size_t take = std::min<size_t>(w, Specials::space_run_max);
                    seq.ids.push_back(Specials::space_run_base + int64_t(take - 2));
                    w -= take;
                }
                if (w == 1) push(seq, " ");
                i = j;
            } else {
                // other whitespace codepoint: ordinary token
                Cp c = decode_cp(run, i);
                push(seq, run.substr(i, c.width));
                i += c.width;
            }
        }
    }
};

}  // namespace

TokenizerHandle default_tokenizer() {
    static TokenizerHandle h = std::make_shared<HashTokenizer>(false);
    return h;
}

TokenizerHandle code_tokenizer() {
    static TokenizerHandle h = std::make_shared<HashTokenizer>(true);
    return h;
}

// ---------------------------------------------------------------- json io

json doc_to_json(const Document& doc) {
    json j;
    j["id"] = doc.id;
    j["text"] = doc.text;
    j["lang"] = std::string(lang_name(doc.lang));
    j["source"] = doc.source;
    if (doc.meta.is_object() && !doc.meta.empty()) j["meta"] = doc.meta;
    return j;
}

std::optional<Document> doc_from_json(const json& j, LineError& err) {
    if (!j.is_object()) {
        err.field = "";
        err.message = "record is not an object";
        return std::nullopt;
    }
    Document doc;
    auto it = j.find("id");
    if (it == j.end() || !it->is_string() || it->get_ref<const std::string&>().empty()) {
        err.field = "id";
        err.message = "missing or empty string field";
        return std::nullopt;
    }
    doc.id = it->get<std::string>();

    it = j.find("text");
    if (it == j.end() || !it->is_string()) {
        err.field = "text";
        err.message = "missing string field";
        return std::nullopt;
    }
    doc.text = it->get<std::string>();

    it = j.find("lang");
    if (it != j.end()) {
        if (!it->is_string()) {
            err.field = "lang";
            err.message = "not a string";
            return std::nullopt;
        }
        auto lang = lang_from(it->get_ref<const std::string&>());
        if (!lang) {
            err.field = "lang";
            err.message = "unknown value '" + it->get<std::string>() + "'";
            return std::nullopt;
        }
        doc.lang = *lang;
    }

    it = j.find("source");
    if (it != j.end()) {
        if (!it->is_string()) {
            err.field = "source";
            err.message = "not a string";
            return std::nullopt;
        }
        doc.source = it->get<std::string>();
    }

    it = j.find("meta");
    if (it != j.end()) {
        if (!it->is_object()) {
            err.field = "meta";
            err.message = "not an object";
            return std::nullopt;
        }
        doc.meta = *it;
    }

    // unknown fields ride along in meta for forward compatibility
    for (auto& [key, value] : j.items()) {
        if (key == "id" || key == "text" || key == "lang" || key == "source" || key == "meta")
            continue;
        if (!doc.meta.is_object()) doc.meta = json::object();
        if (!doc.meta.contains(key)) doc.meta[key] = value;
    }
    return doc;
}

struct JsonlReader::Impl {
    std::ifstream in;
    std::string path;
};

JsonlReader::JsonlReader(const std::string& path, double max_error_rate, bool check_unique_ids)
    : impl_(new Impl{std::ifstream(path), path}),
      max_error_rate_(max_error_rate),
      check_unique_ids_(check_unique_ids) {
    if (!impl_->in.is_open())
        throw std::runtime_error("cannot open " + path);
}

JsonlReader::~JsonlReader() = default;
JsonlReader::JsonlReader(JsonlReader&&) noexcept = default;

std::optional<Document> JsonlReader::next() {
    std::string line;
    while (std::getline(impl_->in, line)) {
        lines_++;
        if (line.empty()) {
            errors_.push_back({lines_, "", "empty line"});
            continue;
        }
        json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (j.is_discarded()) {
            errors_.push_back({lines_, "", "invalid JSON"});
            continue;
        }
        LineError err;
        auto doc = doc_from_json(j, err);
        if (!doc) {
            err.line = lines_;
            errors_.push_back(err);
            continue;
        }
        if (check_unique_ids_ && !seen_ids_.insert(doc->id).second) {
            errors_.push_back({lines_, "id", "duplicate id '" + doc->id + "'"});
            continue;
        }
        return doc;
    }
    return std::nullopt;
}

void JsonlReader::close() {
    if (closed_) return;
    closed_ = true;
    if (lines_ == 0 || errors_.empty()) return;
    double rate = double(errors_.size()) / double(lines_);
    if (rate > max_error_rate_) {
        const LineError& first = errors_.front();
        throw std::runtime_error(
            impl_->path + ": " + std::to_string(errors_.size()) + " of " +
            std::to_string(lines_) + " lines malformed (first: line " +
            std::to_string(first.line) +
            (first.field.empty() ? "" : ", field '" + first.field + "'") + ": " +
            first.message + ")");
    }
}

std::vector<Document> read_jsonl(const std::string& path, double max_error_rate,
                                 std::vector<LineError>* errors_out) {
    JsonlReader reader(path, max_error_rate);
    std::vector<Document> docs;
    while (auto doc = reader.next()) docs.push_back(std::move(*doc));
    if (errors_out) *errors_out = reader.errors();
    reader.close();
    return docs;
}

size_t write_jsonl(const std::vector<Document>& docs, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open())
        throw std::runtime_error("cannot write " + path);
    for (const Document& doc : docs) {
        out << doc_to_json(doc).dump() << '\n';
    }
    out.flush();
    if (!out)
        throw std::runtime_error("write failed: " + path);
    return docs.size();
}

}  // namespace ulpipe
