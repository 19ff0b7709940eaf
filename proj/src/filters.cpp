#include "ulpipe/filters.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "ulpipe/par.hpp"
#include "ulpipe/text.hpp"

namespace ulpipe {

// ---------------------------------------------------------------- report

void FilterReport::merge(const FilterReport& other) {
    docs_in += other.docs_in;
    docs_out += other.docs_out;
    bytes_in += other.bytes_in;
    bytes_out += other.bytes_out;
    for (const auto& [rule, n] : other.removals) removals[rule] += n;
}

json FilterReport::to_json() const {
    json j;
    j["docs_in"] = docs_in;
    j["docs_out"] = docs_out;
    j["bytes_in"] = bytes_in;
    j["bytes_out"] = bytes_out;
    json r = json::object();
    for (const auto& [rule, n] : removals) r[rule] = n;
    j["removals"] = r;
    return j;
}

// ---------------------------------------------------------------- privacy

namespace {

inline bool is_local_char(char c) {
    return std::isalnum(uint8_t(c)) || c == '.' || c == '_' || c == '%' || c == '+' || c == '-';
}
inline bool is_domain_char(char c) {
    return std::isalnum(uint8_t(c)) || c == '.' || c == '-';
}
inline bool is_phone_sep(char c) {
    return c == ' ' || c == '-' || c == '.' || c == '(' || c == ')';
}
inline bool iequal_at(std::string_view text, size_t i, std::string_view lit) {
    if (i + lit.size() > text.size()) return false;
    for (size_t k = 0; k < lit.size(); k++)
        if (std::tolower(uint8_t(text[i + k])) != lit[k]) return false;
    return true;
}

// true if the byte at i begins a whitespace codepoint
bool ws_at(std::string_view text, size_t i) {
    Cp c = decode_cp(text, i);
    return c.valid && is_space_cp(c.cp);
}

struct PiiSpan {
    size_t begin, end;
    int kind;  // 0 url, 1 email, 2 phone
};

bool valid_domain(std::string_view d) {
    if (d.find('.') == std::string_view::npos) return false;
    size_t label_start = 0;
    size_t labels = 0;
    std::string_view last;
    for (size_t i = 0; i <= d.size(); i++) {
        if (i == d.size() || d[i] == '.') {
            std::string_view label = d.substr(label_start, i - label_start);
            if (label.empty()) return false;
            last = label;
            labels++;
            label_start = i + 1;
        }
    }
    if (labels < 2 || last.size() < 2) return false;
    for (char c : last)
        if (!std::isalpha(uint8_t(c))) return false;
    return true;
}

// one scan pass; returns spans to delete (non-overlapping, sorted)
std::vector<PiiSpan> find_pii(std::string_view text) {
    const size_t n = text.size();
    std::vector<uint8_t> claimed(n, 0);
    std::vector<PiiSpan> spans;
    auto claim = [&](size_t b, size_t e, int kind) {
        spans.push_back({b, e, kind});
        std::fill(claimed.begin() + b, claimed.begin() + e, uint8_t(1));
    };

    // URLs: scheme or www. prefix, up to whitespace
    for (size_t i = 0; i < n;) {
        char lead = text[i];
        if (lead != 'h' && lead != 'H' && lead != 'w' && lead != 'W') {
            i++;
            continue;
        }
        bool scheme = iequal_at(text, i, "http://") || iequal_at(text, i, "https://");
        bool www = iequal_at(text, i, "www.") &&
                   (i == 0 || !std::isalnum(uint8_t(text[i - 1])));
        if ((scheme && (i == 0 || !std::isalnum(uint8_t(text[i - 1])))) || www) {
            size_t j = i;
            while (j < n && !ws_at(text, j)) j += decode_cp(text, j).width;
            claim(i, j, 0);
            i = j;
        } else {
            i++;
        }
    }

    // emails: expand around '@'
    for (size_t p = text.find('@'); p != std::string_view::npos; p = text.find('@', p + 1)) {
        if (claimed[p]) continue;
        size_t left = p;
        while (left > 0 && !claimed[left - 1] && is_local_char(text[left - 1])) left--;
        if (left == p) continue;
        size_t right = p + 1;
        while (right < n && !claimed[right] && is_domain_char(text[right])) right++;
        while (right > p + 1 && (text[right - 1] == '.' || text[right - 1] == '-')) right--;
        if (right == p + 1) continue;
        if (!valid_domain(text.substr(p + 1, right - p - 1))) continue;
        claim(left, right, 1);
    }

    // phones: 7-15 digits with separators, optional leading '+'
    for (size_t i = 0; i < n;) {
        if (claimed[i] || !(std::isdigit(uint8_t(text[i])) || text[i] == '+')) {
            i++;
            continue;
        }
        size_t j = i;
        size_t digits = 0;
        size_t last_digit_end = i;
        if (text[j] == '+') j++;
        while (j < n && !claimed[j]) {
            if (std::isdigit(uint8_t(text[j]))) {
                digits++;
                j++;
                last_digit_end = j;
            } else if (is_phone_sep(text[j])) {
                j++;
            } else {
                break;
            }
        }
        if (digits >= 7 && digits <= 15) {
            claim(i, last_digit_end, 2);
            i = last_digit_end;
        } else {
            i = std::max(j, i + 1);
        }
    }

    std::sort(spans.begin(), spans.end(),
              [](const PiiSpan& a, const PiiSpan& b) { return a.begin < b.begin; });
    return spans;
}

}  // namespace

std::string strip_privacy(std::string_view text, PrivacyCounts& counts) {
    std::string cur(text);
    // deletion can splice two half-matches together, so run to a fixpoint
    for (int pass = 0; pass < 16; pass++) {
        auto spans = find_pii(cur);
        if (spans.empty()) break;
        std::string next;
        next.reserve(cur.size());
        size_t pos = 0;
        for (const PiiSpan& s : spans) {
            next.append(cur, pos, s.begin - pos);
            pos = s.end;
            if (s.kind == 0) counts.urls++;
            else if (s.kind == 1) counts.emails++;
            else counts.phones++;
        }
        next.append(cur, pos, cur.size() - pos);
        cur = std::move(next);
    }
    return cur;
}

std::string strip_privacy(std::string_view text) {
    PrivacyCounts c;
    return strip_privacy(text, c);
}

// ---------------------------------------------------------------- cleaning

namespace {

// removes <tag ...> style markup; unterminated tags swallow the rest
std::string strip_tags_once(std::string_view text, uint64_t& removed, bool& changed) {
    std::string out;
    out.reserve(text.size());
    for (size_t i = 0; i < text.size();) {
        char c = text[i];
        if (c == '<' && i + 1 < text.size()) {
            char next = text[i + 1];
            if (std::isalpha(uint8_t(next)) || next == '/' || next == '!' || next == '?') {
                size_t close = text.find('>', i + 1);
                removed++;
                changed = true;
                if (close == std::string_view::npos) {
                    break;  // unterminated: drop the tail
                }
                i = close + 1;
                continue;
            }
        }
        if (c == '<' && i + 1 == text.size()) {
            // trailing lone '<' can pair with nothing; keep it
        }
        out.push_back(c);
        i++;
    }
    return out;
}

bool cjk_boundary_cp(char32_t cp) {
    return is_han(cp) || is_kana(cp) || is_hangul(cp) ||
           (cp >= 0x3000 && cp <= 0x303F) || (cp >= 0xFF00 && cp <= 0xFFEF);
}

// callers hand in cleaned sentences, which are valid UTF-8 throughout, so the
// last codepoint starts at the last non-continuation byte
bool ends_cjk(std::string_view s) {
    if (s.empty()) return false;
    size_t i = s.size() - 1;
    while (i > 0 && (uint8_t(s[i]) & 0xC0) == 0x80) i--;
    Cp c = decode_cp(s, i);
    return c.valid && cjk_boundary_cp(c.cp);
}

bool starts_cjk(std::string_view s) {
    if (s.empty()) return false;
    Cp c = decode_cp(s, 0);
    return c.valid && cjk_boundary_cp(c.cp);
}

}  // namespace

std::string clean_internet(std::string_view text, CleanCounts& counts) {
    // 1. markup tags, to a fixpoint (tag removal can splice a new "<x")
    std::string untagged(text);
    for (int pass = 0; pass < 16; pass++) {
        if (untagged.find('<') == std::string::npos) break;
        bool changed = false;
        untagged = strip_tags_once(untagged, counts.html_tags, changed);
        if (!changed) break;
    }

    // 2. disallowed characters; ASCII runs copy in bulk
    static const auto ascii_allowed = [] {
        std::array<bool, 128> t{};
        for (char32_t c = 0; c < 128; c++) t[c] = is_clean_allowed(c);
        return t;
    }();
    std::string kept;
    kept.reserve(untagged.size());
    for (size_t i = 0; i < untagged.size();) {
        if (uint8_t(untagged[i]) < 0x80) {
            size_t j = i;
            while (j < untagged.size() && uint8_t(untagged[j]) < 0x80 &&
                   ascii_allowed[uint8_t(untagged[j])])
                j++;
            if (j > i) {
                kept.append(untagged, i, j - i);
                i = j;
                continue;
            }
            counts.unusual_chars++;
            i++;
            continue;
        }
        Cp c = decode_cp(untagged, i);
        if (c.valid && is_clean_allowed(c.cp)) {
            kept.append(untagged, i, c.width);
        } else {
            counts.unusual_chars++;
        }
        i += c.width;
    }

    // 3. sentence-level length rule, then rejoin
    std::vector<std::string> sentences;
    for (const Span& sp : sentence_spans(kept)) {
        std::string_view raw(kept.data() + sp.begin, sp.end - sp.begin);
        std::string_view trimmed = trim_view(raw);
        if (trimmed.empty()) continue;
        if (word_unit_count(trimmed) < 10) {
            counts.short_sentences++;
            continue;
        }
        sentences.emplace_back(trimmed);
    }
    std::string out;
    for (size_t i = 0; i < sentences.size(); i++) {
        if (i > 0 && !(ends_cjk(sentences[i - 1]) || starts_cjk(sentences[i])))
            out.push_back(' ');
        out += sentences[i];
    }
    return out;
}

std::string clean_internet(std::string_view text) {
    CleanCounts c;
    return clean_internet(text, c);
}

// ---------------------------------------------------------------- language

std::vector<Document> filter_by_language(std::vector<Document> docs, double threshold,
                                         FilterReport& report, const LangIdHandle& provider,
                                         int workers) {
    if (docs.empty()) return docs;
    auto verdicts = parallel_transform(
        docs,
        [&](const Document& d) -> LangVerdict {
            if (d.text.empty()) return {DetectedLang::other, 0.0};
            return provider->detect(d.text);
        },
        workers);
    std::vector<Document> out;
    out.reserve(docs.size());
    for (size_t i = 0; i < docs.size(); i++) {
        report.docs_in++;
        report.bytes_in += docs[i].text.size();
        const LangVerdict& v = verdicts[i];
        bool keep = (v.lang == DetectedLang::zh || v.lang == DetectedLang::en) &&
                    v.confidence >= threshold;
        if (!keep) {
            report.removals["low_confidence_lang"]++;
            continue;
        }
        Document d = std::move(docs[i]);
        d.lang = v.lang == DetectedLang::zh ? Lang::zh : Lang::en;
        report.docs_out++;
        report.bytes_out += d.text.size();
        out.push_back(std::move(d));
    }
    return out;
}

// ---------------------------------------------------------------- composed

std::vector<Document> filter_documents(std::vector<Document> docs, const FilterOptions& opts,
                                       FilterReport& report) {
    report.docs_in += docs.size();
    for (const Document& d : docs) report.bytes_in += d.text.size();

    struct ScrubResult {
        std::string text;
        PrivacyCounts privacy;
        CleanCounts clean;
        LangVerdict verdict;
    };
    auto results = parallel_transform(
        docs,
        [&](const Document& d) {
            ScrubResult r;
            r.text = d.text;
            if (opts.privacy) r.text = strip_privacy(r.text, r.privacy);
            if (opts.language && !r.text.empty()) r.verdict = detect_language(r.text);
            if (opts.clean) r.text = clean_internet(r.text, r.clean);
            return r;
        },
        opts.workers);

    std::vector<Document> out;
    out.reserve(docs.size());
    for (size_t i = 0; i < docs.size(); i++) {
        ScrubResult& r = results[i];
        report.removals["emails"] += r.privacy.emails;
        report.removals["phones"] += r.privacy.phones;
        report.removals["urls"] += r.privacy.urls;
        report.removals["html_tags"] += r.clean.html_tags;
        report.removals["unusual_chars"] += r.clean.unusual_chars;
        report.removals["short_sentences"] += r.clean.short_sentences;
        if (opts.language) {
            bool keep = (r.verdict.lang == DetectedLang::zh || r.verdict.lang == DetectedLang::en) &&
                        r.verdict.confidence >= opts.lang_threshold;
            if (!keep) {
                report.removals["low_confidence_lang"]++;
                continue;
            }
        }
        if (r.text.empty()) continue;  // cleaning left nothing behind
        Document d = std::move(docs[i]);
        d.text = std::move(r.text);
        if (opts.language)
            d.lang = r.verdict.lang == DetectedLang::zh ? Lang::zh : Lang::en;
        report.docs_out++;
        report.bytes_out += d.text.size();
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace ulpipe
