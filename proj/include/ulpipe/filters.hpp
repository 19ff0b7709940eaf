#pragma once
// Privacy scrubbing, internet-data cleaning, and language filtering.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ulpipe/corpus.hpp"
#include "ulpipe/langid.hpp"

namespace ulpipe {

struct FilterReport {
    uint64_t docs_in = 0, docs_out = 0;
    uint64_t bytes_in = 0, bytes_out = 0;
    // rule name -> removal count; keys always present so reports diff cleanly
    std::map<std::string, uint64_t> removals = {
        {"emails", 0},        {"phones", 0},      {"urls", 0},
        {"short_sentences", 0}, {"html_tags", 0}, {"unusual_chars", 0},
        {"low_confidence_lang", 0},
    };

    void merge(const FilterReport& other);
    json to_json() const;
};

struct PrivacyCounts {
    uint64_t emails = 0, phones = 0, urls = 0;
};

// Deletes every span matching the email / phone / URL rules. Runs to a
// fixpoint so the result is idempotent even when a deletion splices two
// half-matches together.
std::string strip_privacy(std::string_view text, PrivacyCounts& counts);
std::string strip_privacy(std::string_view text);

struct CleanCounts {
    uint64_t html_tags = 0, unusual_chars = 0, short_sentences = 0;
};

// Markup tags out, disallowed characters out, then sentences with fewer than
// 10 word units are dropped and the survivors rejoined (single space between
// Latin neighbors, nothing between CJK neighbors).
std::string clean_internet(std::string_view text, CleanCounts& counts);
std::string clean_internet(std::string_view text);

// Keeps documents detected as zh/en with confidence >= threshold; kept
// documents get lang set from the verdict. Order preserved.
std::vector<Document> filter_by_language(std::vector<Document> docs, double threshold,
                                         FilterReport& report,
                                         const LangIdHandle& provider = heuristic_langid(),
                                         int workers = 1);

struct FilterOptions {
    bool privacy = true;
    bool clean = true;
    bool language = true;
    double lang_threshold = kDefaultLangThreshold;
    int workers = 1;
};

// privacy -> language -> internet cleaning, dropping documents whose text
// ends up empty. Single report aggregates all rule counters.
std::vector<Document> filter_documents(std::vector<Document> docs, const FilterOptions& opts,
                                       FilterReport& report);

}  // namespace ulpipe
