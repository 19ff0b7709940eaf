#pragma once
// Three-level deduplication: character runs, paragraph windows of 1-99
// consecutive sentences, and whole documents. Exact-match only, via 128-bit
// fingerprints of normalized text.

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ulpipe/corpus.hpp"
#include "ulpipe/text.hpp"

namespace ulpipe {

// Sharded fingerprint set. insert_if_absent is safe to call concurrently;
// save() writes fingerprints in sorted order so the file is deterministic.
class HashStore {
public:
    HashStore();
    HashStore(HashStore&&) = default;
    HashStore& operator=(HashStore&&) = default;

    bool insert_if_absent(U128 fp);
    bool contains(U128 fp) const;
    size_t count() const;

    // binary format: magic "OBDD", version u16, count u64, raw 16-byte entries
    void save(const std::string& path) const;
    static HashStore load(const std::string& path);

private:
    static constexpr size_t kShards = 64;
    struct Shard {
        mutable std::mutex mu;
        std::unordered_set<U128, U128Hash> set;
    };
    std::unique_ptr<Shard[]> shards_;
    static size_t shard_of(U128 fp) { return size_t(fp.lo & (kShards - 1)); }
};

// Runs longer than max_run collapse to a single instance of the character.
std::string collapse_char_runs(std::string_view text, int max_run);

// Trimmed, non-empty sentences. (The byte-exact partition, for callers that
// must reconstruct the text, is sentence_spans() in text.hpp.)
std::vector<std::string> segment_sentences(std::string_view text);

// One paragraph window: w consecutive sentences starting at sentence `start`.
struct SentenceWindow {
    int start = 0;
    int w = 0;
    U128 fp;
};

// All windows of the given sizes over a document's content sentences,
// fingerprinted the same way dedup_paragraphs does it. Exposed for tests.
std::vector<SentenceWindow> enumerate_windows(const std::vector<std::string>& normalized_sentences,
                                              const std::vector<int>& window_sizes);

inline const std::vector<int> kDefaultWindows = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89};

// "full" -> 1..99; otherwise a comma-separated size list. Validates [1,99].
std::vector<int> parse_window_spec(std::string_view spec);

// Whole-document dedup: first occurrence survives, order preserved.
// two_phase=true (default) fingerprints in parallel but walks the store in
// stream order, so results are identical for any worker count. two_phase=false
// inserts from worker threads directly: faster, but which copy of a duplicate
// class survives depends on scheduling.
std::vector<Document> dedup_documents(std::vector<Document> docs, HashStore& store,
                                      uint64_t& removed, int workers = 1, bool two_phase = true);

// Paragraph-window dedup. For each document (stream order), each window size
// (ascending), each window left to right: a previously-seen fingerprint marks
// the window's sentences for removal (union across windows); every window is
// inserted into the store regardless. Documents whose text empties are dropped.
// two_phase as in dedup_documents.
std::vector<Document> dedup_paragraphs(std::vector<Document> docs,
                                       const std::vector<int>& window_sizes, HashStore& store,
                                       uint64_t& windows_removed, int workers = 1,
                                       bool two_phase = true);

}  // namespace ulpipe
