#include "ulpipe/dedup.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "ulpipe/par.hpp"

namespace ulpipe {

namespace {

// Fingerprint namespaces. Document fps, sentence fps and window fps all land
// in one store; distinct seeds keep them from colliding structurally.
constexpr uint64_t kDocSeed = 0x0d0cf1d6ull;
constexpr uint64_t kSentSeedA = 0x5e27a11ce5ull;
constexpr uint64_t kSentSeedB = 0xb10b0fba1e5ull;
// Odd multipliers for the two independent rolling polynomials.
constexpr uint64_t kBaseA = 0x9e3779b97f4a7c15ull;
constexpr uint64_t kBaseB = 0xc2b2ae3d27d4eb4full;

}  // namespace

HashStore::HashStore() : shards_(new Shard[kShards]) {}

bool HashStore::insert_if_absent(U128 fp) {
    Shard& sh = shards_[shard_of(fp)];
    std::lock_guard<std::mutex> lock(sh.mu);
    return sh.set.insert(fp).second;
}

bool HashStore::contains(U128 fp) const {
    const Shard& sh = shards_[shard_of(fp)];
    std::lock_guard<std::mutex> lock(sh.mu);
    return sh.set.count(fp) != 0;
}

size_t HashStore::count() const {
    size_t n = 0;
    for (size_t i = 0; i < kShards; ++i) {
        std::lock_guard<std::mutex> lock(shards_[i].mu);
        n += shards_[i].set.size();
    }
    return n;
}

namespace {

void put_u16(std::string& out, uint16_t v) {
    out.push_back(char(v & 0xff));
    out.push_back(char(v >> 8));
}

void put_u64(std::string& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

uint64_t get_u64(const char* p) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(uint8_t(p[i])) << (8 * i);
    return v;
}

}  // namespace

void HashStore::save(const std::string& path) const {
    std::vector<U128> all;
    all.reserve(count());
    for (size_t i = 0; i < kShards; ++i) {
        std::lock_guard<std::mutex> lock(shards_[i].mu);
        all.insert(all.end(), shards_[i].set.begin(), shards_[i].set.end());
    }
    std::sort(all.begin(), all.end(), [](const U128& a, const U128& b) {
        return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
    });

    std::string buf;
    buf.reserve(14 + 16 * all.size());
    buf += "OBDD";
    put_u16(buf, 1);
    put_u64(buf, all.size());
    for (const U128& fp : all) {
        put_u64(buf, fp.lo);
        put_u64(buf, fp.hi);
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open hash store for writing: " + path);
    out.write(buf.data(), std::streamsize(buf.size()));
    if (!out) throw std::runtime_error("failed writing hash store: " + path);
}

HashStore HashStore::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open hash store: " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (buf.size() < 14 || buf.compare(0, 4, "OBDD") != 0)
        throw std::runtime_error("bad hash store magic: " + path);
    uint16_t version = uint16_t(uint8_t(buf[4])) | uint16_t(uint8_t(buf[5])) << 8;
    if (version != 1)
        throw std::runtime_error("unsupported hash store version " + std::to_string(version));
    uint64_t n = get_u64(buf.data() + 6);
    if (buf.size() != 14 + 16 * n)
        throw std::runtime_error("truncated hash store: " + path);

    HashStore store;
    for (uint64_t i = 0; i < n; ++i) {
        const char* p = buf.data() + 14 + 16 * i;
        store.insert_if_absent(U128{get_u64(p), get_u64(p + 8)});
    }
    return store;
}

std::string collapse_char_runs(std::string_view text, int max_run) {
    if (max_run < 1) throw std::invalid_argument("max_run must be >= 1");
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        Cp c = decode_cp(text, i);
        // Length of the run of this exact unit (codepoint, or raw invalid byte).
        size_t unit = c.width;
        size_t run = 1;
        size_t j = i + unit;
        while (j + unit <= text.size() &&
               text.compare(j, unit, text.substr(i, unit)) == 0) {
            // Invalid bytes only match other raw bytes, never a valid prefix.
            Cp nxt = decode_cp(text, j);
            if (nxt.width != c.width || nxt.valid != c.valid) break;
            ++run;
            j += unit;
        }
        size_t emit = run > size_t(max_run) ? 1 : run;
        for (size_t k = 0; k < emit; ++k) out.append(text.substr(i, unit));
        i += run * unit;
    }
    return out;
}

std::vector<std::string> segment_sentences(std::string_view text) {
    std::vector<std::string> out;
    for (const Span& sp : sentence_spans(text)) {
        std::string_view t = trim_view(text.substr(sp.begin, sp.end - sp.begin));
        if (!t.empty()) out.emplace_back(t);
    }
    return out;
}

namespace {

struct SentFp {
    uint64_t a = 0;
    uint64_t b = 0;
};

SentFp sentence_fp(std::string_view normalized) {
    return {hash64(normalized, kSentSeedA), hash64(normalized, kSentSeedB)};
}

U128 window_fp(uint64_t roll_a, uint64_t roll_b, int w) {
    return U128{mix64(roll_a ^ (0xa5a5a5a5a5a5a5a5ull + uint64_t(w))),
                mix64(roll_b ^ (0x3c3c3c3c3c3c3c3cull * uint64_t(w) + 1))};
}

uint64_t pow_mul(uint64_t base, int exp) {
    uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Windows of each size over the fingerprint sequence, in the canonical scan
// order: sizes ascending, then left to right.
void scan_windows(const std::vector<SentFp>& fps, const std::vector<int>& sizes,
                  const std::function<void(const SentenceWindow&)>& visit) {
    const int m = int(fps.size());
    for (int w : sizes) {
        if (w > m) continue;
        const uint64_t top_a = pow_mul(kBaseA, w - 1);
        const uint64_t top_b = pow_mul(kBaseB, w - 1);
        uint64_t roll_a = 0, roll_b = 0;
        for (int j = 0; j < w; ++j) {
            roll_a = roll_a * kBaseA + fps[size_t(j)].a;
            roll_b = roll_b * kBaseB + fps[size_t(j)].b;
        }
        for (int j = 0;; ++j) {
            visit(SentenceWindow{j, w, window_fp(roll_a, roll_b, w)});
            if (j + w >= m) break;
            roll_a = (roll_a - fps[size_t(j)].a * top_a) * kBaseA + fps[size_t(j + w)].a;
            roll_b = (roll_b - fps[size_t(j)].b * top_b) * kBaseB + fps[size_t(j + w)].b;
        }
    }
}

std::vector<int> sorted_sizes(std::vector<int> sizes) {
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    if (!sizes.empty() && (sizes.front() < 1 || sizes.back() > 99))
        throw std::invalid_argument("window sizes must be in [1, 99]");
    return sizes;
}

}  // namespace

std::vector<SentenceWindow> enumerate_windows(const std::vector<std::string>& normalized_sentences,
                                              const std::vector<int>& window_sizes) {
    std::vector<SentFp> fps;
    fps.reserve(normalized_sentences.size());
    for (const std::string& s : normalized_sentences) fps.push_back(sentence_fp(s));
    std::vector<SentenceWindow> out;
    scan_windows(fps, sorted_sizes(window_sizes),
                 [&](const SentenceWindow& win) { out.push_back(win); });
    return out;
}

std::vector<int> parse_window_spec(std::string_view spec) {
    if (spec == "full") {
        std::vector<int> all(99);
        for (int i = 0; i < 99; ++i) all[size_t(i)] = i + 1;
        return all;
    }
    std::vector<int> sizes;
    size_t pos = 0;
    while (pos <= spec.size()) {
        size_t comma = spec.find(',', pos);
        std::string_view item = spec.substr(pos, comma == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : comma - pos);
        item = trim_view(item);
        if (item.empty()) throw std::invalid_argument("empty entry in window spec");
        int v = 0;
        for (char ch : item) {
            if (ch < '0' || ch > '9')
                throw std::invalid_argument("bad window size: " + std::string(item));
            v = v * 10 + (ch - '0');
            if (v > 99) throw std::invalid_argument("window size out of range: " + std::string(item));
        }
        sizes.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    std::vector<int> out = sorted_sizes(std::move(sizes));
    if (out.empty()) throw std::invalid_argument("window spec is empty");
    return out;
}

std::vector<Document> dedup_documents(std::vector<Document> docs, HashStore& store,
                                      uint64_t& removed, int workers, bool two_phase) {
    std::vector<char> keep;
    if (two_phase) {
        std::vector<U128> fps = parallel_transform(
            docs,
            [](const Document& d) { return murmur3_128(normalize_for_dedup(d.text), kDocSeed); },
            workers);
        keep.resize(docs.size());
        for (size_t i = 0; i < docs.size(); ++i) keep[i] = store.insert_if_absent(fps[i]);
    } else {
        keep = parallel_transform(
            docs,
            [&store](const Document& d) {
                return char(store.insert_if_absent(
                    murmur3_128(normalize_for_dedup(d.text), kDocSeed)));
            },
            workers);
    }

    std::vector<Document> out;
    out.reserve(docs.size());
    for (size_t i = 0; i < docs.size(); ++i) {
        if (keep[i])
            out.push_back(std::move(docs[i]));
        else
            ++removed;
    }
    return out;
}

namespace {

// Per-document precomputation done in the parallel phase: byte spans of all
// sentences, plus fingerprints for the content (non-empty after normalization)
// subsequence.
struct DocSentences {
    std::vector<Span> spans;
    std::vector<int> content;  // indices into spans
    std::vector<SentFp> fps;   // parallel to content
};

DocSentences analyze_doc(const Document& doc) {
    DocSentences ds;
    ds.spans = sentence_spans(doc.text);
    for (size_t i = 0; i < ds.spans.size(); ++i) {
        const Span& sp = ds.spans[i];
        std::string norm =
            normalize_for_dedup(std::string_view(doc.text).substr(sp.begin, sp.end - sp.begin));
        if (norm.empty()) continue;
        ds.content.push_back(int(i));
        ds.fps.push_back(sentence_fp(norm));
    }
    return ds;
}

// Scans one document against the store, strips marked sentences, and returns
// whether the document survives (text rewritten in place). `removed` counts
// duplicate windows.
bool process_doc(Document& doc, const DocSentences& ds, const std::vector<int>& sizes,
                 HashStore& store, uint64_t& removed) {
    std::vector<char> marked(ds.content.size(), 0);
    bool any = false;
    scan_windows(ds.fps, sizes, [&](const SentenceWindow& win) {
        if (!store.insert_if_absent(win.fp)) {
            ++removed;
            any = true;
            std::fill(marked.begin() + win.start, marked.begin() + win.start + win.w, char(1));
        }
    });
    if (!any) return true;

    std::vector<char> drop_span(ds.spans.size(), 0);
    for (size_t ci = 0; ci < ds.content.size(); ++ci)
        if (marked[ci]) drop_span[size_t(ds.content[ci])] = 1;

    std::string rebuilt;
    for (size_t si = 0; si < ds.spans.size(); ++si) {
        if (drop_span[si]) continue;
        const Span& sp = ds.spans[si];
        rebuilt.append(doc.text, sp.begin, sp.end - sp.begin);
    }
    std::string_view trimmed = trim_view(rebuilt);
    if (trimmed.empty()) return false;  // every sentence was a duplicate
    doc.text.assign(trimmed);
    return true;
}

}  // namespace

std::vector<Document> dedup_paragraphs(std::vector<Document> docs,
                                       const std::vector<int>& window_sizes, HashStore& store,
                                       uint64_t& windows_removed, int workers, bool two_phase) {
    const std::vector<int> sizes = sorted_sizes(window_sizes);
    if (sizes.empty()) throw std::invalid_argument("no window sizes given");

    std::vector<char> keep(docs.size());
    if (two_phase) {
        std::vector<DocSentences> analyzed =
            parallel_transform(docs, [](const Document& d) { return analyze_doc(d); }, workers);
        for (size_t di = 0; di < docs.size(); ++di)
            keep[di] = process_doc(docs[di], analyzed[di], sizes, store, windows_removed);
    } else {
        struct Result {
            char keep = 0;
            std::string text;
            uint64_t removed = 0;
        };
        std::vector<size_t> idx(docs.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::vector<Result> results = parallel_transform(
            idx,
            [&](size_t di) {
                Result r;
                DocSentences ds = analyze_doc(docs[di]);
                Document tmp = docs[di];
                r.keep = char(process_doc(tmp, ds, sizes, store, r.removed));
                r.text = std::move(tmp.text);
                return r;
            },
            workers);
        for (size_t di = 0; di < docs.size(); ++di) {
            keep[di] = results[di].keep;
            docs[di].text = std::move(results[di].text);
            windows_removed += results[di].removed;
        }
    }

    std::vector<Document> kept;
    kept.reserve(docs.size());
    for (size_t di = 0; di < docs.size(); ++di)
        if (keep[di]) kept.push_back(std::move(docs[di]));
    return kept;
}

}  // namespace ulpipe
