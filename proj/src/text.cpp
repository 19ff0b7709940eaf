#include "ulpipe/text.hpp"

#include <algorithm>
#include <array>
#include <cstring>

namespace ulpipe {

// ---------------------------------------------------------------- hashing

static inline uint64_t rotl64(uint64_t x, int8_t r) {
    return (x << r) | (x >> (64 - r));
}

static inline uint64_t fmix64(uint64_t k) {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdull;
    k ^= k >> 33;
    k *= 0xc4ceb9fe1a85ec53ull;
    k ^= k >> 33;
    return k;
}

U128 murmur3_128(const void* data, size_t len, uint64_t seed) {
    const uint8_t* bytes = static_cast<const uint8_t*>(data);
    const size_t nblocks = len / 16;

    uint64_t h1 = seed;
    uint64_t h2 = seed;
    const uint64_t c1 = 0x87c37b91114253d5ull;
    const uint64_t c2 = 0x4cf5ad432745937full;

    for (size_t i = 0; i < nblocks; i++) {
        uint64_t k1, k2;
        std::memcpy(&k1, bytes + i * 16, 8);
        std::memcpy(&k2, bytes + i * 16 + 8, 8);

        k1 *= c1; k1 = rotl64(k1, 31); k1 *= c2; h1 ^= k1;
        h1 = rotl64(h1, 27); h1 += h2; h1 = h1 * 5 + 0x52dce729;
        k2 *= c2; k2 = rotl64(k2, 33); k2 *= c1; h2 ^= k2;
        h2 = rotl64(h2, 31); h2 += h1; h2 = h2 * 5 + 0x38495ab5;
    }

    const uint8_t* tail = bytes + nblocks * 16;
    uint64_t k1 = 0, k2 = 0;
    switch (len & 15) {
        case 15: k2 ^= uint64_t(tail[14]) << 48; [[fallthrough]];
        case 14: k2 ^= uint64_t(tail[13]) << 40; [[fallthrough]];
        case 13: k2 ^= uint64_t(tail[12]) << 32; [[fallthrough]];
        case 12: k2 ^= uint64_t(tail[11]) << 24; [[fallthrough]];
        case 11: k2 ^= uint64_t(tail[10]) << 16; [[fallthrough]];
        case 10: k2 ^= uint64_t(tail[9]) << 8;   [[fallthrough]];
        case 9:  k2 ^= uint64_t(tail[8]);
                 k2 *= c2; k2 = rotl64(k2, 33); k2 *= c1; h2 ^= k2;
                 [[fallthrough]];
        case 8:  k1 ^= uint64_t(tail[7]) << 56; [[fallthrough]];
        case 7:  k1 ^= uint64_t(tail[6]) << 48; [[fallthrough]];
        case 6:  k1 ^= uint64_t(tail[5]) << 40; [[fallthrough]];
        case 5:  k1 ^= uint64_t(tail[4]) << 32; [[fallthrough]];
        case 4:  k1 ^= uint64_t(tail[3]) << 24; [[fallthrough]];
        case 3:  k1 ^= uint64_t(tail[2]) << 16; [[fallthrough]];
        case 2:  k1 ^= uint64_t(tail[1]) << 8;  [[fallthrough]];
        case 1:  k1 ^= uint64_t(tail[0]);
                 k1 *= c1; k1 = rotl64(k1, 31); k1 *= c2; h1 ^= k1;
    }

    h1 ^= uint64_t(len);
    h2 ^= uint64_t(len);
    h1 += h2;
    h2 += h1;
    h1 = fmix64(h1);
    h2 = fmix64(h2);
    h1 += h2;
    h2 += h1;
    return {h1, h2};
}

uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// ---------------------------------------------------------------- utf-8

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(char(cp));
    } else if (cp < 0x800) {
        out.push_back(char(0xC0 | (cp >> 6)));
        out.push_back(char(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(char(0xE0 | (cp >> 12)));
        out.push_back(char(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(char(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(char(0xF0 | (cp >> 18)));
        out.push_back(char(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(char(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(char(0x80 | (cp & 0x3F)));
    }
}

std::u32string decode_utf8_lossy(std::string_view text) {
    std::u32string out;
    out.reserve(text.size());
    for (size_t i = 0; i < text.size();) {
        Cp c = decode_cp(text, i);
        out.push_back(c.valid ? c.cp : char32_t(0xFFFD));
        i += c.width;
    }
    return out;
}

// ---------------------------------------------------------------- strings

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c += 32;
    return out;
}

std::string_view trim_view(std::string_view s) {
    size_t b = 0;
    while (b < s.size()) {
        Cp c = decode_cp(s, b);
        if (!c.valid || !is_space_cp(c.cp)) break;
        b += c.width;
    }
    size_t e = s.size();
    // walk from b so we land on codepoint boundaries
    size_t last_ns_end = b;
    for (size_t i = b; i < s.size();) {
        Cp c = decode_cp(s, i);
        i += c.width;
        if (!c.valid || !is_space_cp(c.cp)) last_ns_end = i;
    }
    e = last_ns_end;
    return s.substr(b, e - b);
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (size_t i = 0; i < s.size();) {
        Cp c = decode_cp(s, i);
        if (c.valid && is_space_cp(c.cp)) {
            pending_space = !out.empty();
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.append(s.substr(i, c.width));
        }
        i += c.width;
    }
    return out;
}

size_t word_unit_count(std::string_view s) {
    size_t units = 0;
    bool in_word = false;
    for (size_t i = 0; i < s.size();) {
        Cp c = decode_cp(s, i);
        i += c.width;
        if (!c.valid) { in_word = false; continue; }
        if (is_han(c.cp) || is_kana(c.cp) || is_hangul(c.cp)) {
            units++;
            in_word = false;
        } else if (is_latin_letter(c.cp) || is_ascii_digit(c.cp)) {
            if (!in_word) units++;
            in_word = true;
        } else if (is_space_cp(c.cp)) {
            in_word = false;
        }
        // punctuation neither breaks nor counts: "don't" is one unit
    }
    return units;
}

std::vector<Span> sentence_spans(std::string_view text) {
    std::vector<Span> spans;
    size_t start = 0;
    size_t i = 0;
    bool saw_content = false;  // non-whitespace seen in current span
    while (i < text.size()) {
        Cp c = decode_cp(text, i);
        if (c.valid && is_sentence_terminator(c.cp) && saw_content) {
            // consume the whole terminator run
            size_t j = i;
            while (j < text.size()) {
                Cp t = decode_cp(text, j);
                if (!t.valid || !is_sentence_terminator(t.cp)) break;
                j += t.width;
            }
            spans.push_back({start, j});
            start = j;
            i = j;
            saw_content = false;
            continue;
        }
        if (c.valid && c.cp == '\n' && !saw_content) {
            // bare newline before any content: fold into leading whitespace
        } else if (!c.valid || !is_space_cp(c.cp)) {
            saw_content = true;
        }
        i += c.width;
    }
    if (start < text.size()) spans.push_back({start, text.size()});
    return spans;
}

// Compose the frequent Latin base + combining mark pairs so that "e" + U+0301
// and the precomposed form fingerprint identically. Deliberately small table;
// anything uncovered passes through unchanged.
static char32_t compose_latin(char32_t base, char32_t mark) {
    struct Row { char32_t base, mark, out; };
    static const Row rows[] = {
        {'a', 0x300, 0xE0}, {'a', 0x301, 0xE1}, {'a', 0x302, 0xE2}, {'a', 0x303, 0xE3}, {'a', 0x308, 0xE4}, {'a', 0x30A, 0xE5},
        {'e', 0x300, 0xE8}, {'e', 0x301, 0xE9}, {'e', 0x302, 0xEA}, {'e', 0x308, 0xEB},
        {'i', 0x300, 0xEC}, {'i', 0x301, 0xED}, {'i', 0x302, 0xEE}, {'i', 0x308, 0xEF},
        {'o', 0x300, 0xF2}, {'o', 0x301, 0xF3}, {'o', 0x302, 0xF4}, {'o', 0x303, 0xF5}, {'o', 0x308, 0xF6},
        {'u', 0x300, 0xF9}, {'u', 0x301, 0xFA}, {'u', 0x302, 0xFB}, {'u', 0x308, 0xFC},
        {'n', 0x303, 0xF1}, {'c', 0x327, 0xE7}, {'y', 0x301, 0xFD}, {'y', 0x308, 0xFF},
    };
    for (const Row& r : rows)
        if (r.base == base && r.mark == mark) return r.out;
    return 0;
}

static char32_t lower_latin(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 32;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;  // Latin-1 capitals
    // Ext-A upper/lower pairs; the parity of the uppercase member flips twice
    if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) {
        if ((cp & 1) == 0) return cp + 1;
    } else if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) {
        if ((cp & 1) == 1) return cp + 1;
    } else if (cp == 0x178) {
        return 0xFF;  // Y with diaeresis
    }
    return cp;
}

std::string normalize_for_dedup(std::string_view text) {
    std::u32string cps = decode_utf8_lossy(text);
    // compose, then lowercase
    std::u32string composed;
    composed.reserve(cps.size());
    for (size_t i = 0; i < cps.size(); i++) {
        if (!composed.empty() && cps[i] >= 0x300 && cps[i] <= 0x36F) {
            char32_t c = compose_latin(composed.back(), cps[i]);
            if (c) { composed.back() = c; continue; }
        }
        composed.push_back(cps[i]);
    }
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char32_t cp : composed) {
        if (is_space_cp(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        append_utf8(out, lower_latin(cp));
    }
    return out;
}

}  // namespace ulpipe
