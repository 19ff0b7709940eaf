#pragma once
// Low-level text utilities shared by every stage: UTF-8 decoding, character
// classification via range tables, 128-bit hashing, and the normalization
// used for duplicate detection.

#include <cstdint>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ulpipe {

// ---- 128-bit fingerprint ----

struct U128 {
    uint64_t lo = 0;
    uint64_t hi = 0;
    bool operator==(const U128&) const = default;
};

struct U128Hash {
    size_t operator()(const U128& v) const noexcept {
        return size_t(v.lo ^ (v.hi * 0x9e3779b97f4a7c15ull));
    }
};

// MurmurHash3 x64 128-bit variant (public-domain algorithm by Austin Appleby).
U128 murmur3_128(const void* data, size_t len, uint64_t seed);
inline U128 murmur3_128(std::string_view s, uint64_t seed = 0) {
    return murmur3_128(s.data(), s.size(), seed);
}
inline uint64_t hash64(std::string_view s, uint64_t seed = 0) {
    return murmur3_128(s, seed).lo;
}

// splitmix64 finalizer; good avalanche for combining small integers.
uint64_t mix64(uint64_t x);

// ---- UTF-8 ----

// One decoded scalar. `valid == false` means an ill-formed byte was consumed
// (cp is the raw byte value in that case, width is 1).
struct Cp {
    char32_t cp = 0;
    uint8_t width = 0;
    bool valid = true;
};

// Decodes the codepoint starting at text[i]; never reads past the end.
// Inline: every per-character loop in the library funnels through here.
inline Cp decode_cp(std::string_view text, size_t i) {
    const uint8_t b0 = uint8_t(text[i]);
    const size_t left = text.size() - i;
    if (b0 < 0x80) return {b0, 1, true};
    auto bad = [&]() -> Cp { return {b0, 1, false}; };
    if (b0 < 0xC2) return bad();  // continuation byte or overlong lead
    auto cont = [&](size_t k) {
        return k < left && (uint8_t(text[i + k]) & 0xC0) == 0x80;
    };
    if (b0 < 0xE0) {
        if (!cont(1)) return bad();
        char32_t cp = (char32_t(b0 & 0x1F) << 6) | (uint8_t(text[i + 1]) & 0x3F);
        return {cp, 2, true};
    }
    if (b0 < 0xF0) {
        if (!cont(1) || !cont(2)) return bad();
        char32_t cp = (char32_t(b0 & 0x0F) << 12) |
                      (char32_t(uint8_t(text[i + 1]) & 0x3F) << 6) |
                      (uint8_t(text[i + 2]) & 0x3F);
        if (cp < 0x800) return bad();
        if (cp >= 0xD800 && cp <= 0xDFFF) return bad();  // surrogate
        return {cp, 3, true};
    }
    if (b0 < 0xF5) {
        if (!cont(1) || !cont(2) || !cont(3)) return bad();
        char32_t cp = (char32_t(b0 & 0x07) << 18) |
                      (char32_t(uint8_t(text[i + 1]) & 0x3F) << 12) |
                      (char32_t(uint8_t(text[i + 2]) & 0x3F) << 6) |
                      (uint8_t(text[i + 3]) & 0x3F);
        if (cp < 0x10000 || cp > 0x10FFFF) return bad();
        return {cp, 4, true};
    }
    return bad();
}

// Appends cp to out as UTF-8.
void append_utf8(std::string& out, char32_t cp);

// Decodes the whole string, replacing ill-formed bytes with U+FFFD.
std::u32string decode_utf8_lossy(std::string_view text);

// ---- character classes ----
// Inline range checks; hot in filtering, language id and dedup.

// Unicode whitespace incl. U+3000.
inline bool is_space_cp(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
        case 0x20: case 0xA0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

// CJK unified ideographs (+ext A, compat).
inline bool is_han(char32_t cp) {
    return (cp >= 0x4E00 && cp <= 0x9FFF) ||
           (cp >= 0x3400 && cp <= 0x4DBF) ||
           (cp >= 0xF900 && cp <= 0xFAFF) ||
           (cp >= 0x20000 && cp <= 0x2A6DF);
}

inline bool is_kana(char32_t cp) {
    return (cp >= 0x3040 && cp <= 0x309F) || (cp >= 0x30A0 && cp <= 0x30FF);
}

inline bool is_hangul(char32_t cp) {
    return (cp >= 0xAC00 && cp <= 0xD7AF) || (cp >= 0x1100 && cp <= 0x11FF);
}

// ASCII letters + Latin-1/Ext-A/Ext-B letters.
inline bool is_latin_letter(char32_t cp) {
    if ((cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z')) return true;
    if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
    return false;
}

inline bool is_ascii_digit(char32_t cp) {
    return cp >= '0' && cp <= '9';
}

// Greek/Cyrillic/Armenian/Hebrew/Arabic/Devanagari/Thai letters.
inline bool is_other_letter(char32_t cp) {
    return (cp >= 0x370 && cp <= 0x3FF) ||   // Greek
           (cp >= 0x400 && cp <= 0x4FF) ||   // Cyrillic
           (cp >= 0x530 && cp <= 0x58F) ||   // Armenian
           (cp >= 0x590 && cp <= 0x5FF) ||   // Hebrew
           (cp >= 0x600 && cp <= 0x6FF) ||   // Arabic
           (cp >= 0x900 && cp <= 0x97F) ||   // Devanagari
           (cp >= 0xE00 && cp <= 0xE7F);     // Thai
}

// Controls, zero-width, PUA, noncharacters, U+FFFD.
inline bool is_junk_cp(char32_t cp, bool valid) {
    if (!valid) return true;
    // no junk between the bidi controls and the surrogate block; this band
    // holds all of han/kana/hangul, the overwhelmingly common case
    if (cp >= 0x2065 && cp < 0xD800) return false;
    if (cp == 0xFFFD) return true;
    if (cp < 0x20 && cp != 0x09 && cp != 0x0A && cp != 0x0D) return true;
    if (cp >= 0x7F && cp <= 0x9F) return true;                    // DEL + C1
    if (cp == 0xAD) return true;                                  // soft hyphen
    if (cp >= 0x200B && cp <= 0x200F) return true;                // zero width / bidi
    if (cp >= 0x202A && cp <= 0x202E) return true;
    if (cp >= 0x2060 && cp <= 0x2064) return true;
    if (cp == 0xFEFF) return true;
    if (cp >= 0xE000 && cp <= 0xF8FF) return true;                // private use
    if (cp >= 0xF0000) return true;                               // PUA planes 15/16
    if (cp >= 0xFDD0 && cp <= 0xFDEF) return true;                // noncharacters
    if ((cp & 0xFFFE) == 0xFFFE) return true;
    return false;
}

// Survives internet cleaning.
inline bool is_clean_allowed(char32_t cp) {
    if (is_junk_cp(cp, true)) return false;
    if (cp >= 0x20 && cp <= 0x7E) return true;       // printable ASCII
    if (is_kana(cp) || is_hangul(cp) || is_han(cp)) return true;
    if (cp == 0x09 || cp == 0x0A || cp == 0x0D) return true;
    if (is_space_cp(cp)) return true;
    if (cp >= 0xA1 && cp <= 0x2AF) return true;      // Latin suppl/ext, IPA
    if (cp >= 0x300 && cp <= 0x36F) return true;     // combining marks
    if (is_other_letter(cp)) return true;
    if (cp >= 0x2010 && cp <= 0x205E) return true;   // general punctuation
    if (cp >= 0x20A0 && cp <= 0x20BF) return true;   // currency
    if (cp >= 0x2100 && cp <= 0x22FF) return true;   // letterlike, arrows, math
    if (cp >= 0x3001 && cp <= 0x303F) return true;   // CJK punctuation
    if (cp >= 0xFF00 && cp <= 0xFFEF) return true;   // fullwidth forms
    return false;
}

// . ! ? fullwidth 。！？； or newline.
inline bool is_sentence_terminator(char32_t cp) {
    switch (cp) {
        case '.': case '!': case '?': case '\n':
        case 0x3002:   // fullwidth period
        case 0xFF01:   // fullwidth !
        case 0xFF1F:   // fullwidth ?
        case 0xFF1B:   // fullwidth ;
            return true;
        default:
            return false;
    }
}

// ---- basic string ops ----

std::string to_lower_ascii(std::string_view s);
std::string_view trim_view(std::string_view s);          // strips Unicode whitespace
std::string collapse_whitespace(std::string_view s);     // runs of whitespace -> one space, then trim

// Number of word units in a sentence: whitespace-delimited Latin/digit tokens
// count one each, han/kana/hangul characters count one each.
size_t word_unit_count(std::string_view s);

// ---- sentence spans ----

// Partition of `text` into byte ranges [begin, end). A run of sentence
// terminators closes a span (the run is included); whitespace after a break
// leads the next span. Concatenating all spans reproduces `text` exactly.
struct Span {
    size_t begin = 0;
    size_t end = 0;
};
std::vector<Span> sentence_spans(std::string_view text);

// Normalization applied before fingerprinting for duplicate detection:
// compose common Latin base+combining-mark pairs, lowercase Latin,
// collapse whitespace runs, trim. Chinese text passes through untouched
// apart from whitespace handling.
std::string normalize_for_dedup(std::string_view text);

}  // namespace ulpipe
