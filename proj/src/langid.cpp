#include "ulpipe/langid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "ulpipe/text.hpp"

namespace ulpipe {

std::string_view detected_lang_name(DetectedLang lang) {
    switch (lang) {
        case DetectedLang::zh: return "zh";
        case DetectedLang::en: return "en";
        default: return "other";
    }
}

namespace {

// heterogeneous lookup so membership tests take string_view without allocating
struct SvHash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const noexcept {
        return std::hash<std::string_view>{}(s);
    }
};
using WordSet = std::unordered_set<std::string, SvHash, std::equal_to<>>;

// frequent interior trigrams of English words
const WordSet& trigram_table() {
    static const WordSet t = {
        "the", "and", "ing", "ion", "tio", "ent", "ati", "for", "her", "ter",
        "hat", "tha", "ere", "ate", "his", "con", "res", "ver", "all", "ons",
        "nce", "men", "ith", "ted", "ers", "pro", "thi", "wit", "are", "ess",
        "not", "ive", "was", "ect", "rea", "com", "eve", "per", "int", "est",
        "sta", "cti", "ica", "ist", "ear", "ain", "one", "our", "iti", "rat",
        "ell", "ant", "str", "ort", "ure", "ble", "nte", "rom", "oth", "ine",
        "era", "igh", "ght", "ave", "ous", "ome", "und", "enc", "ore", "han",
        "nde", "lan", "hin", "out", "ide", "ies", "ack", "ver", "ard", "ity",
        "ould", "ough",  // len-4 entries are checked against 4-grams below
    };
    return t;
}

const WordSet& stopword_table() {
    static const WordSet t = {
        "the", "of", "and", "a", "to", "in", "is", "you", "that", "it",
        "he", "was", "for", "on", "are", "as", "with", "his", "they", "i",
        "at", "be", "this", "have", "from", "or", "one", "had", "by", "but",
        "not", "what", "all", "were", "we", "when", "your", "can", "said",
        "there", "use", "an", "each", "which", "she", "do", "how", "their",
        "if", "will", "up", "other", "about", "out", "many", "then", "them",
        "these", "so", "some", "her", "would", "make", "like", "him", "into",
        "time", "has", "look", "two", "more", "go", "see", "no", "way",
        "could", "people", "my", "than", "first", "who", "its", "now", "over",
        "after", "before", "never", "again", "under", "while", "where",
    };
    return t;
}

struct Features {
    size_t han = 0, kana = 0, hangul = 0, latin = 0, other = 0, junk = 0;
    size_t punct = 0, digit = 0;
    size_t significant() const { return han + kana + hangul + latin + other + junk; }
    size_t tri_total = 0, tri_hits = 0;
    size_t words = 0, stop_hits = 0;
};

Features extract(std::string_view text) {
    Features f;
    std::string word;  // current ascii-lowercased latin word
    auto flush_word = [&]() {
        if (word.empty()) return;
        f.words++;
        if (stopword_table().count(word)) f.stop_hits++;
        if (word.size() >= 3) {
            const auto& tri = trigram_table();
            std::string_view w(word);
            for (size_t k = 0; k + 3 <= w.size(); k++) {
                f.tri_total++;
                if (tri.count(w.substr(k, 3))) f.tri_hits++;
                if (k + 4 <= w.size() && tri.count(w.substr(k, 4))) f.tri_hits++;
            }
        }
        word.clear();
    };
    // ASCII classifies through a table built from the same predicates the
    // decoded path uses, so both paths agree byte-for-byte.
    enum class Ascii : uint8_t { junk, letter, digit, space, punct };
    struct AsciiClass {
        Ascii cat;
        char lower;
    };
    static const auto ascii_class = [] {
        std::array<AsciiClass, 128> t{};
        for (char32_t cp = 0; cp < 128; cp++) {
            AsciiClass a{Ascii::punct, 0};
            if (is_junk_cp(cp, true)) {
                a.cat = Ascii::junk;
            } else if (is_latin_letter(cp)) {
                a.cat = Ascii::letter;
                a.lower = char(cp >= 'A' && cp <= 'Z' ? cp + 32 : cp);
            } else if (is_ascii_digit(cp)) {
                a.cat = Ascii::digit;
            } else if (is_space_cp(cp)) {
                a.cat = Ascii::space;
            }
            t[cp] = a;
        }
        return t;
    }();
    for (size_t i = 0; i < text.size();) {
        const uint8_t b = uint8_t(text[i]);
        if (b < 0x80) {
            const AsciiClass a = ascii_class[b];
            i++;
            switch (a.cat) {
                case Ascii::letter:
                    f.latin++;
                    word.push_back(a.lower);
                    continue;
                case Ascii::digit:
                    f.digit++;
                    break;
                case Ascii::space:
                    break;
                case Ascii::punct:
                    f.punct++;
                    break;
                case Ascii::junk:
                    f.junk++;
                    break;
            }
            flush_word();
            continue;
        }
        Cp c = decode_cp(text, i);
        i += c.width;
        if (is_junk_cp(c.cp, c.valid)) {
            f.junk++;
            flush_word();
            continue;
        }
        char32_t cp = c.cp;
        if (is_han(cp)) {
            f.han++;
            flush_word();
        } else if (is_kana(cp)) {
            f.kana++;
            flush_word();
        } else if (is_hangul(cp) || (cp >= 0x3130 && cp <= 0x318F)) {  // incl. jamo compat
            f.hangul++;
            flush_word();
        } else if (is_latin_letter(cp)) {
            f.latin++;
            if (cp < 0x80)
                word.push_back(char(cp >= 'A' && cp <= 'Z' ? cp + 32 : cp));
        } else if (is_other_letter(cp) || (cp >= 0x660 && cp <= 0x669)) {  // arabic digits
            f.other++;
            flush_word();
        } else if (is_ascii_digit(cp)) {
            f.digit++;
            flush_word();
        } else {
            if (!is_space_cp(cp)) f.punct++;
            flush_word();
        }
    }
    flush_word();
    return f;
}

class HeuristicLangId : public LangIdProvider {
public:
    LangVerdict detect(std::string_view text) const override {
        Features f = extract(text);
        const double sig = double(f.significant());
        if (sig == 0) return {DetectedLang::other, 0.0};

        const double junk_frac = double(f.junk) / sig;
        const double penalty = std::max(0.0, 1.0 - 2.5 * junk_frac);

        double zh = penalty * std::max(0.0, double(f.han) - double(f.kana) - double(f.hangul)) / sig;

        const double latin_frac = double(f.latin) / sig;
        const double hr = f.tri_total ? double(f.tri_hits) / double(f.tri_total) : 0.0;
        const double sr = f.words ? double(f.stop_hits) / double(f.words) : 0.0;
        const double quality = std::min(1.0, 0.60 * std::min(1.0, hr / 0.14) +
                                             0.55 * std::min(1.0, sr / 0.20));
        // prose carries a few percent punctuation; symbol soup carries far more
        const double punct_frac = double(f.punct) / (sig + double(f.punct + f.digit));
        const double symbol_penalty = std::max(0.0, 1.0 - 2.0 * std::max(0.0, punct_frac - 0.08));
        double en = penalty * symbol_penalty * latin_frac * quality;

        double other = penalty * double(f.kana + f.hangul + f.other) / sig;

        LangVerdict v;
        if (zh >= en && zh >= other) {
            v = {DetectedLang::zh, zh};
        } else if (en >= other) {
            v = {DetectedLang::en, en};
        } else {
            v = {DetectedLang::other, other};
        }
        v.confidence = std::clamp(v.confidence, 0.0, 1.0);
        return v;
    }
};

}  // namespace

LangIdHandle heuristic_langid() {
    static LangIdHandle h = std::make_shared<HeuristicLangId>();
    return h;
}

LangVerdict detect_language(std::string_view text) {
    if (text.empty())
        throw std::invalid_argument("detect_language: empty text");
    return heuristic_langid()->detect(text);
}

}  // namespace ulpipe
