#pragma once
// Heuristic language identification: character-class fractions plus frequent
// English trigram/stopword tables. Deterministic, self-contained, and tuned
// against the hand-labeled snippet set in tests/.

#include <memory>
#include <string_view>

namespace ulpipe {

enum class DetectedLang { zh, en, other };

std::string_view detected_lang_name(DetectedLang lang);

struct LangVerdict {
    DetectedLang lang = DetectedLang::other;
    double confidence = 0.0;  // in [0, 1]
};

// Pluggable provider so an external identifier can replace the heuristic one.
class LangIdProvider {
public:
    virtual ~LangIdProvider() = default;
    virtual LangVerdict detect(std::string_view text) const = 0;
};

using LangIdHandle = std::shared_ptr<const LangIdProvider>;

// The shipped character-class + n-gram classifier.
LangIdHandle heuristic_langid();

// Convenience: runs the shipped classifier. Throws on empty text.
LangVerdict detect_language(std::string_view text);

inline constexpr double kDefaultLangThreshold = 0.9;

}  // namespace ulpipe
