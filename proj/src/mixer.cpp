#include "ulpipe/mixer.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ulpipe/rng.hpp"

namespace ulpipe {

std::string_view stage_name(Stage stage) {
    switch (stage) {
        case Stage::I: return "I";
        case Stage::II: return "II";
        case Stage::III: return "III";
    }
    return "?";
}

std::optional<Stage> stage_from(std::string_view name) {
    if (name == "I") return Stage::I;
    if (name == "II") return Stage::II;
    if (name == "III") return Stage::III;
    return std::nullopt;
}

StageConfig default_stage_config(Stage stage) {
    switch (stage) {
        case Stage::I: return {Stage::I, 570, 380, 4096, 300'000'000'000};
        case Stage::II: return {Stage::II, 1024, 1024, 1024, 40'000'000'000};
        case Stage::III: return {Stage::III, 1024, 256, 1024, 40'000'000'000};
    }
    throw std::invalid_argument("unknown stage");
}

void validate(const StageConfig& config) {
    if (config.encoder_len <= 0 || config.decoder_len <= 0 || config.batch_size <= 0 ||
        config.token_budget <= 0)
        throw std::invalid_argument("stage config fields must be positive");
}

MixturePlan plan_mixture(const MixtureShares& shares, int64_t budget) {
    const std::array<double, 3> s = {shares.zh, shares.en, shares.code};
    double sum = 0.0;
    for (double v : s) {
        if (v < 0.0) throw std::invalid_argument("negative mixture share");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("mixture shares must sum to 1, got " + std::to_string(sum));
    if (budget < 0) throw std::invalid_argument("negative token budget");

    std::array<int64_t, 3> out{};
    std::array<double, 3> frac{};
    int64_t assigned = 0;
    for (size_t i = 0; i < 3; ++i) {
        double exact = s[i] * double(budget);
        out[i] = int64_t(std::floor(exact));
        frac[i] = exact - double(out[i]);
        assigned += out[i];
    }
    // Largest remainder takes the leftover units; ties resolve in field order.
    for (int64_t left = budget - assigned; left > 0; --left) {
        size_t best = 0;
        for (size_t i = 1; i < 3; ++i)
            if (frac[i] > frac[best]) best = i;
        ++out[best];
        frac[best] = -1.0;
    }

    MixturePlan plan;
    plan.shares = shares;
    plan.budget = budget;
    plan.zh_tokens = out[0];
    plan.en_tokens = out[1];
    plan.code_tokens = out[2];
    return plan;
}

MixtureShares parse_shares(std::string_view spec) {
    std::array<double, 3> vals{};
    size_t pos = 0;
    for (size_t i = 0; i < 3; ++i) {
        size_t comma = spec.find(',', pos);
        bool last = i == 2;
        if (last != (comma == std::string_view::npos))
            throw std::invalid_argument("shares must have exactly three components");
        std::string item(trim_view(spec.substr(pos, last ? std::string_view::npos : comma - pos)));
        size_t used = 0;
        vals[i] = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad share value: " + item);
        pos = comma + 1;
    }
    return {vals[0], vals[1], vals[2]};
}

int64_t token_count(const Document& doc, const Tokenizer& tok) {
    return int64_t(tok.encode(doc.text).ids.size());
}

std::vector<Document> sample_mixture(std::vector<Document> zh, std::vector<Document> en,
                                     std::vector<Document> code, const MixturePlan& plan,
                                     const TokenizerHandle& tok, uint64_t seed) {
    struct Component {
        const char* name;
        std::vector<Document> docs;
        int64_t planned = 0;
        int64_t realized = 0;
        size_t pos = 0;
    };
    std::array<Component, 3> comps = {
        Component{"zh", std::move(zh), plan.zh_tokens},
        Component{"en", std::move(en), plan.en_tokens},
        Component{"code", std::move(code), plan.code_tokens},
    };
    for (Component& c : comps) {
        Rng rng(derive_seed(seed, std::string("mixture/") + c.name));
        rng.shuffle(c.docs);
    }

    std::vector<Document> out;
    for (;;) {
        // The component with the largest outstanding fraction of its budget
        // goes next; field order breaks ties.
        Component* next = nullptr;
        double best = 0.0;
        for (Component& c : comps) {
            if (c.realized >= c.planned) continue;
            double outstanding = double(c.planned - c.realized) / double(c.planned);
            if (next == nullptr || outstanding > best) {
                next = &c;
                best = outstanding;
            }
        }
        if (next == nullptr) break;
        if (next->pos == next->docs.size())
            throw std::runtime_error(std::string("component ") + next->name +
                                     " exhausted with " +
                                     std::to_string(next->planned - next->realized) +
                                     " of " + std::to_string(next->planned) +
                                     " tokens still needed");
        Document doc = std::move(next->docs[next->pos++]);
        next->realized += token_count(doc, *tok);
        out.push_back(std::move(doc));
    }
    return out;
}

std::map<Stage, std::vector<Document>> partition_stages(const std::vector<Document>& docs,
                                                        const std::map<Stage, int64_t>& budgets,
                                                        const TokenizerHandle& tok) {
    for (const auto& [stage, budget] : budgets)
        if (budget < 0) throw std::invalid_argument("negative budget for stage " +
                                                    std::string(stage_name(stage)));

    std::map<Stage, std::vector<Document>> out;
    size_t pos = 0;
    for (const auto& [stage, budget] : budgets) {
        std::vector<Document>& set = out[stage];
        int64_t got = 0;
        while (got < budget) {
            if (pos == docs.size())
                throw std::runtime_error("corpus exhausted filling stage " +
                                         std::string(stage_name(stage)) + ": " +
                                         std::to_string(budget - got) + " of " +
                                         std::to_string(budget) + " tokens still needed");
            got += token_count(docs[pos], *tok);
            set.push_back(docs[pos++]);
        }
    }
    return out;
}

std::map<Stage, int64_t> parse_stage_budgets(std::string_view spec) {
    std::map<Stage, int64_t> out;
    size_t pos = 0;
    while (pos <= spec.size()) {
        size_t comma = spec.find(',', pos);
        std::string_view item = trim_view(spec.substr(
            pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        size_t eq = item.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("budget entry needs stage=tokens: " + std::string(item));
        auto stage = stage_from(trim_view(item.substr(0, eq)));
        if (!stage) throw std::invalid_argument("unknown stage: " + std::string(item));
        std::string num(trim_view(item.substr(eq + 1)));
        size_t used = 0;
        int64_t v = std::stoll(num, &used);
        if (used != num.size() || v < 0)
            throw std::invalid_argument("bad token budget: " + num);
        if (!out.emplace(*stage, v).second)
            throw std::invalid_argument("duplicate stage in budgets: " +
                                        std::string(stage_name(*stage)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty stage budgets");
    return out;
}

}  // namespace ulpipe
