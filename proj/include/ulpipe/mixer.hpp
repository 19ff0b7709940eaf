#pragma once
// Mixture planning across the three corpus components and sequential
// partitioning of a stream into disjoint per-stage datasets.

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "ulpipe/corpus.hpp"

namespace ulpipe {

enum class Stage { I, II, III };

std::string_view stage_name(Stage stage);
std::optional<Stage> stage_from(std::string_view name);

// One training stage: context lengths, batch size and token budget.
struct StageConfig {
    Stage stage = Stage::I;
    int encoder_len = 0;
    int decoder_len = 0;
    int batch_size = 0;
    int64_t token_budget = 0;

    bool operator==(const StageConfig&) const = default;
};

// Defaults: I = 570/380, batch 4096, 300B tokens; II = 1024/1024, 1024, 40B;
// III = 1024/256, 1024, 40B.
StageConfig default_stage_config(Stage stage);

void validate(const StageConfig& config);  // throws std::invalid_argument

struct MixtureShares {
    double zh = 0.475;
    double en = 0.475;
    double code = 0.05;
};

struct MixturePlan {
    MixtureShares shares;
    int64_t budget = 0;
    // Largest-remainder split of `budget`; always sums to budget exactly.
    int64_t zh_tokens = 0;
    int64_t en_tokens = 0;
    int64_t code_tokens = 0;
};

// Validates shares (non-negative, sum 1 within 1e-9) and splits the budget.
MixturePlan plan_mixture(const MixtureShares& shares, int64_t budget);

// "0.475,0.475,0.05" -> shares (zh, en, code order).
MixtureShares parse_shares(std::string_view spec);

int64_t token_count(const Document& doc, const Tokenizer& tok);

// Emits documents until every component first reaches its planned budget.
// Each component's stream is shuffled with a seed-derived permutation, then
// consumed without replacement; components interleave by largest fraction of
// budget still outstanding. Throws if a stream exhausts before its budget.
std::vector<Document> sample_mixture(std::vector<Document> zh, std::vector<Document> en,
                                     std::vector<Document> code, const MixturePlan& plan,
                                     const TokenizerHandle& tok, uint64_t seed);

// Fills stages in order I, II, III from the stream front, stopping each stage
// at the document that crosses its budget. Sets are disjoint by construction;
// leftover documents are unassigned. Throws if the stream runs out while a
// positive budget is unmet.
std::map<Stage, std::vector<Document>> partition_stages(const std::vector<Document>& docs,
                                                        const std::map<Stage, int64_t>& budgets,
                                                        const TokenizerHandle& tok);

// "I=300,II=40" -> {Stage::I: 300, Stage::II: 40}.
std::map<Stage, int64_t> parse_stage_budgets(std::string_view spec);

}  // namespace ulpipe
