#pragma once
// Closed-form reporting: training carbon footprint, next-token accuracy,
// validation-set construction, and corpus composition statistics.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ulpipe/corpus.hpp"
#include "ulpipe/denoiser.hpp"

namespace ulpipe {

// Grid emission factor in tCO2eq per MWh with the data-center PUE folded in
// (1.1 PUE x 0.35 grid average).
inline constexpr double kGridEmissionFactor = 0.385;
inline constexpr double kDefaultPue = 1.1;
inline constexpr double kDefaultGridIntensity = 0.35;  // tCO2eq per MWh at the meter

// tCO2eq for a training run's energy. Throws on negative input.
double carbon_emission(double mwh);
double carbon_emission(double mwh, double pue, double grid_intensity);

// Fraction of positions where the already-argmaxed prediction matches gold.
// Throws on length mismatch or empty sequences.
double token_accuracy(const TokenSeq& predicted, const TokenSeq& gold);

// ---- validation sets ----

struct ValidationSet {
    std::vector<CorruptedInstance> instances;
    std::vector<std::string> doc_ids;  // source documents consumed by this set

    bool operator==(const ValidationSet&) const = default;
};

// One held-out set per denoising kind plus a "mixed" set drawing kinds
// uniformly; sets never share a source document and are deterministic under
// the seed. Throws when the corpus cannot fill every set.
std::map<std::string, ValidationSet> build_validation_sets(
    const std::vector<Document>& docs, const std::vector<DenoiserSpec>& specs, size_t size_per_set,
    uint64_t seed, const TokenizerHandle& tok);

// Convenience: the three standard kinds.
std::map<std::string, ValidationSet> build_validation_sets(const std::vector<Document>& docs,
                                                           size_t size_per_set, uint64_t seed,
                                                           const TokenizerHandle& tok);

// ---- corpus composition ----

struct ComponentStats {
    uint64_t documents = 0;
    uint64_t tokens = 0;
    double share = 0.0;  // of total tokens

    bool operator==(const ComponentStats&) const = default;
};

struct CorpusStats {
    std::map<std::string, ComponentStats> components;  // keyed by language name
    uint64_t total_documents = 0;
    uint64_t total_tokens = 0;
    // removal counters filled in by the pipeline stages that did the removing
    uint64_t filter_removed = 0;
    uint64_t dedup_docs_removed = 0;
    uint64_t dedup_windows_removed = 0;

    bool operator==(const CorpusStats&) const = default;
};

CorpusStats corpus_stats(const std::vector<Document>& docs, const TokenizerHandle& tok,
                         int workers = 1);

json stats_to_json(const CorpusStats& stats);

}  // namespace ulpipe
