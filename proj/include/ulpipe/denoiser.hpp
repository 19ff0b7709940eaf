#pragma once
// Denoising-instance construction: R/S/X span sampling, corruption into
// encoder/decoder id sequences with indexed mask sentinels, the inverse
// reconstruction, and stage-aware chunking of documents.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ulpipe/corpus.hpp"
#include "ulpipe/mixer.hpp"
#include "ulpipe/rng.hpp"

namespace ulpipe {

enum class DenoiseKind { R, S, X };

std::string_view denoise_kind_name(DenoiseKind kind);   // "R", "S", "X"
std::string_view denoise_sentinel(DenoiseKind kind);    // "<R>", "<S>", "<X>"

// One (mean span length, corruption ratio) setting. S-denoising has no mean:
// its single span is a fixed-ratio suffix.
struct DenoiseVariant {
    std::optional<int> mu;
    double r = 0.0;

    bool operator==(const DenoiseVariant&) const = default;
};

struct DenoiserSpec {
    DenoiseKind kind = DenoiseKind::R;
    std::vector<DenoiseVariant> variants;
    bool multi_span = true;  // false: exactly one span (S)

    bool operator==(const DenoiserSpec&) const = default;
};

// Defaults: R = [(3,0.15),(8,0.15)]; S = [(none,0.25)];
// X = [(3,0.50),(8,0.50),(64,0.50),(64,0.15)].
DenoiserSpec default_denoiser_spec(DenoiseKind kind);

void validate(const DenoiserSpec& spec);  // throws std::invalid_argument

// Contiguous token range to be masked.
struct TokenSpan {
    int start = 0;
    int length = 0;

    bool operator==(const TokenSpan&) const = default;
};

// Number of spans for an n-token sequence: max(1, round(n*r/mu)), reduced if
// that many mean-length spans cannot fit with unit gaps.
int derive_span_count(int n, int mu, double r);

struct SpanSample {
    std::vector<TokenSpan> spans;  // sorted, non-overlapping, gaps >= 1
    size_t variant = 0;            // index into spec.variants
};

// Draws spans for one n-token chunk. Multi-span kinds: span lengths come from
// a normal with mean mu and sigma = sigma_factor * mu, then get nudged so the
// total masked count is exactly round(n*r) (clamped to what fits); placements
// are uniform over all valid arrangements. S: one span of length round(r*n)
// ending at n. sigma_factor 0 is the deterministic test mode.
SpanSample sample_spans(int n, const DenoiserSpec& spec, Rng& rng, double sigma_factor = 0.25);

struct CorruptedInstance {
    std::string paradigm;  // "<R>", "<S>" or "<X>"
    TokenSeq encoder_ids;
    TokenSeq decoder_ids;
    std::vector<TokenSpan> spans;  // provenance; not serialized
    size_t variant = 0;            // provenance: which configured variant fired

    bool operator==(const CorruptedInstance&) const = default;
};

// encoder = [paradigm] ++ tokens with span i collapsed to <mask_i>;
// decoder = for each span, [<mask_i>] ++ span tokens; then <eos>.
CorruptedInstance corrupt(const TokenSeq& tokens, const std::vector<TokenSpan>& spans,
                          std::string_view paradigm);

// Inverse of corrupt: splices decoder contents back over the encoder masks.
// Throws if the decoder's sentinels do not line up with the encoder's.
TokenSeq reconstruct(const CorruptedInstance& instance);

json instance_to_json(const CorruptedInstance& instance);
CorruptedInstance instance_from_json(const json& j);  // throws on bad shape

// Mixing weights over the three kinds for Stage I.
struct DenoiseWeights {
    double r = 1.0 / 3;
    double s = 1.0 / 3;
    double x = 1.0 / 3;
};

DenoiseWeights parse_weights(std::string_view spec);  // "0.4,0.4,0.2"

// Tokens per chunk for a stage: encoder_len minus room for the paradigm token
// and the worst-case sentinel count, shrunk further if the decoder cap needs
// it. Throws when the stage cannot fit 2-token chunks.
int chunk_capacity(const StageConfig& stage, const DenoiseWeights& weights);

struct DenoiseResult {
    std::vector<CorruptedInstance> instances;
    uint64_t chunks_skipped = 0;  // final chunks shorter than 2 tokens
};

// Splits one document into chunks and corrupts each. Stage II ignores the
// weights and always applies S-denoising at ratio 0.50. Stage III is refused:
// that stage trains on instruction data, not denoising instances.
DenoiseResult build_instances(const Document& doc, const StageConfig& stage,
                              const DenoiseWeights& weights, const TokenizerHandle& tok,
                              Rng& rng, double sigma_factor = 0.25);

// Parallel map over documents; each document's RNG comes from (seed, doc id),
// so results are independent of worker count.
std::vector<CorruptedInstance> build_corpus_instances(const std::vector<Document>& docs,
                                                      const StageConfig& stage,
                                                      const DenoiseWeights& weights,
                                                      const TokenizerHandle& tok, uint64_t seed,
                                                      uint64_t& chunks_skipped, int workers = 1);

}  // namespace ulpipe
