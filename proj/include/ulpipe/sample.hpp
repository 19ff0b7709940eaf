#pragma once
// Deterministic synthetic corpus for tests, benchmarks and the demo pipeline:
// combinatorial sentence templates per language with controlled rates of
// exact-duplicate documents, shared boilerplate paragraphs, and scrubbing
// targets (emails, URLs, markup).

#include <cstdint>
#include <vector>

#include "ulpipe/corpus.hpp"
#include "ulpipe/flan.hpp"

namespace ulpipe {

struct SampleOptions {
    size_t docs = 400;
    double dup_rate = 0.02;          // exact copy of an earlier document
    double boilerplate_rate = 0.05;  // shared paragraph appended verbatim
    double noise_rate = 0.02;        // privacy/markup fragments worth scrubbing
    uint64_t seed = 1;
};

// One component stream (zh, en or code); fully determined by the options.
std::vector<Document> make_sample_component(Lang lang, const SampleOptions& opts);

// Instruction records for the demo pipeline's third training stage. English
// rotates through a free task taxonomy; Chinese sticks to curated labels so
// every record passes validation. Answers are derived mechanically from the
// same sentence parts as the input, so they are internally consistent.
std::vector<FlanRecord> make_sample_flan(Lang lang, size_t count, uint64_t seed);

}  // namespace ulpipe
