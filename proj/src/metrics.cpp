#include "ulpipe/metrics.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "ulpipe/mixer.hpp"
#include "ulpipe/par.hpp"
#include "ulpipe/rng.hpp"

namespace ulpipe {

double carbon_emission(double mwh) {
    if (!(mwh >= 0.0)) throw std::invalid_argument("carbon_emission: MWh must be >= 0");
    return mwh * kGridEmissionFactor;
}

double carbon_emission(double mwh, double pue, double grid_intensity) {
    if (!(mwh >= 0.0)) throw std::invalid_argument("carbon_emission: MWh must be >= 0");
    if (!(pue >= 1.0)) throw std::invalid_argument("carbon_emission: PUE must be >= 1");
    if (!(grid_intensity >= 0.0))
        throw std::invalid_argument("carbon_emission: grid intensity must be >= 0");
    return mwh * pue * grid_intensity;
}

double token_accuracy(const TokenSeq& predicted, const TokenSeq& gold) {
    if (predicted.size() != gold.size())
        throw std::invalid_argument("token_accuracy: sequence lengths differ");
    if (predicted.empty()) throw std::invalid_argument("token_accuracy: empty sequences");
    size_t hits = 0;
    for (size_t i = 0; i < predicted.size(); ++i)
        if (predicted.ids[i] == gold.ids[i]) ++hits;
    return double(hits) / double(predicted.size());
}

// ---- validation sets ----

std::map<std::string, ValidationSet> build_validation_sets(
    const std::vector<Document>& docs, const std::vector<DenoiserSpec>& specs, size_t size_per_set,
    uint64_t seed, const TokenizerHandle& tok) {
    if (!tok) throw std::invalid_argument("build_validation_sets: null tokenizer");
    if (specs.empty()) throw std::invalid_argument("build_validation_sets: no denoiser specs");
    if (size_per_set == 0) throw std::invalid_argument("build_validation_sets: size must be > 0");

    // one pass per set: a single-kind weight vector, plus the uniform mix
    struct SetPlan {
        std::string name;
        DenoiseWeights weights;
    };
    std::vector<SetPlan> plans;
    std::set<DenoiseKind> seen;
    for (const DenoiserSpec& spec : specs) {
        validate(spec);
        if (!seen.insert(spec.kind).second)
            throw std::invalid_argument("build_validation_sets: duplicate denoiser kind");
        DenoiseWeights w{0, 0, 0};
        (spec.kind == DenoiseKind::R ? w.r : spec.kind == DenoiseKind::S ? w.s : w.x) = 1.0;
        plans.push_back({std::string(denoise_kind_name(spec.kind)), w});
    }
    double u = 1.0 / double(plans.size());
    DenoiseWeights mixed{0, 0, 0};
    for (const DenoiserSpec& spec : specs)
        (spec.kind == DenoiseKind::R ? mixed.r : spec.kind == DenoiseKind::S ? mixed.s : mixed.x) = u;
    plans.push_back({"mixed", mixed});

    std::vector<size_t> order(docs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng shuffle_rng(derive_seed(seed, "valsets"));
    shuffle_rng.shuffle(order);

    StageConfig stage = default_stage_config(Stage::I);
    std::map<std::string, ValidationSet> sets;
    size_t cursor = 0;
    for (const SetPlan& plan : plans) {
        ValidationSet set;
        while (set.instances.size() < size_per_set) {
            if (cursor == order.size())
                throw std::runtime_error("build_validation_sets: corpus exhausted building set " +
                                         plan.name + " with " + std::to_string(set.instances.size()) +
                                         " of " + std::to_string(size_per_set) + " instances");
            const Document& doc = docs[order[cursor++]];
            Rng rng(derive_seed(seed, "valsets/" + plan.name + "/" + doc.id));
            DenoiseResult result = build_instances(doc, stage, plan.weights, tok, rng);
            if (result.instances.empty()) continue;  // too short to yield anything
            set.doc_ids.push_back(doc.id);
            for (CorruptedInstance& inst : result.instances) {
                if (set.instances.size() == size_per_set) break;
                set.instances.push_back(std::move(inst));
            }
        }
        sets.emplace(plan.name, std::move(set));
    }
    return sets;
}

std::map<std::string, ValidationSet> build_validation_sets(const std::vector<Document>& docs,
                                                           size_t size_per_set, uint64_t seed,
                                                           const TokenizerHandle& tok) {
    return build_validation_sets(docs,
                                 {default_denoiser_spec(DenoiseKind::R),
                                  default_denoiser_spec(DenoiseKind::S),
                                  default_denoiser_spec(DenoiseKind::X)},
                                 size_per_set, seed, tok);
}

// ---- corpus composition ----

CorpusStats corpus_stats(const std::vector<Document>& docs, const TokenizerHandle& tok,
                         int workers) {
    if (!tok) throw std::invalid_argument("corpus_stats: null tokenizer");
    std::vector<int64_t> counts = parallel_transform(
        docs, [&](const Document& doc) { return token_count(doc, *tok); }, workers);

    CorpusStats stats;
    stats.total_documents = docs.size();
    for (size_t i = 0; i < docs.size(); ++i) {
        ComponentStats& comp = stats.components[std::string(lang_name(docs[i].lang))];
        comp.documents += 1;
        comp.tokens += uint64_t(counts[i]);
        stats.total_tokens += uint64_t(counts[i]);
    }
    if (stats.total_tokens > 0)
        for (auto& [name, comp] : stats.components)
            comp.share = double(comp.tokens) / double(stats.total_tokens);
    return stats;
}

json stats_to_json(const CorpusStats& stats) {
    json components;
    for (const auto& [name, comp] : stats.components) {
        json c;
        c["documents"] = comp.documents;
        c["tokens"] = comp.tokens;
        c["share"] = comp.share;
        components[name] = std::move(c);
    }
    json j;
    j["total_documents"] = stats.total_documents;
    j["total_tokens"] = stats.total_tokens;
    j["components"] = std::move(components);
    j["filter_removed"] = stats.filter_removed;
    j["dedup_docs_removed"] = stats.dedup_docs_removed;
    j["dedup_windows_removed"] = stats.dedup_windows_removed;
    return j;
}

}  // namespace ulpipe
