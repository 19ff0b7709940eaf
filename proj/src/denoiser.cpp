#include "ulpipe/denoiser.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "ulpipe/par.hpp"

namespace ulpipe {

std::string_view denoise_kind_name(DenoiseKind kind) {
    switch (kind) {
        case DenoiseKind::R: return "R";
        case DenoiseKind::S: return "S";
        case DenoiseKind::X: return "X";
    }
    return "?";
}

std::string_view denoise_sentinel(DenoiseKind kind) {
    switch (kind) {
        case DenoiseKind::R: return "<R>";
        case DenoiseKind::S: return "<S>";
        case DenoiseKind::X: return "<X>";
    }
    return "?";
}

DenoiserSpec default_denoiser_spec(DenoiseKind kind) {
    switch (kind) {
        case DenoiseKind::R:
            return {DenoiseKind::R, {{3, 0.15}, {8, 0.15}}, true};
        case DenoiseKind::S:
            return {DenoiseKind::S, {{std::nullopt, 0.25}}, false};
        case DenoiseKind::X:
            return {DenoiseKind::X, {{3, 0.50}, {8, 0.50}, {64, 0.50}, {64, 0.15}}, true};
    }
    throw std::invalid_argument("unknown denoise kind");
}

void validate(const DenoiserSpec& spec) {
    if (spec.variants.empty()) throw std::invalid_argument("denoiser spec has no variants");
    for (const DenoiseVariant& v : spec.variants) {
        if (v.r <= 0.0 || v.r >= 1.0)
            throw std::invalid_argument("corruption ratio must be in (0,1)");
        if (spec.multi_span) {
            if (!v.mu.has_value() || *v.mu < 1)
                throw std::invalid_argument("multi-span variant needs a mean length >= 1");
        } else if (v.mu.has_value()) {
            throw std::invalid_argument("single-span variant must not carry a mean length");
        }
    }
    if (!spec.multi_span && spec.variants.size() != 1)
        throw std::invalid_argument("single-span spec must have exactly one variant");
}

int derive_span_count(int n, int mu, double r) {
    if (n < 1 || mu < 1) throw std::invalid_argument("need n >= 1 and mu >= 1");
    if (r <= 0.0 || r >= 1.0) throw std::invalid_argument("corruption ratio must be in (0,1)");
    int k = int(std::llround(double(n) * r / double(mu)));
    // k spans of length mu with unit gaps need k*mu + (k-1) <= n.
    int feasible = std::max(1, (n + 1) / (mu + 1));
    return std::clamp(k, 1, feasible);
}

namespace {

// Floyd's algorithm: k distinct values from [0, m), returned sorted.
std::vector<uint64_t> sample_combination(Rng& rng, uint64_t m, uint64_t k) {
    std::vector<uint64_t> out;
    out.reserve(size_t(k));
    for (uint64_t j = m - k; j < m; ++j) {
        uint64_t t = rng.below(j + 1);
        if (std::find(out.begin(), out.end(), t) != out.end())
            out.push_back(j);
        else
            out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

SpanSample sample_spans(int n, const DenoiserSpec& spec, Rng& rng, double sigma_factor) {
    validate(spec);
    if (n < 2) throw std::invalid_argument("span sampling needs at least 2 tokens");

    SpanSample out;
    out.variant = size_t(rng.below(spec.variants.size()));
    const DenoiseVariant& v = spec.variants[out.variant];

    if (!spec.multi_span) {
        // One masked suffix of round(r*n) tokens.
        int len = std::clamp(int(std::llround(v.r * double(n))), 1, n - 1);
        out.spans.push_back(TokenSpan{n - len, len});
        return out;
    }

    const int mu = *v.mu;
    const int k = derive_span_count(n, mu, v.r);
    // Lengths come from the normal, then get nudged so the realized masked
    // total is exactly round(n*r) within feasibility bounds.
    const int64_t target =
        std::clamp<int64_t>(std::llround(v.r * double(n)), k, int64_t(n) - (k - 1));
    std::vector<int64_t> lens(static_cast<size_t>(k), 0);
    int64_t total = 0;
    for (int i = 0; i < k; ++i) {
        double draw = sigma_factor == 0.0 ? double(mu)
                                          : rng.normal(double(mu), sigma_factor * double(mu));
        lens[size_t(i)] = std::clamp<int64_t>(std::llround(draw), 1, n);
        total += lens[size_t(i)];
    }
    while (total > target) {
        size_t i = size_t(rng.below(uint64_t(k)));
        if (lens[i] > 1) {
            --lens[i];
            --total;
        }
    }
    while (total < target) {
        ++lens[size_t(rng.below(uint64_t(k)))];
        ++total;
    }

    // Distribute the leftover slack uniformly over the k+1 gaps (interior gaps
    // get +1 later): a random weak composition via stars and bars.
    const int64_t slack = int64_t(n) - total - (k - 1);
    std::vector<uint64_t> bars = sample_combination(rng, uint64_t(slack + k), uint64_t(k));
    int64_t pos = 0;
    for (int i = 0; i < k; ++i) {
        int64_t gap = i == 0 ? int64_t(bars[0])
                             : int64_t(bars[size_t(i)] - bars[size_t(i) - 1] - 1);
        pos += gap + (i > 0 ? 1 : 0);
        out.spans.push_back(TokenSpan{int(pos), int(lens[size_t(i)])});
        pos += lens[size_t(i)];
    }
    return out;
}

namespace {

void check_spans(const std::vector<TokenSpan>& spans, size_t n) {
    if (spans.size() > size_t(Specials::mask_count))
        throw std::invalid_argument("too many spans for the mask sentinel range");
    int64_t prev_end = -1;
    for (const TokenSpan& s : spans) {
        if (s.length < 1 || s.start < 0 || int64_t(s.start) + s.length > int64_t(n))
            throw std::invalid_argument("span out of bounds");
        if (int64_t(s.start) <= prev_end)
            throw std::invalid_argument("spans must be sorted with gaps of at least one token");
        prev_end = int64_t(s.start) + s.length;
    }
}

}  // namespace

CorruptedInstance corrupt(const TokenSeq& tokens, const std::vector<TokenSpan>& spans,
                          std::string_view paradigm) {
    check_spans(spans, tokens.ids.size());
    CorruptedInstance inst;
    inst.paradigm = std::string(paradigm);
    inst.spans = spans;

    inst.encoder_ids.ids.reserve(tokens.ids.size() + 1);
    inst.encoder_ids.ids.push_back(Specials::paradigm_id(paradigm));
    size_t next = 0;
    for (size_t i = 0; i < tokens.ids.size();) {
        if (next < spans.size() && size_t(spans[next].start) == i) {
            inst.encoder_ids.ids.push_back(Specials::mask_id(int(next)));
            i += size_t(spans[next].length);
            ++next;
        } else {
            inst.encoder_ids.ids.push_back(tokens.ids[i]);
            ++i;
        }
    }

    for (size_t s = 0; s < spans.size(); ++s) {
        inst.decoder_ids.ids.push_back(Specials::mask_id(int(s)));
        for (int j = 0; j < spans[s].length; ++j)
            inst.decoder_ids.ids.push_back(tokens.ids[size_t(spans[s].start + j)]);
    }
    inst.decoder_ids.ids.push_back(Specials::eos);
    return inst;
}

TokenSeq reconstruct(const CorruptedInstance& instance) {
    const auto& dec = instance.decoder_ids.ids;
    if (dec.empty() || dec.back() != Specials::eos)
        throw std::runtime_error("decoder sequence must end with the end-of-sequence token");

    // Decoder = groups of [sentinel, content...]; collect them in order.
    std::vector<std::pair<int64_t, std::vector<int64_t>>> groups;
    for (size_t i = 0; i + 1 < dec.size();) {
        if (!Specials::is_mask(dec[i]))
            throw std::runtime_error("decoder group must start with a mask sentinel");
        groups.emplace_back(dec[i], std::vector<int64_t>{});
        ++i;
        while (i + 1 < dec.size() && !Specials::is_mask(dec[i]))
            groups.back().second.push_back(dec[i++]);
        if (groups.back().second.empty())
            throw std::runtime_error("masked span content is empty");
    }

    const auto& enc = instance.encoder_ids.ids;
    if (enc.empty() || enc[0] != Specials::paradigm_id(instance.paradigm))
        throw std::runtime_error("encoder does not start with the instance paradigm token");

    TokenSeq out;
    size_t g = 0;
    for (size_t i = 1; i < enc.size(); ++i) {
        if (Specials::is_mask(enc[i])) {
            if (g == groups.size() || groups[g].first != enc[i])
                throw std::runtime_error("mask sentinel mismatch between encoder and decoder");
            out.ids.insert(out.ids.end(), groups[g].second.begin(), groups[g].second.end());
            ++g;
        } else {
            out.ids.push_back(enc[i]);
        }
    }
    if (g != groups.size())
        throw std::runtime_error("decoder has sentinels the encoder never references");
    return out;
}

json instance_to_json(const CorruptedInstance& instance) {
    json j = json::object();
    j["paradigm"] = instance.paradigm;
    j["encoder_ids"] = instance.encoder_ids.ids;
    j["decoder_ids"] = instance.decoder_ids.ids;
    return j;
}

CorruptedInstance instance_from_json(const json& j) {
    if (!j.is_object() || !j.contains("paradigm") || !j.contains("encoder_ids") ||
        !j.contains("decoder_ids"))
        throw std::runtime_error("instance record needs paradigm, encoder_ids, decoder_ids");
    CorruptedInstance inst;
    if (!j["paradigm"].is_string()) throw std::runtime_error("paradigm must be a string");
    inst.paradigm = j["paradigm"].get<std::string>();
    Specials::paradigm_id(inst.paradigm);  // validates the sentinel
    for (const char* key : {"encoder_ids", "decoder_ids"}) {
        if (!j[key].is_array()) throw std::runtime_error(std::string(key) + " must be an array");
        auto& dst = key == std::string_view("encoder_ids") ? inst.encoder_ids : inst.decoder_ids;
        for (const json& v : j[key]) {
            if (!v.is_number_integer()) throw std::runtime_error("token ids must be integers");
            dst.ids.push_back(v.get<int64_t>());
        }
    }
    return inst;
}

DenoiseWeights parse_weights(std::string_view spec) {
    std::array<double, 3> vals{};
    size_t pos = 0;
    for (size_t i = 0; i < 3; ++i) {
        size_t comma = spec.find(',', pos);
        bool last = i == 2;
        if (last != (comma == std::string_view::npos))
            throw std::invalid_argument("weights must have exactly three components");
        std::string item(trim_view(spec.substr(pos, last ? std::string_view::npos : comma - pos)));
        size_t used = 0;
        vals[i] = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad weight value: " + item);
        pos = comma + 1;
    }
    return {vals[0], vals[1], vals[2]};
}

namespace {

void validate_weights(const DenoiseWeights& w) {
    if (w.r < 0 || w.s < 0 || w.x < 0) throw std::invalid_argument("negative denoise weight");
    if (std::abs(w.r + w.s + w.x - 1.0) > 1e-9)
        throw std::invalid_argument("denoise weights must sum to 1");
}

std::vector<DenoiserSpec> enabled_specs(const StageConfig& stage, const DenoiseWeights& w) {
    if (stage.stage == Stage::II) {
        // Stage II is always suffix denoising at half corruption.
        DenoiserSpec s = default_denoiser_spec(DenoiseKind::S);
        s.variants[0].r = 0.50;
        return {s};
    }
    std::vector<DenoiserSpec> specs;
    if (w.r > 0) specs.push_back(default_denoiser_spec(DenoiseKind::R));
    if (w.s > 0) specs.push_back(default_denoiser_spec(DenoiseKind::S));
    if (w.x > 0) specs.push_back(default_denoiser_spec(DenoiseKind::X));
    if (specs.empty()) throw std::invalid_argument("all denoise weights are zero");
    return specs;
}

}  // namespace

int chunk_capacity(const StageConfig& stage, const DenoiseWeights& weights) {
    validate(stage);
    validate_weights(weights);
    if (stage.stage == Stage::III)
        throw std::invalid_argument("stage III trains on instruction data, not denoising chunks");

    int k_upper = 1;
    double r_max = 0.0;
    for (const DenoiserSpec& spec : enabled_specs(stage, weights)) {
        for (const DenoiseVariant& v : spec.variants) {
            r_max = std::max(r_max, v.r);
            if (spec.multi_span)
                k_upper = std::max(k_upper, derive_span_count(stage.encoder_len, *v.mu, v.r));
        }
    }

    int chunk = stage.encoder_len - 1 - k_upper;
    auto decoder_worst = [&](int c) {
        return std::max<int64_t>(std::llround(r_max * double(c)), k_upper) + k_upper + 1;
    };
    while (chunk >= 2 && decoder_worst(chunk) > stage.decoder_len) --chunk;
    if (chunk < 2) throw std::invalid_argument("stage context lengths leave no room for chunks");
    return chunk;
}

DenoiseResult build_instances(const Document& doc, const StageConfig& stage,
                              const DenoiseWeights& weights, const TokenizerHandle& tok,
                              Rng& rng, double sigma_factor) {
    const int chunk = chunk_capacity(stage, weights);  // validates stage + weights
    const std::vector<DenoiserSpec> specs = enabled_specs(stage, weights);
    std::vector<double> cumulative;
    if (stage.stage != Stage::II) {
        double acc = 0.0;
        for (const DenoiserSpec& spec : specs) {
            acc += spec.kind == DenoiseKind::R   ? weights.r
                   : spec.kind == DenoiseKind::S ? weights.s
                                                 : weights.x;
            cumulative.push_back(acc);
        }
        cumulative.back() = 1.0;  // the last enabled kind absorbs rounding
    }

    const TokenSeq all = tok->encode(doc.text);
    DenoiseResult res;
    for (size_t off = 0; off < all.ids.size(); off += size_t(chunk)) {
        const size_t len = std::min(size_t(chunk), all.ids.size() - off);
        if (len < 2) {
            ++res.chunks_skipped;
            continue;
        }
        const DenoiserSpec* spec = &specs[0];
        if (stage.stage != Stage::II && specs.size() > 1) {
            double u = rng.unit();
            for (size_t i = 0; i < specs.size(); ++i) {
                if (u < cumulative[i]) {
                    spec = &specs[i];
                    break;
                }
            }
        }
        TokenSeq sub;
        sub.ids.assign(all.ids.begin() + int64_t(off), all.ids.begin() + int64_t(off + len));
        SpanSample sample = sample_spans(int(len), *spec, rng, sigma_factor);
        CorruptedInstance inst = corrupt(sub, sample.spans, denoise_sentinel(spec->kind));
        inst.variant = sample.variant;
        if (int64_t(inst.encoder_ids.ids.size()) > stage.encoder_len ||
            int64_t(inst.decoder_ids.ids.size()) > stage.decoder_len)
            throw std::logic_error("instance exceeded stage context caps");
        res.instances.push_back(std::move(inst));
    }
    return res;
}

std::vector<CorruptedInstance> build_corpus_instances(const std::vector<Document>& docs,
                                                      const StageConfig& stage,
                                                      const DenoiseWeights& weights,
                                                      const TokenizerHandle& tok, uint64_t seed,
                                                      uint64_t& chunks_skipped, int workers) {
    std::vector<DenoiseResult> results = parallel_transform(
        docs,
        [&](const Document& doc) {
            Rng rng(derive_seed(seed, doc.id));
            return build_instances(doc, stage, weights, tok, rng);
        },
        workers);

    std::vector<CorruptedInstance> out;
    for (DenoiseResult& r : results) {
        chunks_skipped += r.chunks_skipped;
        for (CorruptedInstance& inst : r.instances) out.push_back(std::move(inst));
    }
    return out;
}

}  // namespace ulpipe
