#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "ulpipe/denoiser.hpp"

using namespace ulpipe;

namespace {

TokenSeq seq(int n, int64_t base = 1000) {
    TokenSeq t;
    for (int i = 0; i < n; ++i) t.ids.push_back(base + i);
    return t;
}

// Masked-token count read off the wire format, not the spans field: the
// encoder holds 1 paradigm + K sentinels + unmasked tokens.
int64_t masked_tokens(const CorruptedInstance& inst, int64_t n) {
    int64_t sentinels = 0;
    for (int64_t id : inst.encoder_ids.ids)
        if (Specials::is_mask(id)) ++sentinels;
    return n - (int64_t(inst.encoder_ids.ids.size()) - 1 - sentinels);
}

Document mk_doc(const std::string& id, int words) {
    Document d;
    d.id = id;
    d.lang = Lang::en;
    d.source = "test";
    for (int i = 0; i < words; ++i) {
        if (i) d.text += ' ';
        d.text += "tok" + std::to_string(i * 7 % 997);
    }
    return d;
}

void check_span_shape(const std::vector<TokenSpan>& spans, int n) {
    REQUIRE(!spans.empty());
    int64_t prev_end = -1;
    for (const TokenSpan& s : spans) {
        CHECK(s.start >= 0);
        CHECK(s.length >= 1);
        CHECK(s.start + s.length <= n);
        CHECK(int64_t(s.start) > prev_end);  // gap >= 1 and sorted
        prev_end = s.start + s.length;
    }
}

}  // namespace

TEST_CASE("derive_span_count examples and feasibility") {
    CHECK(derive_span_count(100, 3, 0.15) == 5);
    CHECK(derive_span_count(512, 64, 0.15) == 1);
    CHECK(derive_span_count(10, 8, 0.5) == 1);
    CHECK(derive_span_count(570, 3, 0.5) == 95);

    CHECK_THROWS_AS(derive_span_count(0, 3, 0.15), std::invalid_argument);
    CHECK_THROWS_AS(derive_span_count(10, 0, 0.15), std::invalid_argument);
    CHECK_THROWS_AS(derive_span_count(10, 3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(derive_span_count(10, 3, 1.0), std::invalid_argument);

    std::mt19937 meta(5);
    for (int iter = 0; iter < 300; ++iter) {
        int n = 2 + int(meta() % 1000);
        int mu = 1 + int(meta() % 80);
        double r = 0.05 + 0.9 * double(meta() % 1000) / 1000.0;
        int k = derive_span_count(n, mu, r);
        CHECK(k >= 1);
        // k spans of one token with unit gaps always fit
        CHECK(k + (k - 1) <= std::max(n, 1));
    }
}

TEST_CASE("default denoiser specs") {
    DenoiserSpec r = default_denoiser_spec(DenoiseKind::R);
    REQUIRE(r.variants.size() == 2);
    CHECK(r.variants[0] == DenoiseVariant{3, 0.15});
    CHECK(r.variants[1] == DenoiseVariant{8, 0.15});
    CHECK(r.multi_span);

    DenoiserSpec s = default_denoiser_spec(DenoiseKind::S);
    REQUIRE(s.variants.size() == 1);
    CHECK(!s.variants[0].mu.has_value());
    CHECK(s.variants[0].r == doctest::Approx(0.25));
    CHECK(!s.multi_span);

    DenoiserSpec x = default_denoiser_spec(DenoiseKind::X);
    REQUIRE(x.variants.size() == 4);
    CHECK(x.variants[2] == DenoiseVariant{64, 0.50});
    CHECK(x.variants[3] == DenoiseVariant{64, 0.15});

    CHECK(denoise_sentinel(DenoiseKind::R) == "<R>");
    CHECK(denoise_sentinel(DenoiseKind::S) == "<S>");
    CHECK(denoise_sentinel(DenoiseKind::X) == "<X>");

    DenoiserSpec bad = r;
    bad.variants[0].r = 1.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = r;
    bad.variants[0].mu.reset();
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = s;
    bad.variants.push_back({std::nullopt, 0.3});
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = s;
    bad.variants[0].mu = 4;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("sample_spans: suffix denoising is deterministic") {
    Rng rng(1);
    auto got = sample_spans(100, default_denoiser_spec(DenoiseKind::S), rng);
    REQUIRE(got.spans.size() == 1);
    CHECK(got.spans[0] == TokenSpan{75, 25});

    // always exactly one span ending at n, any seed, any n
    std::mt19937 meta(17);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 2 + int(meta() % 500);
        Rng r2(meta());
        auto sp = sample_spans(n, default_denoiser_spec(DenoiseKind::S), r2);
        REQUIRE(sp.spans.size() == 1);
        CHECK(sp.spans[0].start + sp.spans[0].length == n);
        CHECK(sp.spans[0].length >= 1);
        CHECK(sp.spans[0].length < n);
    }
}

TEST_CASE("sample_spans: sigma 0 mode gives exact mean lengths") {
    Rng rng(7);
    DenoiserSpec spec{DenoiseKind::R, {{3, 0.15}}, true};
    auto got = sample_spans(100, spec, rng, 0.0);
    REQUIRE(got.spans.size() == 5);
    for (const TokenSpan& s : got.spans) CHECK(s.length == 3);
    check_span_shape(got.spans, 100);
}

TEST_CASE("sample_spans: structural invariants on random draws") {
    std::mt19937 meta(23);
    for (int iter = 0; iter < 2000; ++iter) {
        int n = 2 + int(meta() % 600);
        DenoiseKind kind = std::array{DenoiseKind::R, DenoiseKind::S, DenoiseKind::X}[meta() % 3];
        DenoiserSpec spec = default_denoiser_spec(kind);
        Rng rng(meta());
        auto got = sample_spans(n, spec, rng);
        REQUIRE(got.variant < spec.variants.size());
        check_span_shape(got.spans, n);

        if (spec.multi_span) {
            const DenoiseVariant& v = spec.variants[got.variant];
            int k = derive_span_count(n, *v.mu, v.r);
            CHECK(int(got.spans.size()) == k);
            int64_t total = 0;
            for (const TokenSpan& s : got.spans) total += s.length;
            int64_t want = std::clamp<int64_t>(std::llround(v.r * n), k, int64_t(n) - (k - 1));
            CHECK(total == want);
        }
    }
}

TEST_CASE("sample_spans: placements cover the whole sequence uniformly-ish") {
    DenoiserSpec spec{DenoiseKind::R, {{3, 0.15}}, true};
    std::map<int, int> first_starts;
    int end_hits = 0;
    for (int iter = 0; iter < 3000; ++iter) {
        Rng rng(uint64_t(iter) * 31 + 5);
        auto got = sample_spans(60, spec, rng);
        ++first_starts[got.spans.front().start];
        if (got.spans.back().start + got.spans.back().length == 60) ++end_hits;
    }
    CHECK(first_starts.size() > 10);     // many distinct first positions
    CHECK(first_starts.count(0) == 1);   // including the very start
    CHECK(end_hits > 0);                 // spans can touch the end
}

TEST_CASE("sample_spans: per-variant masked fraction tracks r") {
    std::mt19937 meta(404);
    for (DenoiseKind kind : {DenoiseKind::R, DenoiseKind::X}) {
        DenoiserSpec spec = default_denoiser_spec(kind);
        std::vector<double> sum(spec.variants.size(), 0.0);
        std::vector<int> cnt(spec.variants.size(), 0);
        for (int iter = 0; iter < 8000; ++iter) {
            int n = 100 + int(meta() % 375);
            Rng rng(meta());
            auto got = sample_spans(n, spec, rng);
            int64_t total = 0;
            for (const TokenSpan& s : got.spans) total += s.length;
            sum[got.variant] += double(total) / n;
            ++cnt[got.variant];
        }
        for (size_t v = 0; v < spec.variants.size(); ++v) {
            REQUIRE(cnt[v] > 1000);  // uniform variant choice reaches everyone
            CHECK(std::abs(sum[v] / double(cnt[v]) - spec.variants[v].r) < 0.02);
        }
    }
}

TEST_CASE("corrupt wire format examples") {
    SUBCASE("middle span") {
        auto inst = corrupt(seq(10), {{2, 2}}, "<R>");
        CHECK(inst.paradigm == "<R>");
        CHECK(inst.encoder_ids.ids ==
              std::vector<int64_t>{Specials::paradigm_r, 1000, 1001, Specials::mask_id(0), 1004,
                                   1005, 1006, 1007, 1008, 1009});
        CHECK(inst.decoder_ids.ids ==
              std::vector<int64_t>{Specials::mask_id(0), 1002, 1003, Specials::eos});
    }
    SUBCASE("no spans") {
        auto inst = corrupt(seq(4), {}, "<X>");
        CHECK(inst.encoder_ids.ids ==
              std::vector<int64_t>{Specials::paradigm_x, 1000, 1001, 1002, 1003});
        CHECK(inst.decoder_ids.ids == std::vector<int64_t>{Specials::eos});
    }
    SUBCASE("suffix span") {
        auto inst = corrupt(seq(8), {{6, 2}}, "<S>");
        CHECK(inst.encoder_ids.ids ==
              std::vector<int64_t>{Specials::paradigm_s, 1000, 1001, 1002, 1003, 1004, 1005,
                                   Specials::mask_id(0)});
        CHECK(inst.decoder_ids.ids ==
              std::vector<int64_t>{Specials::mask_id(0), 1006, 1007, Specials::eos});
    }
    SUBCASE("two spans use successive sentinels") {
        auto inst = corrupt(seq(10), {{1, 2}, {5, 3}}, "<X>");
        CHECK(inst.encoder_ids.ids ==
              std::vector<int64_t>{Specials::paradigm_x, 1000, Specials::mask_id(0), 1003, 1004,
                                   Specials::mask_id(1), 1008, 1009});
        CHECK(inst.decoder_ids.ids ==
              std::vector<int64_t>{Specials::mask_id(0), 1001, 1002, Specials::mask_id(1), 1005,
                                   1006, 1007, Specials::eos});
    }
}

TEST_CASE("corrupt rejects malformed spans") {
    CHECK_THROWS_AS(corrupt(seq(10), {{9, 2}}, "<R>"), std::invalid_argument);   // out of bounds
    CHECK_THROWS_AS(corrupt(seq(10), {{-1, 2}}, "<R>"), std::invalid_argument);
    CHECK_THROWS_AS(corrupt(seq(10), {{2, 0}}, "<R>"), std::invalid_argument);   // empty span
    CHECK_THROWS_AS(corrupt(seq(10), {{2, 3}, {4, 2}}, "<R>"), std::invalid_argument);  // overlap
    CHECK_THROWS_AS(corrupt(seq(10), {{2, 2}, {4, 1}}, "<R>"), std::invalid_argument);  // adjacent
    CHECK_THROWS_AS(corrupt(seq(10), {{5, 1}, {2, 1}}, "<R>"), std::invalid_argument);  // unsorted
    CHECK_THROWS(corrupt(seq(10), {{2, 2}}, "<Q>"));  // unknown paradigm

    std::vector<TokenSpan> too_many;
    for (int i = 0; i < 300; ++i) too_many.push_back({i * 2, 1});
    CHECK_THROWS_AS(corrupt(seq(600), too_many, "<R>"), std::invalid_argument);
}

TEST_CASE("reconstruct inverts corrupt") {
    auto original = seq(10);
    auto inst = corrupt(original, {{2, 2}}, "<R>");
    CHECK(reconstruct(inst).ids == original.ids);

    auto empty = corrupt(seq(4), {}, "<X>");
    CHECK(reconstruct(empty).ids == seq(4).ids);
}

TEST_CASE("reconstruct rejects inconsistent instances") {
    auto inst = corrupt(seq(10), {{2, 2}, {6, 2}}, "<R>");

    SUBCASE("decoder missing a sentinel group") {
        CorruptedInstance broken = inst;
        broken.decoder_ids.ids = {Specials::mask_id(0), 1002, 1003, Specials::eos};
        CHECK_THROWS_AS(reconstruct(broken), std::runtime_error);
    }
    SUBCASE("decoder with a surplus group") {
        CorruptedInstance broken = inst;
        broken.decoder_ids.ids.pop_back();  // strip eos
        broken.decoder_ids.ids.push_back(Specials::mask_id(7));
        broken.decoder_ids.ids.push_back(1234);
        broken.decoder_ids.ids.push_back(Specials::eos);
        CHECK_THROWS_AS(reconstruct(broken), std::runtime_error);
    }
    SUBCASE("sentinel order swapped") {
        CorruptedInstance broken = inst;
        std::swap(broken.decoder_ids.ids[0], broken.decoder_ids.ids[3]);
        CHECK_THROWS_AS(reconstruct(broken), std::runtime_error);
    }
    SUBCASE("missing eos") {
        CorruptedInstance broken = inst;
        broken.decoder_ids.ids.pop_back();
        CHECK_THROWS_AS(reconstruct(broken), std::runtime_error);
    }
    SUBCASE("paradigm mismatch") {
        CorruptedInstance broken = inst;
        broken.paradigm = "<S>";
        CHECK_THROWS_AS(reconstruct(broken), std::runtime_error);
    }
}

TEST_CASE("round-trip holds for 10k random instances") {
    std::mt19937 meta(31337);
    for (int iter = 0; iter < 10000; ++iter) {
        int n = 2 + int(meta() % 199);
        DenoiseKind kind = std::array{DenoiseKind::R, DenoiseKind::S, DenoiseKind::X}[meta() % 3];
        Rng rng(meta());
        auto sample = sample_spans(n, default_denoiser_spec(kind), rng);
        TokenSeq original = seq(n, 1000 + meta() % 50000);
        auto inst = corrupt(original, sample.spans, denoise_sentinel(kind));
        CHECK(reconstruct(inst).ids == original.ids);
    }
}

TEST_CASE("instance json round-trip and key order") {
    auto inst = corrupt(seq(6), {{1, 2}}, "<X>");
    json j = instance_to_json(inst);
    std::string dumped = j.dump();
    CHECK(dumped.find("\"paradigm\"") < dumped.find("\"encoder_ids\""));
    CHECK(dumped.find("\"encoder_ids\"") < dumped.find("\"decoder_ids\""));

    CorruptedInstance back = instance_from_json(json::parse(dumped));
    CHECK(back.paradigm == inst.paradigm);
    CHECK(back.encoder_ids == inst.encoder_ids);
    CHECK(back.decoder_ids == inst.decoder_ids);

    CHECK_THROWS(instance_from_json(json::parse(R"({"paradigm":"<R>"})")));
    CHECK_THROWS(instance_from_json(json::parse(R"({"paradigm":"<Q>","encoder_ids":[],"decoder_ids":[]})")));
    CHECK_THROWS(instance_from_json(json::parse(R"({"paradigm":"<R>","encoder_ids":"x","decoder_ids":[]})")));
}

TEST_CASE("weights parsing and validation") {
    DenoiseWeights w = parse_weights("0.4,0.4,0.2");
    CHECK(w.r == doctest::Approx(0.4));
    CHECK(w.x == doctest::Approx(0.2));
    CHECK_THROWS_AS(parse_weights("0.4,0.6"), std::invalid_argument);
    CHECK_THROWS_AS(parse_weights("a,b,c"), std::invalid_argument);

    Rng rng(1);
    Document doc = mk_doc("d", 50);
    CHECK_THROWS_AS(build_instances(doc, default_stage_config(Stage::I), {0.5, 0.5, 0.5},
                                    default_tokenizer(), rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_instances(doc, default_stage_config(Stage::I), {-0.2, 0.6, 0.6},
                                    default_tokenizer(), rng),
                    std::invalid_argument);
}

TEST_CASE("chunk capacity per stage") {
    CHECK(chunk_capacity(default_stage_config(Stage::I), {}) == 474);
    CHECK(chunk_capacity(default_stage_config(Stage::II), {}) == 1022);
    CHECK_THROWS_AS(chunk_capacity(default_stage_config(Stage::III), {}),
                    std::invalid_argument);

    // R-only: worst sentinel count is round(570 * 0.15 / 3) = 29
    CHECK(chunk_capacity(default_stage_config(Stage::I), {1, 0, 0}) == 570 - 1 - 29);

    // a tight decoder cap shrinks the chunk until the worst case fits
    StageConfig tight = default_stage_config(Stage::I);
    tight.decoder_len = 60;
    CHECK(chunk_capacity(tight, {1, 0, 0}) == 203);

    StageConfig hopeless = default_stage_config(Stage::I);
    hopeless.decoder_len = 50;  // can never hold 95 sentinels + eos
    CHECK_THROWS_AS(chunk_capacity(hopeless, {}), std::invalid_argument);
}

TEST_CASE("build_instances: stage I caps, chunk continuity, paradigm mix") {
    Document doc = mk_doc("big", 1200);  // ~2400 tokens
    TokenizerHandle tok = default_tokenizer();
    TokenSeq all = tok->encode(doc.text);
    REQUIRE(all.ids.size() > 1000);

    Rng rng(derive_seed(99, doc.id));
    auto res = build_instances(doc, default_stage_config(Stage::I), {}, tok, rng);
    REQUIRE(!res.instances.empty());

    std::map<std::string, int> paradigms;
    std::vector<int64_t> concat;
    for (const CorruptedInstance& inst : res.instances) {
        CHECK(inst.encoder_ids.ids.size() <= 570);
        CHECK(inst.decoder_ids.ids.size() <= 380);
        ++paradigms[inst.paradigm];
        TokenSeq chunk = reconstruct(inst);
        concat.insert(concat.end(), chunk.ids.begin(), chunk.ids.end());
    }
    // consecutive chunks reassemble the document's token stream
    size_t covered = all.ids.size() - (res.chunks_skipped ? 1 : 0);
    REQUIRE(concat.size() == covered);
    CHECK(std::equal(concat.begin(), concat.end(), all.ids.begin()));
    CHECK(res.chunks_skipped <= 1);

    // with ~5 chunks this doc alone cannot see every kind; over many docs the
    // uniform default mixes all three
    std::map<std::string, int> all_paradigms;
    for (int d = 0; d < 40; ++d) {
        Document more = mk_doc("doc" + std::to_string(d), 300);
        Rng r2(derive_seed(99, more.id));
        for (const auto& inst : build_instances(more, default_stage_config(Stage::I), {}, tok, r2)
                                    .instances)
            ++all_paradigms[inst.paradigm];
    }
    CHECK(all_paradigms["<R>"] > 0);
    CHECK(all_paradigms["<S>"] > 0);
    CHECK(all_paradigms["<X>"] > 0);
}

TEST_CASE("build_instances: stage II always half-masked suffix") {
    Document doc = mk_doc("s2", 900);
    TokenizerHandle tok = default_tokenizer();
    Rng rng(derive_seed(5, doc.id));
    auto res = build_instances(doc, default_stage_config(Stage::II), {}, tok, rng);
    REQUIRE(!res.instances.empty());
    for (const CorruptedInstance& inst : res.instances) {
        CHECK(inst.paradigm == "<S>");
        CHECK(inst.encoder_ids.ids.size() <= 1024);
        CHECK(inst.decoder_ids.ids.size() <= 1024);
        REQUIRE(inst.spans.size() == 1);
        int64_t n = int64_t(reconstruct(inst).ids.size());
        int64_t masked = masked_tokens(inst, n);
        CHECK(std::abs(2 * masked - n) <= 1);  // r = 0.50 within one token
        CHECK(inst.spans[0].start + inst.spans[0].length == n);  // suffix
    }
}

TEST_CASE("build_instances: R-only weights and stage III refusal") {
    Document doc = mk_doc("w", 400);
    TokenizerHandle tok = default_tokenizer();
    Rng rng(derive_seed(7, doc.id));
    auto res = build_instances(doc, default_stage_config(Stage::I), {1, 0, 0}, tok, rng);
    REQUIRE(!res.instances.empty());
    for (const auto& inst : res.instances) CHECK(inst.paradigm == "<R>");

    Rng rng2(1);
    CHECK_THROWS_AS(build_instances(doc, default_stage_config(Stage::III), {}, tok, rng2),
                    std::invalid_argument);
}

TEST_CASE("build_instances: degenerate documents") {
    TokenizerHandle tok = default_tokenizer();
    Rng rng(3);
    Document one = mk_doc("one", 0);
    one.text = "x";
    auto res = build_instances(one, default_stage_config(Stage::I), {}, tok, rng);
    CHECK(res.instances.empty());
    CHECK(res.chunks_skipped == 1);

    Document none = mk_doc("none", 0);
    auto res2 = build_instances(none, default_stage_config(Stage::I), {}, tok, rng);
    CHECK(res2.instances.empty());
    CHECK(res2.chunks_skipped == 0);
}

TEST_CASE("corpus instances are deterministic and worker-invariant") {
    std::vector<Document> docs;
    for (int i = 0; i < 30; ++i) docs.push_back(mk_doc("doc" + std::to_string(i), 150 + i));
    TokenizerHandle tok = default_tokenizer();

    uint64_t skip1 = 0, skip2 = 0, skip3 = 0;
    auto a = build_corpus_instances(docs, default_stage_config(Stage::I), {}, tok, 42, skip1, 1);
    auto b = build_corpus_instances(docs, default_stage_config(Stage::I), {}, tok, 42, skip2, 4);
    CHECK(a == b);
    CHECK(skip1 == skip2);

    auto c = build_corpus_instances(docs, default_stage_config(Stage::I), {}, tok, 43, skip3, 1);
    CHECK(a != c);  // seed matters

    // shuffling document order permutes per-document outputs but not content:
    // each document's instances depend only on (seed, id)
    std::vector<Document> reversed(docs.rbegin(), docs.rend());
    uint64_t skip4 = 0;
    auto d = build_corpus_instances(reversed, default_stage_config(Stage::I), {}, tok, 42, skip4,
                                    1);
    CHECK(d.size() == a.size());
    CHECK(skip4 == skip1);
}
