// Throughput comparison of the serial reference kernels against their OpenMP
// twins, on the bundled sample corpus (or any document files). Verifies the
// outputs agree byte-for-byte before reporting numbers.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ulpipe/dedup.hpp"
#include "ulpipe/filters.hpp"
#include "ulpipe/mixer.hpp"
#include "ulpipe/par.hpp"
#include "ulpipe/sample.hpp"

using namespace ulpipe;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double total_mb(const std::vector<Document>& docs) {
    size_t bytes = 0;
    for (const Document& doc : docs) bytes += doc.text.size();
    return double(bytes) / (1024.0 * 1024.0);
}

struct Timing {
    double serial_s = 0;
    double parallel_s = 0;
};

void report(const char* name, double mb, const Timing& t, int workers) {
    std::printf("%-22s %8.2f MB   serial %7.3f s (%7.2f MB/s)   %d workers %7.3f s (%7.2f MB/s)   speedup %.2fx\n",
                name, mb, t.serial_s, mb / t.serial_s, workers, t.parallel_s, mb / t.parallel_s,
                t.serial_s / t.parallel_s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs parallel kernel throughput"};
    std::vector<std::string> inputs;
    int workers = 8;
    int repeat = 4;  // replicate the corpus to get measurable run times
    app.add_option("--in", inputs, "document .jsonl files (default: bundled sample corpus)");
    app.add_option("--workers", workers, "parallel worker count");
    app.add_option("--repeat", repeat, "corpus replication factor");
    CLI11_PARSE(app, argc, argv);

    std::vector<Document> docs;
    if (inputs.empty()) {
        SampleOptions opts;
        opts.docs = 400;
        for (Lang lang : {Lang::zh, Lang::en, Lang::code}) {
            auto part = make_sample_component(lang, opts);
            docs.insert(docs.end(), part.begin(), part.end());
        }
    } else {
        for (const std::string& path : inputs) {
            auto part = read_jsonl(path);
            docs.insert(docs.end(), part.begin(), part.end());
        }
    }
    {
        std::vector<Document> replicated;
        replicated.reserve(docs.size() * size_t(repeat));
        for (int r = 0; r < repeat; ++r)
            for (const Document& doc : docs) {
                Document copy = doc;
                copy.id += "#" + std::to_string(r);
                replicated.push_back(std::move(copy));
            }
        docs = std::move(replicated);
    }
    double mb = total_mb(docs);
    std::printf("corpus: %zu docs, %.2f MB, %d workers\n\n", docs.size(), mb, workers);

    // token counting: the pure per-document map everything else builds on
    {
        auto tok = default_tokenizer();
        auto count = [&](const Document& doc) { return token_count(doc, *tok); };
        Timing t;
        auto t0 = Clock::now();
        auto serial = serial_transform(docs, count);
        t.serial_s = seconds_since(t0);
        t0 = Clock::now();
        auto parallel = parallel_transform(docs, count, workers);
        t.parallel_s = seconds_since(t0);
        if (serial != parallel) {
            std::fprintf(stderr, "token counts disagree between serial and parallel\n");
            return 1;
        }
        report("token_count", mb, t, workers);
    }

    // filtering: privacy scrub + language id + cleaning
    {
        FilterOptions serial_opts;
        serial_opts.workers = 1;
        FilterOptions parallel_opts;
        parallel_opts.workers = workers;
        Timing t;
        FilterReport r1, r2;
        auto t0 = Clock::now();
        auto serial = filter_documents(docs, serial_opts, r1);
        t.serial_s = seconds_since(t0);
        t0 = Clock::now();
        auto parallel = filter_documents(docs, parallel_opts, r2);
        t.parallel_s = seconds_since(t0);
        if (serial != parallel) {
            std::fprintf(stderr, "filter outputs disagree between serial and parallel\n");
            return 1;
        }
        report("filter_documents", mb, t, workers);
    }

    // whole-document dedup (two-phase, deterministic)
    {
        Timing t;
        uint64_t removed1 = 0, removed2 = 0;
        HashStore store1, store2;
        auto t0 = Clock::now();
        auto serial = dedup_documents(docs, store1, removed1, 1);
        t.serial_s = seconds_since(t0);
        t0 = Clock::now();
        auto parallel = dedup_documents(docs, store2, removed2, workers);
        t.parallel_s = seconds_since(t0);
        if (serial != parallel || removed1 != removed2) {
            std::fprintf(stderr, "dedup outputs disagree between serial and parallel\n");
            return 1;
        }
        report("dedup_documents", mb, t, workers);
    }

    // paragraph-window dedup over the prose components
    {
        std::vector<Document> prose;
        for (const Document& doc : docs)
            if (doc.lang != Lang::code) prose.push_back(doc);
        double prose_mb = total_mb(prose);
        Timing t;
        uint64_t removed1 = 0, removed2 = 0;
        HashStore store1, store2;
        auto t0 = Clock::now();
        auto serial = dedup_paragraphs(prose, kDefaultWindows, store1, removed1, 1);
        t.serial_s = seconds_since(t0);
        t0 = Clock::now();
        auto parallel = dedup_paragraphs(prose, kDefaultWindows, store2, removed2, workers);
        t.parallel_s = seconds_since(t0);
        if (serial != parallel || removed1 != removed2) {
            std::fprintf(stderr, "paragraph dedup outputs disagree between serial and parallel\n");
            return 1;
        }
        report("dedup_paragraphs", prose_mb, t, workers);
    }

    return 0;
}
