// Regenerates the bundled synthetic corpus under data/sample/.
#include <cstdio>
#include <filesystem>

#include <CLI11.hpp>

#include "ulpipe/sample.hpp"

using namespace ulpipe;

int main(int argc, char** argv) {
    CLI::App app{"generate the bundled synthetic sample corpus"};
    std::string out = "data/sample";
    uint64_t seed = 1;
    size_t docs = 400;
    double dup_rate = 0.02;
    size_t flan_en = 600, flan_zh = 300;
    app.add_option("--out", out, "output directory");
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--docs", docs, "documents per component");
    app.add_option("--dup-rate", dup_rate, "fraction of exact-duplicate documents");
    app.add_option("--flan-en", flan_en, "English instruction records");
    app.add_option("--flan-zh", flan_zh, "Chinese instruction records");
    CLI11_PARSE(app, argc, argv);

    std::filesystem::create_directories(out);
    for (Lang lang : {Lang::zh, Lang::en, Lang::code}) {
        SampleOptions opts;
        opts.docs = docs;
        opts.dup_rate = dup_rate;
        opts.seed = seed;
        auto stream = make_sample_component(lang, opts);
        std::string path = out + "/" + std::string(lang_name(lang)) + ".jsonl";
        write_jsonl(stream, path);
        std::printf("%s: %zu docs, %ju bytes\n", path.c_str(), stream.size(),
                    uintmax_t(std::filesystem::file_size(path)));
    }
    for (auto [lang, count] : {std::pair{Lang::en, flan_en}, std::pair{Lang::zh, flan_zh}}) {
        auto recs = make_sample_flan(lang, count, seed);
        std::string path = out + "/flan_" + std::string(lang_name(lang)) + ".jsonl";
        write_flan_jsonl(recs, path);
        std::printf("%s: %zu records, %ju bytes\n", path.c_str(), recs.size(),
                    uintmax_t(std::filesystem::file_size(path)));
    }
    return 0;
}
