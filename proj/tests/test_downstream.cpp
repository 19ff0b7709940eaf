#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "ulpipe/downstream.hpp"

using namespace ulpipe;

namespace {

Conversation conv_of(std::vector<std::pair<std::string, std::string>> turns) {
    Conversation conv;
    conv.turns = std::move(turns);
    return conv;
}

size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    size_t count = 0;
    for (size_t pos = haystack.find(needle); pos != std::string::npos;
         pos = haystack.find(needle, pos + needle.size()))
        ++count;
    return count;
}

}  // namespace

TEST_CASE("unroll produces one pair per turn with the full history") {
    SUBCASE("single turn") {
        auto pairs = unroll_dialogue(conv_of({{"hi", "hello"}}));
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].input_text == "Human: hi Assistant:");
        CHECK(pairs[0].target_text == "hello");
    }
    SUBCASE("two turns embed the first exchange in order") {
        auto pairs = unroll_dialogue(conv_of({{"How are you?", "Fine."}, {"And you?", "Great."}}));
        REQUIRE(pairs.size() == 2);
        CHECK(pairs[0].input_text == "Human: How are you? Assistant:");
        CHECK(pairs[0].target_text == "Fine.");
        CHECK(pairs[1].input_text ==
              "Human: How are you? Assistant: Fine. Human: And you? Assistant:");
        CHECK(pairs[1].target_text == "Great.");
    }
    SUBCASE("marker counts grow with the turn index") {
        auto pairs = unroll_dialogue(conv_of({{"a", "b"}, {"c", "d"}, {"e", "f"}}));
        REQUIRE(pairs.size() == 3);
        for (size_t t = 0; t < pairs.size(); ++t) {
            CHECK(count_occurrences(pairs[t].input_text, "Human:") == t + 1);
            CHECK(count_occurrences(pairs[t].input_text, "Assistant:") == t + 1);
            CHECK(pairs[t].input_text.ends_with("Assistant:"));
        }
    }
    SUBCASE("invalid conversations are rejected") {
        CHECK_THROWS_AS(unroll_dialogue(Conversation{}), std::invalid_argument);
        CHECK_THROWS_AS(unroll_dialogue(conv_of({{"hi", ""}})), std::invalid_argument);
        CHECK_THROWS_AS(unroll_dialogue(conv_of({{"", "hello"}})), std::invalid_argument);
    }
}

TEST_CASE("conversation json round-trip") {
    Conversation conv = conv_of({{"你好", "你好！有什么可以帮你？"}, {"再见", "再见！"}});
    json j = conversation_to_json(conv);
    CHECK(conversation_from_json(j) == conv);
    CHECK(j["turns"].size() == 2);
    CHECK(j["turns"][0]["human"] == "你好");

    CHECK_THROWS_AS(conversation_from_json(json::array()), std::runtime_error);
    json bad;
    bad["turns"] = json::array({json{{"human", "hi"}}});  // assistant missing
    CHECK_THROWS_AS(conversation_from_json(bad), std::runtime_error);
    bad["turns"] = json::array();
    CHECK_THROWS_AS(conversation_from_json(bad), std::invalid_argument);
}

TEST_CASE("transcripts round-trip through the marker parser") {
    std::mt19937_64 gen(41);
    const std::vector<std::string> words = {"hello", "weather", "rain",  "好",   "明天",
                                            "code",  "x+1",     "maybe", "yes.", "росы"};
    auto utter = [&] {
        std::uniform_int_distribution<int> n_words(1, 4), pick(0, int(words.size()) - 1);
        std::string s;
        int n = n_words(gen);
        for (int i = 0; i < n; ++i) {
            if (i) s += ' ';
            s += words[size_t(pick(gen))];
        }
        return s;
    };

    for (int round = 0; round < 200; ++round) {
        std::uniform_int_distribution<int> n_turns(1, 6);
        Conversation conv;
        int turns = n_turns(gen);
        for (int t = 0; t < turns; ++t) conv.turns.emplace_back(utter(), utter());

        auto pairs = unroll_dialogue(conv);
        REQUIRE(pairs.size() == conv.turns.size());

        // each pair's input is the rendered prefix minus its own reply
        Conversation prefix;
        for (size_t t = 0; t < pairs.size(); ++t) {
            prefix.turns.push_back(conv.turns[t]);
            CHECK(render_dialogue(prefix) == pairs[t].input_text + " " + pairs[t].target_text);
        }

        std::string transcript = pairs.back().input_text + " " + pairs.back().target_text;
        CHECK(transcript == render_dialogue(conv));
        CHECK(parse_dialogue(transcript) == conv);
    }
}

TEST_CASE("malformed transcripts are rejected") {
    CHECK_THROWS_WITH_AS(parse_dialogue("Hi there"), doctest::Contains("must start with"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_dialogue("Human: hi"), doctest::Contains("Assistant"),
                         std::runtime_error);
    CHECK_THROWS_AS(parse_dialogue(""), std::runtime_error);
    // markers present but an utterance empty
    CHECK_THROWS_AS(parse_dialogue("Human:  Assistant: x"), std::invalid_argument);
}

TEST_CASE("dialogue filtering drops short and identity-bearing conversations") {
    Conversation clean = conv_of({{"What is the weather like today in the city?",
                                   "It is sunny with a light breeze all afternoon."}});
    CHECK(filter_dialogue(clean));

    CHECK_FALSE(filter_dialogue(conv_of({{"h", "i"}})));  // 2 chars < 20

    Conversation identity = conv_of(
        {{"Who are you exactly, please introduce yourself?",
          "Well, I am ChatGPT, a language model here to help."}});
    CHECK_FALSE(filter_dialogue(identity));
    Conversation identity_zh = conv_of(
        {{"请问你是谁？可以自我介绍一下吗？今天天气如何？", "你好，我是ChatGPT，很高兴认识你。"}});
    CHECK_FALSE(filter_dialogue(identity_zh));

    SUBCASE("length counts codepoints, not bytes") {
        // 7 characters but 21 UTF-8 bytes: must still fall below min_len=20
        CHECK_FALSE(filter_dialogue(conv_of({{"你好吗嘛", "很好呢"}})));
    }
    SUBCASE("boundary keeps exactly min_len") {
        Conversation exact = conv_of({{"0123456789", "abcdefghij"}});  // 20 codepoints
        CHECK(filter_dialogue(exact, 20));
        CHECK_FALSE(filter_dialogue(exact, 21));
    }
    SUBCASE("custom patterns and thresholds") {
        Conversation conv = conv_of({{"tell me about the ACME launch plans", "ACME ships tomorrow"}});
        CHECK(filter_dialogue(conv));
        CHECK_FALSE(filter_dialogue(conv, 20, {"ACME"}));
        CHECK(filter_dialogue(conv_of({{"h", "i"}}), 0));  // no length bar
        CHECK(filter_dialogue(identity, 20, {}));          // no identity bar
    }
}

TEST_CASE("code augmentation gives whitespace dedicated tokens and round-trips") {
    auto aug = augment_code_tokens(default_tokenizer());

    SUBCASE("indentation survives the round-trip") {
        std::string src = "def f():\n    pass";
        TokenSeq seq = aug->encode(src);
        CHECK(aug->decode(seq) == src);
        bool has_newline = false, has_indent = false;
        for (int64_t id : seq.ids) {
            has_newline |= id == Specials::newline;
            has_indent |= id == Specials::space_run_base + 2;  // width 4
        }
        CHECK(has_newline);
        CHECK(has_indent);
    }
    SUBCASE("two tabs become exactly two tab tokens") {
        TokenSeq seq = aug->encode("\t\t");
        CHECK(seq.ids == std::vector<int64_t>{Specials::tab, Specials::tab});
    }
    SUBCASE("a two-space gap becomes one width-2 token") {
        TokenSeq seq = aug->encode("a  b");
        REQUIRE(seq.size() == 3);
        CHECK(seq.ids[0] >= Specials::reserved);
        CHECK(seq.ids[1] == Specials::space_run_base);
        CHECK(seq.ids[2] >= Specials::reserved);
        CHECK(aug->decode(seq) == "a  b");
    }
    SUBCASE("long runs decompose greedily") {
        TokenSeq seq17 = aug->encode(std::string(17, ' '));
        REQUIRE(seq17.size() == 2);
        CHECK(seq17.ids[0] == Specials::space_run_base + 14);  // width 16
        CHECK(seq17.ids[1] >= Specials::reserved);             // lone space is ordinary
        CHECK(aug->decode(seq17) == std::string(17, ' '));

        TokenSeq seq18 = aug->encode(std::string(18, ' '));
        CHECK(seq18.ids == std::vector<int64_t>{Specials::space_run_base + 14,
                                                Specials::space_run_base});
    }
    SUBCASE("configurable maximum run width") {
        auto narrow = augment_code_tokens(default_tokenizer(), 4);
        TokenSeq seq = narrow->encode(std::string(6, ' '));
        CHECK(seq.ids == std::vector<int64_t>{Specials::space_run_base + 2,
                                              Specials::space_run_base});
        CHECK(narrow->decode(seq) == std::string(6, ' '));
    }
    SUBCASE("matches the built-in code tokenizer on ascii source") {
        auto built_in = code_tokenizer();
        for (std::string src : {"def f():\n\tif x:  return 1\n        pass", "a  b   c\n",
                                "x = [1, 2]\n\n\tprint(x)"}) {
            CHECK(aug->encode(src) == built_in->encode(src));
            CHECK(aug->decode(aug->encode(src)) == src);
        }
    }
    SUBCASE("random source-like strings round-trip") {
        std::mt19937_64 gen(17);
        const std::string alphabet = "abcxyz():=123 \t\n";
        std::uniform_int_distribution<int> len(0, 60), pick(0, int(alphabet.size()) - 1);
        for (int round = 0; round < 200; ++round) {
            std::string src;
            int n = len(gen);
            for (int i = 0; i < n; ++i) src += alphabet[size_t(pick(gen))];
            if (round % 3 == 0) src += "好的\n";  // non-ascii tail
            CHECK(aug->decode(aug->encode(src)) == src);
        }
    }
    SUBCASE("bad arguments") {
        CHECK_THROWS_AS(augment_code_tokens(nullptr), std::invalid_argument);
        CHECK_THROWS_AS(augment_code_tokens(default_tokenizer(), 1), std::invalid_argument);
        CHECK_THROWS_AS(augment_code_tokens(default_tokenizer(), 17), std::invalid_argument);
    }
}

TEST_CASE("instruction reversal swaps roles under the request template") {
    TrainPair en = reverse_instruction("Greet me", "Hello, nice to meet you!", Lang::en);
    CHECK(en.input_text ==
          "Please generate the instruction according to the text I provide: "
          "Hello, nice to meet you!.");
    CHECK(en.target_text == "Greet me");

    TrainPair zh = reverse_instruction("向我问好", "你好，很高兴认识你！", Lang::zh);
    CHECK(zh.input_text == "请你根据提供的文本生成对应的指令：你好，很高兴认识你！。");
    CHECK(zh.target_text == "向我问好");

    SUBCASE("target is byte-identical to the instruction") {
        std::string instr = "  keep \t this -- exactly; 包括中文。";
        CHECK(reverse_instruction(instr, "x", Lang::en).target_text == instr);
    }
    SUBCASE("reversing twice embeds the wrapper, not the original") {
        TrainPair twice = reverse_instruction(en.target_text, en.input_text, Lang::en);
        CHECK(count_occurrences(twice.input_text,
                                "Please generate the instruction according to the text I provide") ==
              2);
        CHECK(twice.input_text != en.input_text);
    }
    SUBCASE("empty fields and bad lang are rejected") {
        CHECK_THROWS_AS(reverse_instruction("", "x", Lang::en), std::invalid_argument);
        CHECK_THROWS_AS(reverse_instruction("x", "", Lang::zh), std::invalid_argument);
        CHECK_THROWS_AS(reverse_instruction("x", "y", Lang::code), std::invalid_argument);
    }
}

TEST_CASE("tool calls render with the arrow delimiter and escaped queries") {
    auto call = format_tool_call("Brand New Key",
                                 "People will take it any way they want to take it.");
    REQUIRE(call.has_value());
    CHECK(*call == "WikiSearch(\"Brand New Key\") → People will take it any way they want to take it.");

    CHECK(format_tool_call("anything", "") == std::nullopt);
    CHECK_THROWS_AS(format_tool_call("", "result"), std::invalid_argument);

    SUBCASE("embedded quotes stay parseable") {
        auto quoted = format_tool_call("say \"hi\" now", "ok\" fine");
        REQUIRE(quoted.has_value());
        CHECK(*quoted == "WikiSearch(\"say \\\"hi\\\" now\") → ok\" fine");
        ToolCall parsed = parse_tool_call(*quoted);
        CHECK(parsed.query == "say \"hi\" now");
        CHECK(parsed.recalled == "ok\" fine");
    }
    SUBCASE("random queries and results round-trip") {
        std::mt19937_64 gen(23);
        const std::string alphabet = "ab\"\\() →:x安";
        auto rand_str = [&](int min_len) {
            std::uniform_int_distribution<int> len(min_len, 12), pick(0, 9);
            std::string s;
            int n = len(gen);
            for (int i = 0; i < n; ++i) {
                // index codepoint-wise over the mixed alphabet
                static const std::vector<std::string> units = {"a", "b", "\"", "\\", "(",
                                                               ")", " ", "→", ":", "安"};
                s += units[size_t(pick(gen))];
            }
            return s;
        };
        for (int round = 0; round < 300; ++round) {
            std::string query = rand_str(1), recalled = rand_str(1);
            auto rendered = format_tool_call(query, recalled);
            REQUIRE(rendered.has_value());
            ToolCall parsed = parse_tool_call(*rendered);
            CHECK(parsed.query == query);
            CHECK(parsed.recalled == recalled);
        }
    }
    SUBCASE("malformed calls are rejected") {
        CHECK_THROWS_WITH_AS(parse_tool_call("Search(\"a\") → b"), doctest::Contains("WikiSearch"),
                             std::runtime_error);
        CHECK_THROWS_AS(parse_tool_call("WikiSearch(\"abc"), std::runtime_error);
        CHECK_THROWS_AS(parse_tool_call("WikiSearch(\"a\") -> b"), std::runtime_error);
        CHECK_THROWS_AS(parse_tool_call("WikiSearch(\"a\\"), std::runtime_error);
        CHECK_THROWS_AS(parse_tool_call("WikiSearch(\"a\") → "), std::runtime_error);
    }
}

TEST_CASE("train pair json uses input and target keys") {
    TrainPair pair{"Human: hi Assistant:", "hello"};
    json j = train_pair_to_json(pair);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"input", "target"});
    CHECK(train_pair_from_json(j) == pair);

    j["target"] = "";
    CHECK_THROWS_AS(train_pair_from_json(j), std::runtime_error);
    CHECK_THROWS_AS(train_pair_from_json(json{{"input", "x"}}), std::runtime_error);
}
